#include "doctest.h"

#include <random>

#include "brute.hpp"
#include "contracts/constructions.hpp"
#include "contracts/experiments.hpp"
#include "contracts/structure.hpp"

using namespace contracts;

TEST_CASE("equal-revenue functions have their declared class") {
  for (int n = 1; n <= 6; ++n) {
    CHECK(verify_structure(build_equal_revenue_submod_f(n).f, StructureClass::Submodular).ok());
    CHECK(verify_structure(build_equal_revenue_supmod_c(n).c, StructureClass::Supermodular).ok());
  }
}

TEST_CASE("additive functions pass both weak checks and fail strict ones") {
  SetFunction a = SetFunction::additive({Real(1), Real(2), Real(4)});
  CHECK(verify_structure(a, StructureClass::Submodular).ok());
  CHECK(verify_structure(a, StructureClass::Supermodular).ok());
  CHECK(verify_structure(a, StructureClass::Additive).ok());
  StructureOptions strict;
  strict.strict_class = true;
  CHECK_FALSE(verify_structure(a, StructureClass::Submodular, strict).ok());
}

TEST_CASE("corrupted tables are caught") {
  ContractInstance inst = build_equal_revenue_submod_f(4);
  // Raise f(N) far enough to make the last marginal increasing.
  SetFunction bad = inst.f.with_shift(15, Real(5));
  StructureReport rep = verify_structure(bad, StructureClass::Submodular);
  CHECK_FALSE(rep.ok());
  REQUIRE_FALSE(rep.violations.empty());
  CHECK(rep.violations.front().kind == ViolationKind::Submodularity);
  CHECK(rep.violations.front().amount > Real(0));

  SetFunction dip = inst.f.with_shift(3, Real(-3));
  StructureReport mono = verify_structure(dip, StructureClass::GeneralMonotone);
  CHECK_FALSE(mono.ok());
  CHECK(mono.violations.front().kind == ViolationKind::Monotonicity);

  SetFunction neg(1, {Real(0), Real(-1)}, StructureClass::GeneralMonotone);
  CHECK(verify_structure(neg, StructureClass::GeneralMonotone).violations.front().kind ==
        ViolationKind::Nonnegativity);
}

TEST_CASE("gaps match the exhaustive reference") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 4;
    SetFunction v = random_monotone_function(n, rng);
    auto tv = brute::table(v);
    // the library differences marginals in floating point
    CHECK(diminishing_gap(v).to_double() == doctest::Approx(brute::diminishing_gap(tv, n).get_d()).epsilon(1e-12));
    std::vector<mpq_class> neg;
    for (const auto& x : tv) neg.push_back(-x);
    CHECK(increasing_gap(v).to_double() == doctest::Approx(brute::diminishing_gap(neg, n).get_d()).epsilon(1e-12));
  }
  CHECK(diminishing_gap(build_equal_revenue_submod_f(4).f) > Real(0));
  CHECK(increasing_gap(build_equal_revenue_supmod_c(4).c) > Real(0));
}

TEST_CASE("report summary names the class") {
  StructureReport rep = verify_structure(build_equal_revenue_submod_f(3).f, StructureClass::Submodular);
  CHECK(rep.summary().find("submodular") != std::string::npos);
  CHECK(rep.triples_checked > 0);
}
