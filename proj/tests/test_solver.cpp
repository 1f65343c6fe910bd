#include "doctest.h"

#include <cmath>
#include <random>

#include "brute.hpp"
#include "contracts/constructions.hpp"
#include "contracts/experiments.hpp"
#include "contracts/solver.hpp"

using namespace contracts;

namespace {

void check_against_brute(const ContractInstance& inst, const BreakpointTable& table) {
  auto ref = brute::breakpoints(inst);
  REQUIRE(table.size() == ref.size());
  for (std::size_t k = 0; k < ref.size(); ++k) {
    CHECK(table[k].set.index() == ref[k].set);
    CHECK(std::abs(table[k].alpha.to_double() - ref[k].alpha.get_d()) < 1e-12);
  }
}

}  // namespace

TEST_CASE("three-action equal-revenue breakpoints") {
  ContractInstance inst = build_equal_revenue_submod_f(3);
  BreakpointTable t = enumerate_breakpoints(inst);
  const double expected[] = {0.618, 0.747, 0.807, 0.843, 0.867, 0.884, 0.897};
  REQUIRE(t.size() == 8);
  CHECK(t[0].alpha.is_zero());
  for (int k = 1; k <= 7; ++k) {
    CHECK(std::floor(t[k].alpha.to_double() * 1000) / 1000 == expected[k - 1]);
    CHECK(t[k].set.index() == static_cast<Mask>(k));
    CHECK(std::abs(t[k].principal_utility.to_double() - 1.0) < 1e-9);
  }
  CHECK(std::abs(t[1].alpha.to_double() - 0.6180339887498949) < 1e-15);
  CHECK(t.segment(Real(0.8)).set.str() == "{2}");
  CHECK(t.segment(Real(0.5)).set.index() == 0);
}

TEST_CASE("envelope and scan agree with the exhaustive reference") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 5;
    ContractInstance inst = random_monotone_instance(n, rng);
    BreakpointTable env = enumerate_breakpoints(inst, EnumerationMethod::Envelope);
    BreakpointTable scan = enumerate_breakpoints(inst, EnumerationMethod::Scan);
    check_against_brute(inst, env);
    REQUIRE(env.size() == scan.size());
    for (std::size_t k = 0; k < env.size(); ++k) {
      CHECK(env[k].set == scan[k].set);
      CHECK(env[k].alpha == scan[k].alpha);
    }
  }
}

TEST_CASE("breakpoints of the supermodular-cost instance are exact") {
  ContractInstance inst = build_equal_revenue_supmod_c(4);
  check_against_brute(inst, enumerate_breakpoints(inst));
  check_against_brute(inst, enumerate_breakpoints(inst, EnumerationMethod::Scan));
}

TEST_CASE("optimal contract matches the exhaustive optimum") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    ContractInstance inst = random_monotone_instance(2 + trial % 4, rng);
    ContractSolution sol = optimal_contract(inst);
    CHECK(std::abs(sol.principal_utility.to_double() - brute::optimum(inst).get_d()) < 1e-12);
    CHECK(best_response(inst, sol.alpha_star) == sol.set_star);
    CHECK(principal_utility(inst, sol.alpha_star, sol.set_star) == sol.principal_utility);
  }
}

TEST_CASE("equal-revenue optimum has every breakpoint as a maximizer") {
  ContractSolution sol = optimal_contract(build_equal_revenue_submod_f(3));
  CHECK(sol.all_maximizers.size() == 8);  // f(empty) = 1 ties as well
  CHECK_FALSE(sol.unique());
}

TEST_CASE("agent and principal utilities") {
  ContractInstance inst = build_equal_revenue_supmod_c(2);
  ActionSet s = ActionSet::full(2);
  CHECK(agent_utility(inst, Real(0.5), s) == Real(0.5) * inst.f(s) - inst.c(s));
  CHECK(principal_utility(inst, Real(0.5), s) == Real(0.5) * inst.f(s));
}

TEST_CASE("fptas stays within its guarantee") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + trial % 5;
    ContractInstance inst = random_monotone_instance(n, rng);
    Real exact = optimal_contract(inst).principal_utility;
    for (double e : {0.2, 0.1, 0.01}) {
      FptasResult r = fptas(inst, Real(e));
      Real slack = maximizer_tolerance(inst.precision_bits) * exact;
      CHECK(r.principal_utility >= (Real(1) - Real(e)) * exact - slack);
      CHECK(r.principal_utility <= exact + slack);
      CHECK(r.queries.total() > 0);
      CHECK(r.alpha < Real(1));
    }
  }
}

TEST_CASE("fptas on the named instances") {
  for (const ContractInstance& inst : {build_equal_revenue_submod_f(5), build_equal_revenue_supmod_c(5)}) {
    Real exact = optimal_contract(inst).principal_utility;
    FptasResult r = fptas(inst, Real(0.1));
    CHECK(r.principal_utility >= Real(0.9) * exact - maximizer_tolerance(inst.precision_bits) * exact);
  }
}

TEST_CASE("contract bracket") {
  AlphaBracket b = alpha_bracket(3, Real(2), Real(2));
  CHECK(b.alpha_min == Real(0.5));
  CHECK(b.alpha_max == Real(1) - Real(2) / Real(96));
  CHECK_THROWS(alpha_bracket(3, Real(0), Real(1)));
}
