#include "doctest.h"

#include <random>

#include "brute.hpp"
#include "contracts/commlab.hpp"
#include "contracts/structure.hpp"

using namespace contracts;

TEST_CASE("disjointness") {
  CHECK(disjointness(std::vector<bool>{1, 0, 1}, std::vector<bool>{0, 1, 0}));
  CHECK_FALSE(disjointness(std::vector<bool>{1, 0, 1}, std::vector<bool>{0, 0, 1}));
  CHECK(disjointness(std::vector<bool>{}, std::vector<bool>{}));
  SpecialSetVector a = SpecialSetVector::from_word(4, 0b000101);
  CHECK(disjointness(a, a.complement()));
  CHECK_FALSE(disjointness(a, SpecialSetVector::from_word(4, 0b100100)));
}

TEST_CASE("half-size sets and special-set vectors") {
  CHECK(half_size_sets(4) == std::vector<Mask>{3, 5, 6, 9, 10, 12});
  CHECK(half_size_sets(6).size() == 20);
  SpecialSetVector v = SpecialSetVector::from_word(4, 0b010010);
  CHECK(v.str() == "010010");
  CHECK(v.contains(5));
  CHECK_FALSE(v.contains(3));
  CHECK_FALSE(v.contains(7));
  CHECK(v.position(10) == 4);
  CHECK(v.position(7) == -1);
  CHECK(SpecialSetVector::singleton(4, 9).str() == "000100");
  CHECK(SpecialSetVector::filled(4, true).str() == "111111");
  CHECK_THROWS(SpecialSetVector::from_bits(4, std::vector<bool>(5, false)));
  CHECK_THROWS(SpecialSetVector(3));
  CHECK(cc_variant_from_string(to_string(CCVariant::SubSup)) == CCVariant::SubSup);
  CHECK_THROWS(cc_variant_from_string("sup-sub"));
}

TEST_CASE("covering half-size index") {
  auto h = covering_half_index(4);
  CHECK(h[0] == 3);
  CHECK(h[1] == 3);
  CHECK(h[2] == 3);
  CHECK(h[4] == 5);
  CHECK(h[8] == 9);
  CHECK(h[6] == 6);
  CHECK(h[7] == 7);
}

TEST_CASE("shared base quantities") {
  for (CCVariant v : {CCVariant::SubSub, CCVariant::SubSup, CCVariant::SupSup}) {
    auto base = build_cc_base(v, 4);
    CHECK(base->delta > Real(0));
    CHECK(base->delta <= base->delta_bound);
    CHECK(base->delta <= base->delta_cap);
    CHECK(base->z.z <= base->z.minimum);
    CHECK(base->z.z * Real(2) > base->z.minimum);
    CHECK(base->z.z == pow2(base->z.z.exponent() - 1));
    CHECK(base->revenue_halfwidth > Real(0));
    CHECK_FALSE(base->z.binding.empty());
    for (const auto& [name, x] : delta_bound_terms(v, base->original)) CHECK(x > Real(0));
  }
  auto base = build_cc_base(CCVariant::SubSub, 4);
  CHECK(base->z.z == pow2(-33));
  CHECK(base->delta.to_double() == doctest::Approx(1.455449046e-05).epsilon(1e-8));
}

TEST_CASE("augmented instances keep their structure") {
  std::mt19937_64 rng(61);
  for (CCVariant v : {CCVariant::SubSub, CCVariant::SubSup, CCVariant::SupSup}) {
    auto base = build_cc_base(v, 4);
    for (int trial = 0; trial < 8; ++trial) {
      auto xf = SpecialSetVector::random(4, rng), xc = SpecialSetVector::random(4, rng);
      AugmentedCCInstance aug = build_augmented(base, xf, xc);
      CHECK(aug.reward_report.ok());
      CHECK(aug.cost_report.ok());
      CHECK(aug.instance.n == 5);
      CHECK(aug.extra_bit() == 16);
      for (Mask t = 0; t < 16; ++t) {
        CHECK(aug.instance.f(t) == base->perturbed.f(t));
        CHECK(aug.instance.c(t) == base->perturbed.c(t));
        CHECK(aug.instance.f(t | 16) - aug.instance.f(t) == aug.reward_marginal[t]);
        CHECK(aug.instance.c(t | 16) - aug.instance.c(t) == aug.cost_marginal[t]);
      }
    }
  }
}

TEST_CASE("reduction on disjoint pairs leaves the extra action out") {
  std::mt19937_64 rng(67);
  for (CCVariant v : {CCVariant::SubSub, CCVariant::SubSup, CCVariant::SupSup}) {
    auto base = build_cc_base(v, 4);
    for (int trial = 0; trial < 8; ++trial) {
      auto xf = SpecialSetVector::random(4, rng);
      AugmentedCCInstance aug = build_augmented(base, xf, xf.complement());
      ReductionOutcome out = run_reduction(aug);
      CHECK(out.disjoint);
      CHECK_FALSE(out.extra_in_optimum);
      CHECK(out.matches);
      CCInvariantReport inv = check_cc_invariants(aug, out, 16);
      CHECK(inv.projection_ok);
      CHECK(inv.sparse_ok);
      CHECK_FALSE(inv.margin_applicable);
    }
  }
}

TEST_CASE("reduction detects an intersection" * doctest::may_fail()) {
  auto xf = SpecialSetVector::singleton(4, 5);
  CHECK(check_reduction(CCVariant::SubSub, 4, xf, xf));
}

TEST_CASE("inapproximability tables") {
  std::mt19937_64 rng(71);
  for (CCVariant v : {CCVariant::SubSub, CCVariant::SupSup}) {
    for (int n : {4, 6}) {
      for (int trial = 0; trial < 6; ++trial) {
        auto xf = SpecialSetVector::random(n, rng), xc = SpecialSetVector::random(n, rng);
        ContractInstance inst = inapprox_table(v, n, xf, xc);
        auto f = brute::table(inst.f), c = brute::table(inst.c);
        std::vector<Mask> positive;
        for (Mask t = 0; t < f.size(); ++t) {
          if (f[t] - c[t] > 0) positive.push_back(t);
        }
        CHECK(positive == intersection_sets(xf, xc));
        CHECK(positive_surplus_sets(inst) == positive);
        StructureClass cls = v == CCVariant::SubSub ? StructureClass::Submodular : StructureClass::Supermodular;
        CHECK(verify_structure(inst.f, cls).ok());
        CHECK(verify_structure(inst.c, cls).ok());
      }
    }
  }
  CHECK_THROWS(inapprox_table(CCVariant::SubSup, 4, SpecialSetVector(4), SpecialSetVector(4)));
}
