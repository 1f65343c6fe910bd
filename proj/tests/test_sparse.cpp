#include "doctest.h"

#include <cmath>
#include <random>

#include "brute.hpp"
#include "contracts/constructions.hpp"
#include "contracts/solver.hpp"
#include "contracts/sparse.hpp"

using namespace contracts;

namespace {

Real pairwise_demand_sigma(const std::vector<Real>& a) {
  Real best;
  bool any = false;
  for (std::size_t l = 1; l < a.size(); ++l) {
    for (std::size_t h = l + 1; h < a.size(); ++h) {
      Real g = (Real(1) / a[l] - Real(1) / a[h]) / Real(2);
      if (!any || g < best) best = g, any = true;
    }
  }
  return best;
}

std::vector<Mask> brute_members(const std::vector<mpq_class>& obj, const mpq_class& slack) {
  mpq_class top = *std::max_element(obj.begin(), obj.end());
  std::vector<Mask> out;
  for (Mask t = 0; t < obj.size(); ++t) {
    if (obj[t] >= top - slack) out.push_back(t);
  }
  return out;
}

}  // namespace

TEST_CASE("sparseness bounds") {
  EqualRevenueSubmodF er = equal_revenue_submod_f(3);
  SigmaBound s = sigma_bound_demand(er);
  CHECK(std::abs(s.raw.to_double() - 0.0082788262539798) < 1e-15);
  CHECK(s.low == 6);
  CHECK(s.high == 7);
  CHECK(s.value == s.raw / Real(kSigmaSafetyDivisor));
  for (int n = 2; n <= 6; ++n) {
    EqualRevenueSubmodF e = equal_revenue_submod_f(n);
    CHECK(abs(sigma_bound_demand(e).raw - pairwise_demand_sigma(e.alpha)) < pow2(-45));
  }
  SigmaBound sc = sigma_bound_supply(equal_revenue_supmod_c(3));
  CHECK(abs(sc.raw - Real(1) / Real(84)) < pow2(-50));
  CHECK(sparse_size_bound(4) == 60);
  CHECK(sparse_size_bound(6) == 112);
}

TEST_CASE("approximate demand matches the exhaustive set") {
  std::mt19937_64 rng(41);
  EqualRevenueSubmodF er = equal_revenue_submod_f(5);
  Real sigma = sigma_bound_demand(er).value;
  for (int trial = 0; trial < 50; ++trial) {
    PriceVector p = random_prices(5, rng);
    for (const Real& x : p.p) {
      CHECK(x >= pow2(-5));
      CHECK(x <= pow2(5));
    }
    ApproxArgmaxSet d = approx_demand(er.instance.f, p, sigma);
    auto fv = brute::table(er.instance.f), pv = brute::prices(p);
    std::vector<mpq_class> obj(fv.size());
    for (std::size_t t = 0; t < fv.size(); ++t) obj[t] = fv[t] - pv[t];
    auto ref = brute_members(obj, sigma.to_rational());
    REQUIRE(d.size() == ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k) CHECK(d.members[k].index() == ref[k]);
    CHECK(d.members[d.argmax] == demand(er.instance.f, p));
    CHECK(d.size() <= sparse_size_bound(5));
  }
}

TEST_CASE("ambiguity intervals and the census") {
  std::mt19937_64 rng(43);
  for (int n : {3, 4, 6}) {
    EqualRevenueSubmodF er = equal_revenue_submod_f(n);
    Real sigma = sigma_bound_demand(er).value;
    for (int trial = 0; trial < 200; ++trial) {
      PriceVector p = random_prices(n, rng);
      ApproxArgmaxSet d = approx_demand(er.instance.f, p, sigma);
      auto iv = ambiguity_intervals(d);
      REQUIRE(iv.size() == static_cast<std::size_t>(n));
      CHECK(interval_violations(d, iv).empty());
      Census c = minimal_ambiguous_census(d, iv);
      CHECK(c.total == d.size());
      for (int i = 1; i <= n + 1; ++i) CHECK(c.count[i] <= Census::bound(n, i));
      for (const ActionSet& s : d.members) {
        int m = minimal_ambiguous_action(s.index(), iv);
        CHECK(m >= 1);
        CHECK(m <= n + 1);
      }
    }
  }
}

TEST_CASE("approximate supply and best response") {
  EqualRevenueSupmodC d = equal_revenue_supmod_c(4);
  Real sigma = sigma_bound_supply(d).value;
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    PriceVector p = random_prices(4, rng);
    ApproxArgmaxSet s = approx_supply(d.instance.c, p, sigma);
    CHECK(s.members[s.argmax] == supply(d.instance.c, p));
    CHECK(s.size() <= sparse_size_bound(4));
  }
  ApproxArgmaxSet br = approx_best_response(d.instance, Real(0.7), Real(0));
  CHECK(br.size() == 1);
  CHECK(br.members[0] == best_response(d.instance, Real(0.7)));
}

TEST_CASE("demand simulation by value queries") {
  ContractInstance base = build_equal_revenue_submod_f(3);
  Real sigma = sigma_bound_demand(equal_revenue_submod_f(3)).value;
  PerturbedFamily fam(base, PerturbDirection::RewardBonus, std::nullopt, sigma);
  std::vector<PriceVector> prices;
  for (const auto& row : enumerate_breakpoints(base).rows) {
    if (row.alpha.is_zero()) continue;
    prices.push_back(demand_prices_for_contract(base.c, row.alpha));
  }
  std::mt19937_64 rng(53);
  for (int i = 0; i < 50; ++i) prices.push_back(random_prices(3, rng));
  for (PerturbedInstance m : fam) {
    for (const PriceVector& p : prices) {
      QueryLedger led;
      SimulatedAnswer a = simulate_demand_by_values(base.f, m.instance.f, p, fam.epsilon(), &led);
      CHECK(a.answer.index() == brute::demand(m.instance.f, p));
      CHECK(a.value_queries == led.value_queries);
      CHECK(a.value_queries <= sparse_size_bound(3));
    }
  }
}

TEST_CASE("supply simulation by value queries") {
  ContractInstance base = build_equal_revenue_supmod_c(3);
  Real sigma = sigma_bound_supply(equal_revenue_supmod_c(3)).value;
  PerturbedFamily fam(base, PerturbDirection::CostDiscount, std::nullopt, sigma);
  std::mt19937_64 rng(59);
  for (PerturbedInstance m : fam) {
    for (int i = 0; i < 50; ++i) {
      PriceVector p = random_prices(3, rng);
      SimulatedAnswer a = simulate_supply_by_values(base.c, m.instance.c, p, fam.epsilon());
      CHECK(a.answer.index() == brute::supply(m.instance.c, p));
    }
  }
}

TEST_CASE("value-query scan over every hidden index") {
  PerturbedFamily fam(build_equal_revenue_submod_f(4), PerturbDirection::RewardBonus);
  ValueQueryStats s = value_query_exhaustive(fam, QueryStrategy::Scan);
  CHECK(s.trials == 15);
  CHECK(s.identified == 15);
  CHECK(s.mean == doctest::Approx(8.0));
  CHECK(s.analytic_mean == doctest::Approx(8.0));
  CHECK(s.lower_bound == doctest::Approx(4.0));
  CHECK(s.ok);
  ValueQueryStats none = value_query_exhaustive(fam, QueryStrategy::NoQuery);
  CHECK(none.identified < none.trials);
  CHECK_FALSE(none.ok);
}

TEST_CASE("seeded value-query experiment is reproducible") {
  PerturbedFamily fam(build_equal_revenue_submod_f(5), PerturbDirection::RewardBonus);
  ValueQueryStats a = value_query_experiment(fam, QueryStrategy::Scan, 500, 7);
  ValueQueryStats b = value_query_experiment(fam, QueryStrategy::Scan, 500, 7);
  CHECK(a.hidden == b.hidden);
  CHECK(a.queries == b.queries);
  CHECK(a.within_tolerance);
  CHECK(a.mean >= a.lower_bound);
}
