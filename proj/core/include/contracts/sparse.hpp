#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "contracts/constructions.hpp"
#include "contracts/oracle.hpp"
#include "contracts/perturb.hpp"

namespace contracts {

enum class ApproxKind { Demand, Supply, BestResponse };

std::string to_string(ApproxKind k);

// Every set whose objective is within `slack` of the maximum.
struct ApproxArgmaxSet {
  ApproxKind kind = ApproxKind::Demand;
  int n = 0;
  Real slack;
  Real max_value;
  std::vector<ActionSet> members;  // increasing subset index
  // Index of the exact argmax (under the usual tie-break) inside members.
  std::size_t argmax = 0;

  std::size_t size() const { return members.size(); }
  bool contains(Mask t) const;
};

ApproxArgmaxSet approx_demand(const SetFunction& f, const PriceVector& p, const Real& sigma);
ApproxArgmaxSet approx_supply(const SetFunction& c, const PriceVector& p, const Real& sigma);
ApproxArgmaxSet approx_best_response(const ContractInstance& inst, const Real& alpha,
                                     const Real& sigma);

inline constexpr int kSigmaSafetyDivisor = 2;

struct SigmaBound {
  Real raw;    // half the smallest pairwise gap
  Real value;  // raw / kSigmaSafetyDivisor
  Mask low = 0;
  Mask high = 0;  // pair realizing the minimum
};

// min over 1 <= l < h of (1/alpha_l - 1/alpha_h) / 2, over every pair.
SigmaBound sigma_bound_demand(const std::vector<Real>& alpha);
SigmaBound sigma_bound_demand(const EqualRevenueSubmodF& base);
// min over 1 <= l < h of (alpha_h - alpha_l) / 2, over every pair.
SigmaBound sigma_bound_supply(const std::vector<Real>& alpha);
SigmaBound sigma_bound_supply(const EqualRevenueSupmodC& base);

struct AmbiguityInterval {
  int action = 0;
  Mask r = 0;
  Mask l = 0;
  bool contains(Mask t) const { return l <= t && t <= r; }
};

// Intervals for actions 1..n. Throws InvariantError if a member lies outside
// the forced region of some action (t > r_i with i in S_t, or t < l_i with
// i not in S_t).
std::vector<AmbiguityInterval> ambiguity_intervals(const ApproxArgmaxSet& d);
std::vector<AmbiguityInterval> ambiguity_intervals(const SetFunction& f, const PriceVector& p,
                                                   const Real& sigma);

// Members whose interval-membership pattern breaks the forced region; empty
// when the lemma holds.
std::vector<std::string> interval_violations(const ApproxArgmaxSet& d,
                                             const std::vector<AmbiguityInterval>& iv);

// Smallest action whose interval contains t, or n + 1.
int minimal_ambiguous_action(Mask t, const std::vector<AmbiguityInterval>& iv);

struct Census {
  int n = 0;
  std::vector<std::size_t> count;  // count[i] for i = 1..n+1; count[0] unused
  std::size_t total = 0;
  // 4 i for i <= n, n + 1 for i = n + 1.
  static std::size_t bound(int n, int i) {
    return i <= n ? static_cast<std::size_t>(4 * i) : static_cast<std::size_t>(n + 1);
  }
};

// Throws InvariantError when a count exceeds its bound.
Census minimal_ambiguous_census(const ApproxArgmaxSet& d, const std::vector<AmbiguityInterval>& iv);
Census minimal_ambiguous_census(const SetFunction& f, const PriceVector& p, const Real& sigma);

// 2(n+1)(n+2).
std::size_t sparse_size_bound(int n);

struct SimulatedAnswer {
  ActionSet answer;
  std::uint64_t value_queries = 0;
  std::size_t candidates = 0;  // |D^eps(p)| on the base
};

// Demand for `hidden` using value queries only, given free knowledge of
// `base`; hidden may exceed base by at most eps on a single set.
SimulatedAnswer simulate_demand_by_values(const SetFunction& base, const SetFunction& hidden,
                                          const PriceVector& p, const Real& eps,
                                          QueryLedger* ledger = nullptr);
// Supply for `hidden`, which may undercut base by at most eps on a single set.
SimulatedAnswer simulate_supply_by_values(const SetFunction& base, const SetFunction& hidden,
                                          const PriceVector& p, const Real& eps,
                                          QueryLedger* ledger = nullptr);

// p_i = 2^u with u uniform on [-n, n].
PriceVector random_prices(int n, std::mt19937_64& rng);

enum class QueryStrategy {
  Scan,     // query S_first, S_first+1, ... until the perturbed set shows up
  NoQuery,  // answer from the base instance alone
};

std::string to_string(QueryStrategy s);

struct ValueQueryStats {
  int n = 0;
  QueryStrategy strategy = QueryStrategy::Scan;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<Mask> hidden;             // per trial
  std::vector<std::uint64_t> queries;   // per trial
  std::size_t identified = 0;           // trials where the perturbed set was found
  double mean = 0;
  double std_error = 0;
  double analytic_mean = 0;             // exact expectation for a uniform hidden index
  double lower_bound = 0;               // 2^{n-2}
  bool within_tolerance = false;        // |mean - analytic| <= 3 std errors
  bool ok = false;
  std::vector<std::string> violations;
};

ValueQueryStats value_query_experiment(const PerturbedFamily& family, QueryStrategy strategy,
                                       std::size_t trials, std::uint64_t seed);
// Every hidden index once.
ValueQueryStats value_query_exhaustive(const PerturbedFamily& family, QueryStrategy strategy);

}  // namespace contracts
