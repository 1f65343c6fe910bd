#include "contracts/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "contracts/errors.hpp"

namespace contracts {
namespace {

// Members within slack of the max of objective; argmax ties go to larger
// secondary, then lower index.
template <class Obj, class Sec>
ApproxArgmaxSet collect(ApproxKind kind, int n, const Real& slack, Obj objective, Sec secondary) {
  if (slack.sign() < 0) throw ParameterError("slack must be nonnegative");
  const Mask size = universe_size(n);
  std::vector<Real> val(size);
  Mask best = 0;
  for (Mask s = 0; s < size; ++s) {
    val[s] = objective(s);
    if (s == 0) continue;
    auto cmp = val[s] <=> val[best];
    if (cmp > 0 || (cmp == 0 && secondary(s) > secondary(best))) best = s;
  }
  ApproxArgmaxSet out;
  out.kind = kind;
  out.n = n;
  out.slack = slack;
  out.max_value = val[best];
  const Real floor = val[best] - slack;
  for (Mask s = 0; s < size; ++s) {
    if (val[s] >= floor) {
      if (s == best) out.argmax = out.members.size();
      out.members.emplace_back(n, s);
    }
  }
  return out;
}

SigmaBound pairwise_bound(const std::vector<Real>& g, bool decreasing) {
  // For each l, the closest later value; gives the exact min over all l < h.
  const std::size_t size = g.size();
  if (size < 3) throw ParameterError("sigma bound needs at least two breakpoints");
  SigmaBound b;
  bool have = false;
  std::size_t near = size - 1;
  for (std::size_t l = size - 2; l >= 1; --l) {
    Real gap = decreasing ? g[l] - g[near] : g[near] - g[l];
    if (!have || gap < b.raw) {
      b.raw = std::move(gap);
      b.low = static_cast<Mask>(l);
      b.high = static_cast<Mask>(near);
      have = true;
    }
    bool closer = decreasing ? g[l] > g[near] : g[l] < g[near];
    if (closer) near = l;
  }
  b.raw = b.raw / Real(2);
  b.value = b.raw / Real(kSigmaSafetyDivisor);
  if (!(b.raw.sign() > 0)) throw IntegrityError("sigma bound is not positive");
  return b;
}

}  // namespace

std::string to_string(ApproxKind k) {
  switch (k) {
    case ApproxKind::Demand: return "demand";
    case ApproxKind::Supply: return "supply";
    case ApproxKind::BestResponse: return "best-response";
  }
  return "?";
}

bool ApproxArgmaxSet::contains(Mask t) const {
  return std::binary_search(members.begin(), members.end(), ActionSet(n, t),
                            [](const ActionSet& a, const ActionSet& b) { return a.mask() < b.mask(); });
}

ApproxArgmaxSet approx_demand(const SetFunction& f, const PriceVector& p, const Real& sigma) {
  if (p.n() != f.n()) throw ParameterError("price vector length mismatch");
  auto prices = p.set_prices();
  return collect(
      ApproxKind::Demand, f.n(), sigma, [&](Mask s) { return f(s) - prices[s]; },
      [&](Mask s) -> const Real& { return f(s); });
}

ApproxArgmaxSet approx_supply(const SetFunction& c, const PriceVector& p, const Real& sigma) {
  if (p.n() != c.n()) throw ParameterError("price vector length mismatch");
  auto prices = p.set_prices();
  return collect(
      ApproxKind::Supply, c.n(), sigma, [&](Mask s) { return prices[s] - c(s); },
      [&](Mask s) -> const Real& { return c(s); });
}

ApproxArgmaxSet approx_best_response(const ContractInstance& inst, const Real& alpha,
                                     const Real& sigma) {
  if (alpha.sign() < 0 || alpha > Real(1)) throw ParameterError("contract outside [0, 1]");
  return collect(
      ApproxKind::BestResponse, inst.n, sigma,
      [&](Mask s) { return alpha * inst.f(s) - inst.c(s); },
      [&](Mask s) -> const Real& { return inst.f(s); });
}

SigmaBound sigma_bound_demand(const std::vector<Real>& alpha) {
  std::vector<Real> inv(alpha.size());
  for (std::size_t t = 1; t < alpha.size(); ++t) {
    if (!(alpha[t].sign() > 0)) throw ParameterError("critical values must be positive");
    inv[t] = Real(1) / alpha[t];
  }
  return pairwise_bound(inv, true);
}

SigmaBound sigma_bound_demand(const EqualRevenueSubmodF& base) {
  PrecisionGuard guard(std::max(working_precision(), base.precision_bits));
  return sigma_bound_demand(base.alpha);
}

SigmaBound sigma_bound_supply(const std::vector<Real>& alpha) {
  return pairwise_bound(alpha, false);
}

SigmaBound sigma_bound_supply(const EqualRevenueSupmodC& base) {
  PrecisionGuard guard(std::max(working_precision(), base.instance.precision_bits));
  std::vector<Real> a;
  for (const auto& q : base.alpha) a.emplace_back(q);
  return sigma_bound_supply(a);
}

std::vector<AmbiguityInterval> ambiguity_intervals(const ApproxArgmaxSet& d) {
  std::vector<AmbiguityInterval> iv(d.n);
  for (int i = 1; i <= d.n; ++i) iv[i - 1].action = i;
  for (const ActionSet& s : d.members) {
    for (int i : s.actions()) iv[i - 1].r = std::max(iv[i - 1].r, s.mask());
  }
  for (auto& a : iv) {
    Mask width = Mask{1} << a.action;
    a.l = a.r > width ? a.r - width : 0;
  }
  auto bad = interval_violations(d, iv);
  if (!bad.empty()) {
    throw InvariantError("ambiguity interval violated (slack too large?): " + bad.front());
  }
  return iv;
}

std::vector<AmbiguityInterval> ambiguity_intervals(const SetFunction& f, const PriceVector& p,
                                                   const Real& sigma) {
  return ambiguity_intervals(approx_demand(f, p, sigma));
}

std::vector<std::string> interval_violations(const ApproxArgmaxSet& d,
                                             const std::vector<AmbiguityInterval>& iv) {
  std::vector<std::string> bad;
  for (const ActionSet& s : d.members) {
    const Mask t = s.mask();
    for (const auto& a : iv) {
      bool in = s.contains(a.action);
      if (t > a.r && in) {
        bad.push_back("S_" + std::to_string(t) + " contains " + std::to_string(a.action) +
                      " above r = " + std::to_string(a.r));
      }
      if (t < a.l && !in) {
        bad.push_back("S_" + std::to_string(t) + " misses " + std::to_string(a.action) +
                      " below l = " + std::to_string(a.l));
      }
    }
  }
  return bad;
}

int minimal_ambiguous_action(Mask t, const std::vector<AmbiguityInterval>& iv) {
  for (const auto& a : iv) {
    if (a.contains(t)) return a.action;
  }
  return static_cast<int>(iv.size()) + 1;
}

Census minimal_ambiguous_census(const ApproxArgmaxSet& d,
                                const std::vector<AmbiguityInterval>& iv) {
  Census c;
  c.n = d.n;
  c.count.assign(d.n + 2, 0);
  for (const ActionSet& s : d.members) ++c.count[minimal_ambiguous_action(s.mask(), iv)];
  c.total = d.members.size();
  for (int i = 1; i <= d.n + 1; ++i) {
    if (c.count[i] > Census::bound(d.n, i)) {
      throw InvariantError("census for action " + std::to_string(i) + " is " +
                           std::to_string(c.count[i]) + " > " +
                           std::to_string(Census::bound(d.n, i)));
    }
  }
  return c;
}

Census minimal_ambiguous_census(const SetFunction& f, const PriceVector& p, const Real& sigma) {
  auto d = approx_demand(f, p, sigma);
  return minimal_ambiguous_census(d, ambiguity_intervals(d));
}

std::size_t sparse_size_bound(int n) { return 2 * static_cast<std::size_t>(n + 1) * (n + 2); }

namespace {

// A hidden set sitting exactly eps above the base lands on the boundary of
// D^eps(p); a few ulps of extra slack keep rounding from dropping it.
Real boundary_slack(const SetFunction& v, const PriceVector& p, const Real& eps) {
  Real scale = max(abs(v(v.size() - 1)), Real(1));
  for (const Real& x : p.p) scale += abs(x);
  int prec = std::max(working_precision(), v(v.size() - 1).precision());
  return eps + ldexp(scale, 8 - prec);
}

}  // namespace

SimulatedAnswer simulate_demand_by_values(const SetFunction& base, const SetFunction& hidden,
                                          const PriceVector& p, const Real& eps,
                                          QueryLedger* ledger) {
  if (base.n() != hidden.n()) throw ParameterError("base and hidden ground sets differ");
  auto cand = approx_demand(base, p, boundary_slack(base, p, eps));
  auto prices = p.set_prices();
  SimulatedAnswer out;
  out.candidates = cand.size();
  QueryLedger local;
  QueryLedger* sink = ledger ? ledger : &local;
  const std::uint64_t before = sink->value_queries;
  bool have = false;
  Real best_val, best_f;
  for (const ActionSet& s : cand.members) {
    Real fv = value(hidden, s, sink);
    Real v = fv - prices[s.mask()];
    auto cmp = v <=> best_val;
    if (!have || cmp > 0 || (cmp == 0 && fv > best_f)) {
      out.answer = s;
      best_val = std::move(v);
      best_f = std::move(fv);
      have = true;
    }
  }
  out.value_queries = sink->value_queries - before;
  return out;
}

SimulatedAnswer simulate_supply_by_values(const SetFunction& base, const SetFunction& hidden,
                                          const PriceVector& p, const Real& eps,
                                          QueryLedger* ledger) {
  if (base.n() != hidden.n()) throw ParameterError("base and hidden ground sets differ");
  auto cand = approx_supply(base, p, boundary_slack(base, p, eps));
  auto prices = p.set_prices();
  SimulatedAnswer out;
  out.candidates = cand.size();
  QueryLedger local;
  QueryLedger* sink = ledger ? ledger : &local;
  const std::uint64_t before = sink->value_queries;
  bool have = false;
  Real best_val, best_c;
  for (const ActionSet& s : cand.members) {
    Real cv = value(hidden, s, sink);
    Real v = prices[s.mask()] - cv;
    auto cmp = v <=> best_val;
    if (!have || cmp > 0 || (cmp == 0 && cv > best_c)) {
      out.answer = s;
      best_val = std::move(v);
      best_c = std::move(cv);
      have = true;
    }
  }
  out.value_queries = sink->value_queries - before;
  return out;
}

PriceVector random_prices(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-n, n);
  std::vector<Real> p;
  p.reserve(n);
  for (int i = 0; i < n; ++i) p.emplace_back(std::exp2(u(rng)));
  return PriceVector(std::move(p));
}

std::string to_string(QueryStrategy s) {
  switch (s) {
    case QueryStrategy::Scan: return "scan";
    case QueryStrategy::NoQuery: return "no-query";
  }
  return "?";
}

namespace {

// Runs one hidden member; returns (queries, identified).
std::pair<std::uint64_t, bool> run_trial(const PerturbedFamily& family, QueryStrategy strategy,
                                         Mask k) {
  if (strategy == QueryStrategy::NoQuery) return {0, false};
  const auto hidden = family.member(k);
  const bool reward = family.budget().direction == PerturbDirection::RewardBonus;
  const SetFunction& known = reward ? family.base().f : family.base().c;
  const SetFunction& probe = reward ? hidden.instance.f : hidden.instance.c;
  QueryLedger ledger;
  for (Mask t = family.first(); t <= family.last(); ++t) {
    if (!(value(probe, ActionSet(family.base().n, t), &ledger) == known(t))) {
      return {ledger.value_queries, t == k};
    }
  }
  return {ledger.value_queries, false};
}

// With exact set, every index was visited once and the mean is the expectation itself.
void summarize(ValueQueryStats& st, const PerturbedFamily& family, bool exact) {
  const double m = static_cast<double>(family.size());
  st.trials = st.queries.size();
  st.lower_bound = std::ldexp(1.0, st.n - 2);
  st.analytic_mean = st.strategy == QueryStrategy::Scan ? (m + 1) / 2 : 0.0;
  double sum = std::accumulate(st.queries.begin(), st.queries.end(), 0.0);
  st.mean = st.trials ? sum / st.trials : 0.0;
  double ss = 0;
  for (auto q : st.queries) ss += (q - st.mean) * (q - st.mean);
  double var = st.trials > 1 ? ss / (st.trials - 1) : 0.0;
  st.std_error = st.trials ? std::sqrt(var / st.trials) : 0.0;
  st.within_tolerance = exact ? std::abs(st.mean - st.analytic_mean) < 1e-9
                             : std::abs(st.mean - st.analytic_mean) <= 3 * st.std_error + 1e-12;
  if (st.identified != st.trials) {
    st.violations.push_back("perturbed set identified in " + std::to_string(st.identified) + "/" +
                            std::to_string(st.trials) + " trials");
  }
  if (st.mean + 3 * st.std_error < st.lower_bound) {
    st.violations.push_back("mean query count below 2^(n-2)");
  }
  if (!st.within_tolerance) st.violations.push_back("mean outside 3 standard errors of expectation");
  st.ok = st.violations.empty();
}

}  // namespace

ValueQueryStats value_query_experiment(const PerturbedFamily& family, QueryStrategy strategy,
                                       std::size_t trials, std::uint64_t seed) {
  ValueQueryStats st;
  st.n = family.base().n;
  st.strategy = strategy;
  st.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Mask> pick(family.first(), family.last());
  for (std::size_t i = 0; i < trials; ++i) {
    Mask k = pick(rng);
    auto [q, found] = run_trial(family, strategy, k);
    st.hidden.push_back(k);
    st.queries.push_back(q);
    st.identified += found;
  }
  summarize(st, family, false);
  return st;
}

ValueQueryStats value_query_exhaustive(const PerturbedFamily& family, QueryStrategy strategy) {
  ValueQueryStats st;
  st.n = family.base().n;
  st.strategy = strategy;
  for (Mask k = family.first(); k <= family.last(); ++k) {
    auto [q, found] = run_trial(family, strategy, k);
    st.hidden.push_back(k);
    st.queries.push_back(q);
    st.identified += found;
  }
  summarize(st, family, true);
  return st;
}

}  // namespace contracts
