#include "contracts/solver.hpp"

#include <algorithm>
#include <numeric>

#include "contracts/errors.hpp"

namespace contracts {
namespace {

Breakpoint make_row(const ContractInstance& inst, Real alpha, Mask s) {
  const Real& fv = inst.f(s);
  const Real& cv = inst.c(s);
  Real ua = alpha * fv - cv;
  Real up = (Real(1) - alpha) * fv;
  return Breakpoint{std::move(alpha), ActionSet(inst.n, s), fv, cv, std::move(ua), std::move(up)};
}

Real ratio(const ContractInstance& inst, Mask from, Mask to) {
  return (inst.c(to) - inst.c(from)) / (inst.f(to) - inst.f(from));
}

// Exact crossing point rounded up, so the stored contract still incentivizes `to`.
Real critical_value(const ContractInstance& inst, Mask from, Mask to) {
  mpq_class q = (inst.c(to).to_rational() - inst.c(from).to_rational()) /
                (inst.f(to).to_rational() - inst.f(from).to_rational());
  Real r;
  mpfr_set_q(r.raw(), q.get_mpq_t(), MPFR_RNDU);
  return r;
}

BreakpointTable by_scan(const ContractInstance& inst, Mask start) {
  BreakpointTable table;
  table.rows.push_back(make_row(inst, Real(0), start));
  Mask cur = start;
  const Real one(1);
  for (;;) {
    bool found = false;
    Mask next = 0;
    Real best;
    for (Mask s = 0; s < inst.f.size(); ++s) {
      if (!(inst.f(s) > inst.f(cur))) continue;
      Real r = ratio(inst, cur, s);
      auto cmp = found ? r <=> best : std::strong_ordering::less;
      if (cmp < 0 || (cmp == 0 && inst.f(s) > inst.f(next))) {
        next = s;
        best = std::move(r);
        found = true;
      }
    }
    if (!found || best > one) break;
    Real alpha = critical_value(inst, cur, next);
    if (alpha > one) break;
    table.rows.push_back(make_row(inst, std::move(alpha), next));
    cur = next;
  }
  return table;
}

BreakpointTable by_envelope(const ContractInstance& inst, Mask start) {
  std::vector<Mask> lines;
  for (Mask s = 0; s < inst.f.size(); ++s) {
    if (inst.f(s) > inst.f(start)) lines.push_back(s);
  }
  std::sort(lines.begin(), lines.end(), [&](Mask a, Mask b) {
    auto cf = inst.f(a) <=> inst.f(b);
    if (cf != 0) return cf < 0;
    auto cc = inst.c(a) <=> inst.c(b);
    if (cc != 0) return cc < 0;
    return a < b;
  });
  // Among equal slopes only the first (lowest cost, then index) can appear.
  lines.erase(std::unique(lines.begin(), lines.end(),
                          [&](Mask a, Mask b) { return inst.f(a) == inst.f(b); }),
              lines.end());

  std::vector<Mask> hull{start};
  std::vector<Real> at{Real(0)};
  for (Mask s : lines) {
    Real x = ratio(inst, hull.back(), s);
    while (hull.size() > 1 && x <= at.back()) {
      hull.pop_back();
      at.pop_back();
      x = ratio(inst, hull.back(), s);
    }
    hull.push_back(s);
    at.push_back(std::move(x));
  }

  BreakpointTable table;
  const Real one(1);
  for (std::size_t k = 0; k < hull.size(); ++k) {
    if (at[k] > one) break;
    Real alpha = k == 0 ? Real(0) : critical_value(inst, hull[k - 1], hull[k]);
    if (alpha > one) break;
    table.rows.push_back(make_row(inst, std::move(alpha), hull[k]));
  }
  return table;
}

}  // namespace

const Breakpoint& BreakpointTable::segment(const Real& alpha) const {
  auto it = std::upper_bound(rows.begin(), rows.end(), alpha,
                             [](const Real& a, const Breakpoint& b) { return a < b.alpha; });
  if (it == rows.begin()) throw RangeError("contract below the first breakpoint");
  return *std::prev(it);
}

Real agent_utility(const ContractInstance& inst, const Real& alpha, const ActionSet& s) {
  return alpha * inst.f(s) - inst.c(s);
}

Real principal_utility(const ContractInstance& inst, const Real& alpha, const ActionSet& s) {
  return (Real(1) - alpha) * inst.f(s);
}

BreakpointTable enumerate_breakpoints(const ContractInstance& inst, EnumerationMethod method) {
  PrecisionGuard guard(std::max(working_precision(), inst.precision_bits));
  Mask start = best_response_mask(inst.f, inst.c, Real(0));
  return method == EnumerationMethod::Scan ? by_scan(inst, start) : by_envelope(inst, start);
}

Real maximizer_tolerance(int precision_bits) { return pow2(-(precision_bits / 2)); }

ContractSolution optimal_contract(const ContractInstance& inst) {
  return optimal_contract(inst, enumerate_breakpoints(inst));
}

ContractSolution optimal_contract(const ContractInstance& inst, const BreakpointTable& table) {
  if (table.rows.empty()) throw IntegrityError("empty breakpoint table");
  PrecisionGuard guard(std::max(working_precision(), inst.precision_bits));
  Real best = table.rows.front().principal_utility;
  for (const auto& row : table.rows) best = max(best, row.principal_utility);
  ContractSolution sol;
  sol.tolerance = maximizer_tolerance(inst.precision_bits);
  for (const auto& row : table.rows) {
    if (best - row.principal_utility <= sol.tolerance) sol.all_maximizers.push_back(row);
  }
  const Breakpoint& first = sol.all_maximizers.front();
  sol.alpha_star = first.alpha;
  sol.set_star = first.set;
  sol.principal_utility = first.principal_utility;
  return sol;
}

FptasResult fptas(const ContractInstance& inst, const Real& epsilon) {
  if (!(epsilon.sign() > 0) || !(epsilon < Real(1))) throw ParameterError("epsilon must lie in (0, 1)");
  PrecisionGuard guard(std::max(working_precision(), inst.precision_bits));
  FptasResult out;
  QueryLedger& q = out.queries;
  const int n = inst.n;
  const Real one(1);

  out.alpha = Real(0);
  out.set = best_response(inst, out.alpha, &q);
  out.principal_utility = value(inst.f, out.set, &q);

  ActionSet welfare_set = best_response(inst, one, &q);
  out.welfare_opt = value(inst.f, welfare_set, &q) - value(inst.c, welfare_set, &q);
  const Real& opt = out.welfare_opt;

  // k = 0..ceil(log_{1/(1-eps)}(n 2^n))
  Real span = log(Real(n) * pow2(n)) / log(one / (one - epsilon));
  Real k_max = ceil(span);
  out.grid_steps = static_cast<long>(k_max.to_double());
  if (!(opt.sign() > 0)) return out;

  for (int j = 1; j <= n; ++j) {
    Real cj = value(inst.c, ActionSet::of(n, {j}), &q);
    if (!(cj.sign() > 0)) continue;
    Real shrink = one - epsilon;
    Real base = opt / (cj + opt);
    for (long k = 0; k <= out.grid_steps; ++k) {
      Real alpha = one - shrink * base;
      ActionSet s = best_response(inst, alpha, &q);
      Real u = (one - alpha) * value(inst.f, s, &q);
      if (u > out.principal_utility) {
        out.alpha = alpha;
        out.set = s;
        out.principal_utility = u;
      }
      shrink *= one - epsilon;
    }
  }
  return out;
}

AlphaBracket alpha_bracket(int n, const Real& opt, const Real& j_star_cost) {
  if (!(opt.sign() > 0)) throw ParameterError("bracket undefined for OPT <= 0");
  Real denom = j_star_cost + opt;
  return {Real(1) - opt / denom, Real(1) - opt / (Real(n) * pow2(n) * denom)};
}

}  // namespace contracts
