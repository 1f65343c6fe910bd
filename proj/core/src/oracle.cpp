#include "contracts/oracle.hpp"

#include "contracts/errors.hpp"

namespace contracts {
namespace {

void record(QueryLedger* ledger, QueryKind kind, Mask answer, std::string arg) {
  if (ledger == nullptr) return;
  switch (kind) {
    case QueryKind::Value: ++ledger->value_queries; break;
    case QueryKind::Demand: ++ledger->demand_queries; break;
    case QueryKind::Supply: ++ledger->supply_queries; break;
    case QueryKind::BestResponse: ++ledger->best_response_queries; break;
  }
  if (ledger->keep_log) ledger->log.push_back({kind, answer, std::move(arg)});
}

std::string price_arg(const PriceVector& p) {
  std::string s;
  for (const Real& x : p.p) s += (s.empty() ? "" : ",") + x.str(17);
  return s;
}

// Scan all subsets maximizing objective(S); ties to larger secondary(S), then lower index.
template <class Obj, class Sec>
Mask argmax(Mask size, Obj objective, Sec secondary) {
  Mask best = 0;
  Real best_val = objective(0);
  for (Mask s = 1; s < size; ++s) {
    Real v = objective(s);
    auto cmp = v <=> best_val;
    if (cmp > 0 || (cmp == 0 && secondary(s) > secondary(best))) {
      best = s;
      best_val = std::move(v);
    }
  }
  return best;
}

}  // namespace

void QueryLedger::merge(const QueryLedger& o) {
  value_queries += o.value_queries;
  demand_queries += o.demand_queries;
  supply_queries += o.supply_queries;
  best_response_queries += o.best_response_queries;
  if (keep_log) log.insert(log.end(), o.log.begin(), o.log.end());
}

ContractInstance::ContractInstance(SetFunction f_, SetFunction c_, int precision_bits_,
                                   std::string name_)
    : n(f_.n()), f(std::move(f_)), c(std::move(c_)), precision_bits(precision_bits_),
      name(std::move(name_)) {
  if (f.n() != c.n()) throw ParameterError("reward and cost ground sets differ");
}

void ContractInstance::check_basic() const {
  if (!c(0).is_zero()) throw ParameterError("cost of the empty set must be 0");
  for (Mask s = 0; s < f.size(); ++s) {
    if (f(s).sign() < 0) throw ParameterError("negative reward at " + std::to_string(s));
    if (c(s).sign() < 0) throw ParameterError("negative cost at " + std::to_string(s));
  }
}

Real value(const SetFunction& v, const ActionSet& s, QueryLedger* ledger) {
  if (s.n() != v.n()) throw ParameterError("set over a different ground set");
  record(ledger, QueryKind::Value, s.mask(), std::to_string(s.mask()));
  return v(s);
}

ActionSet demand(const SetFunction& f, const PriceVector& p, QueryLedger* ledger) {
  if (p.n() != f.n()) throw ParameterError("price vector length mismatch");
  auto prices = p.set_prices();
  Mask best = argmax(
      f.size(), [&](Mask s) { return f(s) - prices[s]; },
      [&](Mask s) -> const Real& { return f(s); });
  if (ledger != nullptr) record(ledger, QueryKind::Demand, best, ledger->keep_log ? price_arg(p) : "");
  return ActionSet(f.n(), best);
}

ActionSet supply(const SetFunction& c, const PriceVector& p, QueryLedger* ledger) {
  if (p.n() != c.n()) throw ParameterError("price vector length mismatch");
  auto prices = p.set_prices();
  Mask best = argmax(
      c.size(), [&](Mask s) { return prices[s] - c(s); },
      [&](Mask s) -> const Real& { return c(s); });
  if (ledger != nullptr) record(ledger, QueryKind::Supply, best, ledger->keep_log ? price_arg(p) : "");
  return ActionSet(c.n(), best);
}

int utility_precision(const Real& alpha, const SetFunction& f, const SetFunction& c) {
  const Mask top = f.size() - 1;
  return std::max(working_precision(),
                  alpha.precision() + 2 * std::max(f(top).precision(), c(top).precision()) + 64);
}

Mask best_response_mask(const SetFunction& f, const SetFunction& c, const Real& alpha) {
  PrecisionGuard guard(utility_precision(alpha, f, c));
  return argmax(
      f.size(), [&](Mask s) { return alpha * f(s) - c(s); },
      [&](Mask s) -> const Real& { return f(s); });
}

ActionSet best_response(const ContractInstance& inst, const Real& alpha, QueryLedger* ledger) {
  if (alpha.sign() < 0 || alpha > Real(1)) throw ParameterError("contract outside [0, 1]");
  Mask best = best_response_mask(inst.f, inst.c, alpha);
  record(ledger, QueryKind::BestResponse, best, ledger && ledger->keep_log ? alpha.str(17) : "");
  return ActionSet(inst.n, best);
}

PriceVector demand_prices_for_contract(const SetFunction& c, const Real& alpha) {
  if (!c.additive_weights()) throw ParameterError("cost function is not additive");
  if (alpha.is_zero()) throw ParameterError("degenerate contract: alpha = 0");
  std::vector<Real> p;
  for (const Real& w : *c.additive_weights()) p.push_back(w / alpha);
  return PriceVector(std::move(p));
}

PriceVector supply_prices_for_contract(const SetFunction& f, const Real& alpha) {
  if (!f.additive_weights()) throw ParameterError("reward function is not additive");
  std::vector<Real> p;
  for (const Real& w : *f.additive_weights()) p.push_back(alpha * w);
  return PriceVector(std::move(p));
}

}  // namespace contracts
