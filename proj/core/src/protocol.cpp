#include "contracts/protocol.hpp"

#include <algorithm>

#include "contracts/errors.hpp"
#include "contracts/solver.hpp"
#include "contracts/sparse.hpp"

namespace contracts {

std::string to_string(Party p) { return p == Party::Alice ? "alice" : "bob"; }

void Transcript::send(Party sender, std::uint64_t bits, std::string tag) {
  messages_.push_back({sender, bits, std::move(tag)});
  total_bits_ += bits;
}

void Transcript::charge_best_response() {
  if (br_calls_ >= br_budget_) {
    throw BudgetError("best-response budget of " + std::to_string(br_budget_) + " exhausted");
  }
  ++br_calls_;
}

std::uint64_t Transcript::bits_from(Party p) const {
  std::uint64_t s = 0;
  for (const auto& m : messages_) {
    if (m.sender == p) s += m.bits;
  }
  return s;
}

bool Transcript::consistent() const {
  return bits_from(Party::Alice) + bits_from(Party::Bob) == total_bits_;
}

std::vector<Real> NumberChannel::send(Transcript& tr, Party sender, const std::vector<Real>& values,
                                      const std::string& tag) const {
  if (width_bits < 2) throw ProtocolError("number width must be at least 2 bits");
  std::vector<Real> out;
  out.reserve(values.size());
  for (const Real& v : values) out.push_back(v.with_precision(width_bits));
  tr.send(sender, static_cast<std::uint64_t>(width_bits) * values.size(), tag);
  return out;
}

void NumberChannel::expect(const std::vector<Real>& payload, std::size_t expected,
                           const std::string& tag) {
  if (payload.size() != expected) {
    throw ProtocolError("malformed " + tag + ": " + std::to_string(payload.size()) +
                        " numbers, expected " + std::to_string(expected));
  }
}

std::string to_string(ProtocolKind k) {
  switch (k) {
    case ProtocolKind::TrivialAdditive: return "trivial-additive";
    case ProtocolKind::Exhaustive: return "exhaustive";
    case ProtocolKind::SharedOracle: return "shared-oracle";
    case ProtocolKind::AugmentedBestResponse: return "augmented-br";
  }
  return "?";
}

ProtocolKind protocol_kind_from_string(const std::string& s) {
  if (s == "trivial-additive") return ProtocolKind::TrivialAdditive;
  if (s == "exhaustive") return ProtocolKind::Exhaustive;
  if (s == "shared-oracle") return ProtocolKind::SharedOracle;
  if (s == "augmented-br") return ProtocolKind::AugmentedBestResponse;
  throw ParameterError("unknown protocol: " + s);
}

namespace {

// Alice rebuilds c from Bob's numbers and solves locally.
void solve_with_costs(ProtocolRun& run, const ContractInstance& inst, SetFunction c) {
  ContractInstance local(inst.f, std::move(c), inst.precision_bits, inst.name + "@alice");
  auto sol = optimal_contract(local);
  run.answer.alpha = sol.alpha_star;
  run.answer.set = sol.set_star;
}

void trivial_additive(ProtocolRun& run, const ProtocolInput& in, const NumberChannel& ch) {
  const ContractInstance& inst = *in.instance;
  if (!inst.c.additive_weights()) throw ParameterError("trivial protocol needs an additive cost");
  auto payload = ch.send(run.transcript, Party::Bob, *inst.c.additive_weights(), "cost-weights");
  NumberChannel::expect(payload, static_cast<std::size_t>(inst.n), "cost-weights");
  solve_with_costs(run, inst, SetFunction::additive(payload));
}

void exhaustive(ProtocolRun& run, const ProtocolInput& in, const NumberChannel& ch) {
  const ContractInstance& inst = *in.instance;
  auto payload = ch.send(run.transcript, Party::Bob, inst.c.values(), "cost-table");
  NumberChannel::expect(payload, inst.c.size(), "cost-table");
  solve_with_costs(run, inst,
                   SetFunction(inst.n, std::move(payload), inst.c.declared_class()));
}

void shared_oracle(ProtocolRun& run, const ProtocolInput& in) {
  for (const Real& alpha : in.queries) {
    const std::uint64_t before = run.transcript.total_bits();
    run.transcript.charge_best_response();
    run.answer.best_responses.push_back(best_response(*in.instance, alpha));
    run.bits_per_query.push_back(run.transcript.total_bits() - before);
  }
}

// Both parties know f, the perturbed cost and sigma, so the candidate list
// BR^{sigma/2}(alpha) needs no message; Bob sends c_hat on each candidate
// and on its extension by action n+1.
void augmented_best_response(ProtocolRun& run, const ProtocolInput& in, const NumberChannel& ch) {
  if (in.augmented == nullptr) throw ParameterError("augmented protocol needs the augmented instance");
  const AugmentedCCInstance& aug = *in.augmented;
  const CCBase& base = *aug.base;
  PrecisionGuard guard(base.precision_bits);
  const Real slack = base.sigma / Real(2);
  const Mask extra = aug.extra_bit();
  const SetFunction& f_hat = aug.instance.f;  // Alice's side
  const SetFunction& c_hat = aug.instance.c;  // Bob's side
  for (const Real& alpha : in.queries) {
    const std::uint64_t before = run.transcript.total_bits();
    auto cand = approx_best_response(base.perturbed, alpha, slack);
    std::vector<Mask> sets;
    for (const ActionSet& s : cand.members) {
      sets.push_back(s.mask());
      sets.push_back(s.mask() | extra);
    }
    std::vector<Real> costs;
    for (Mask s : sets) costs.push_back(c_hat(s));
    auto payload = ch.send(run.transcript, Party::Bob, costs, "c_hat on candidates");
    NumberChannel::expect(payload, sets.size(), "c_hat on candidates");

    // Alice: best under the usual tie-break, with index order as last resort.
    PrecisionGuard wide(utility_precision(alpha, f_hat, c_hat));
    std::vector<std::size_t> order(sets.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sets[a] < sets[b]; });
    std::size_t best = order.front();
    Real best_u = alpha * f_hat(sets[best]) - payload[best];
    for (std::size_t k : order) {
      Real u = alpha * f_hat(sets[k]) - payload[k];
      auto cmp = u <=> best_u;
      if (cmp > 0 || (cmp == 0 && f_hat(sets[k]) > f_hat(sets[best]))) {
        best = k;
        best_u = std::move(u);
      }
    }
    run.answer.best_responses.emplace_back(base.n + 1, sets[best]);
    run.bits_per_query.push_back(run.transcript.total_bits() - before);
  }
}

}  // namespace

ProtocolRun run_protocol(ProtocolKind kind, const ProtocolInput& input) {
  const ContractInstance* inst =
      input.instance ? input.instance : (input.augmented ? &input.augmented->instance : nullptr);
  if (inst == nullptr) throw ParameterError("protocol needs an instance");
  ProtocolInput in = input;
  in.instance = inst;
  ProtocolRun run{{}, Transcript(input.br_budget), {}};
  NumberChannel ch{input.width_bits > 0 ? input.width_bits : inst->precision_bits};
  PrecisionGuard guard(std::max(working_precision(), inst->precision_bits));
  switch (kind) {
    case ProtocolKind::TrivialAdditive: trivial_additive(run, in, ch); break;
    case ProtocolKind::Exhaustive: exhaustive(run, in, ch); break;
    case ProtocolKind::SharedOracle: shared_oracle(run, in); break;
    case ProtocolKind::AugmentedBestResponse: augmented_best_response(run, in, ch); break;
  }
  if (!run.transcript.consistent()) throw ProtocolError("transcript totals disagree with messages");
  return run;
}

}  // namespace contracts
