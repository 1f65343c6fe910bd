#include "contracts/perturb.hpp"

#include <algorithm>

#include "contracts/errors.hpp"
#include "contracts/structure.hpp"

namespace contracts {
namespace {

Real min_of(const std::vector<Real>& v) {
  return *std::min_element(v.begin(), v.end());
}

}  // namespace

std::vector<Real> index_critical_values(const ContractInstance& base) {
  PrecisionGuard guard(std::max(working_precision(), base.precision_bits));
  std::vector<Real> a{Real(0)};
  for (Mask t = 1; t < base.f.size(); ++t) {
    Real df = base.f(t) - base.f(t - 1);
    if (!(df.sign() > 0)) throw IntegrityError("rewards not increasing along subset indices");
    a.push_back((base.c(t) - base.c(t - 1)) / df);
    if (t >= 2 && !(a[t - 1] < a[t])) {
      throw IntegrityError("critical values not increasing along subset indices");
    }
  }
  return a;
}

PerturbationBudget epsilon_bound_reward(const ContractInstance& base) {
  PrecisionGuard guard(std::max(working_precision(), base.precision_bits));
  const auto a = index_critical_values(base);
  const Mask size = base.f.size();
  PerturbationBudget b{PerturbDirection::RewardBonus, {}, {}, {}, {}};
  b.structure_term = diminishing_gap(base.f);
  std::vector<Real> ratio, step;
  for (Mask t = 1; t < size; ++t) {
    Real df = base.f(t) - base.f(t - 1);
    if (t >= 2) ratio.push_back((base.c(t) - base.c(t - 1)) / a[t - 1] - df);
    step.push_back(std::move(df));
  }
  b.ratio_term = ratio.empty() ? b.structure_term : min_of(ratio);
  b.step_term = min_of(step);
  b.epsilon_max = min(b.structure_term, min(b.ratio_term, b.step_term));
  if (!(b.epsilon_max.sign() > 0)) {
    throw IntegrityError("reward perturbation budget is not positive: " + b.epsilon_max.str(8));
  }
  return b;
}

PerturbationBudget epsilon_bound_cost(const ContractInstance& base) {
  PrecisionGuard guard(std::max(working_precision(), base.precision_bits));
  const auto a = index_critical_values(base);
  const Mask size = base.c.size();
  PerturbationBudget b{PerturbDirection::CostDiscount, {}, {}, {}, {}};
  b.structure_term = increasing_gap(base.c);
  std::vector<Real> alpha_gap, step;
  // S_1 carries zero cost, so cost steps start at t = 2.
  for (Mask t = 2; t < size; ++t) {
    step.push_back(base.c(t) - base.c(t - 1));
    alpha_gap.push_back((a[t] - a[t - 1]) * (base.f(t) - base.f(t - 1)));
  }
  if (step.empty()) throw ParameterError("cost-discount budget needs at least two actions");
  b.ratio_term = min_of(alpha_gap);
  b.step_term = min_of(step);
  b.epsilon_max = min(b.structure_term, min(b.ratio_term, b.step_term));
  if (!(b.epsilon_max.sign() > 0)) {
    throw IntegrityError("cost perturbation budget is not positive: " + b.epsilon_max.str(8));
  }
  return b;
}

Mask first_member(const ContractInstance& base, PerturbDirection direction) {
  if (direction == PerturbDirection::CostDiscount && base.c(1).is_zero()) return 2;
  return 1;
}

PerturbedInstance make_perturbed(const ContractInstance& base, Mask k, const Real& epsilon,
                                 const PerturbationBudget& budget) {
  if (k < first_member(base, budget.direction) || k >= base.f.size()) {
    throw RangeError("perturbed index " + std::to_string(k) + " outside the family");
  }
  if (!(epsilon.sign() > 0) || !(epsilon < budget.epsilon_max)) {
    throw BudgetError("epsilon " + epsilon.str(8) + " outside (0, " + budget.epsilon_max.str(8) + ")");
  }
  PerturbedInstance out;
  out.k = k;
  out.epsilon = epsilon;
  out.direction = budget.direction;
  if (budget.direction == PerturbDirection::RewardBonus) {
    out.instance = ContractInstance(base.f.with_shift(k, epsilon), base.c, base.precision_bits,
                                    base.name + "+bonus");
  } else {
    out.instance = ContractInstance(base.f, base.c.with_shift(k, -epsilon), base.precision_bits,
                                    base.name + "-discount");
  }
  return out;
}

PerturbedInstance make_perturbed(const ContractInstance& base, Mask k, const Real& epsilon,
                                 PerturbDirection direction) {
  return make_perturbed(base, k, epsilon,
                        direction == PerturbDirection::RewardBonus ? epsilon_bound_reward(base)
                                                                   : epsilon_bound_cost(base));
}

PerturbedFamily::PerturbedFamily(ContractInstance base, PerturbDirection direction,
                                 std::optional<Real> epsilon, std::optional<Real> sigma_cap)
    : base_(std::move(base)), direction_(direction) {
  budget_ = direction == PerturbDirection::RewardBonus ? epsilon_bound_reward(base_)
                                                       : epsilon_bound_cost(base_);
  PrecisionGuard guard(std::max(working_precision(), base_.precision_bits));
  epsilon_ = epsilon ? *epsilon : budget_.default_epsilon();
  if (sigma_cap) epsilon_ = min(epsilon_, *sigma_cap);
  if (!(epsilon_.sign() > 0) || !(epsilon_ < budget_.epsilon_max)) {
    throw BudgetError("family epsilon outside the budget");
  }
  first_ = first_member(base_, direction);
}

PerturbedInstance PerturbedFamily::member(Mask k) const {
  return make_perturbed(base_, k, epsilon_, budget_);
}

}  // namespace contracts
