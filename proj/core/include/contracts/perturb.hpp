#pragma once

#include <optional>
#include <vector>

#include "contracts/oracle.hpp"

namespace contracts {

enum class PerturbDirection { RewardBonus, CostDiscount };

struct PerturbationBudget {
  PerturbDirection direction;
  Real epsilon_max;     // perturbations must stay strictly below this
  Real structure_term;  // keeps the modularity class
  Real ratio_term;      // keeps all critical values distinct (reward side: ratio; cost side: alpha gaps)
  Real step_term;       // keeps monotonicity
  Real default_epsilon() const { return epsilon_max / Real(2); }
};

// Critical values alpha_t = (c_t - c_{t-1}) / (f_t - f_{t-1}) along subset indices.
std::vector<Real> index_critical_values(const ContractInstance& base);

PerturbationBudget epsilon_bound_reward(const ContractInstance& base);
PerturbationBudget epsilon_bound_cost(const ContractInstance& base);

struct PerturbedInstance {
  ContractInstance instance;
  Mask k = 0;
  Real epsilon;
  PerturbDirection direction = PerturbDirection::RewardBonus;
};

// Reward bonus: f(S_k) += eps. Cost discount: c(S_k) -= eps.
PerturbedInstance make_perturbed(const ContractInstance& base, Mask k, const Real& epsilon,
                                 const PerturbationBudget& budget);
PerturbedInstance make_perturbed(const ContractInstance& base, Mask k, const Real& epsilon,
                                 PerturbDirection direction);

// Smallest member index of a family; the cost-discount family skips S_1,
// whose cost is already 0.
Mask first_member(const ContractInstance& base, PerturbDirection direction);

class PerturbedFamily {
 public:
  PerturbedFamily(ContractInstance base, PerturbDirection direction,
                  std::optional<Real> epsilon = std::nullopt,
                  std::optional<Real> sigma_cap = std::nullopt);

  const PerturbationBudget& budget() const { return budget_; }
  const Real& epsilon() const { return epsilon_; }
  const ContractInstance& base() const { return base_; }
  Mask first() const { return first_; }
  Mask last() const { return universe_size(base_.n) - 1; }
  std::size_t size() const { return last() - first_ + 1; }
  PerturbedInstance member(Mask k) const;

  class iterator {
   public:
    iterator(const PerturbedFamily* fam, Mask k) : fam_(fam), k_(k) {}
    PerturbedInstance operator*() const { return fam_->member(k_); }
    iterator& operator++() {
      ++k_;
      return *this;
    }
    bool operator!=(const iterator& o) const { return k_ != o.k_; }

   private:
    const PerturbedFamily* fam_;
    Mask k_;
  };
  iterator begin() const { return iterator(this, first_); }
  iterator end() const { return iterator(this, last() + 1); }

 private:
  ContractInstance base_;
  PerturbDirection direction_;
  PerturbationBudget budget_;
  Real epsilon_;
  Mask first_;
};

}  // namespace contracts
