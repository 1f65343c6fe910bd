#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "contracts/action_set.hpp"
#include "contracts/real.hpp"

namespace contracts {

enum class StructureClass { Additive, Submodular, Supermodular, GeneralMonotone };

std::string to_string(StructureClass c);
StructureClass structure_class_from_string(const std::string& s);

// Table-backed set function over 2^n subsets. Copies share the table; a
// single-entry bonus can be layered on top without copying.
class SetFunction {
 public:
  SetFunction() = default;
  SetFunction(int n, std::vector<Real> table, StructureClass declared);

  // v(S) = base + sum_{i in S} w_i.
  static SetFunction additive(const std::vector<Real>& weights);

  int n() const { return n_; }
  Mask size() const { return universe_size(n_); }
  StructureClass declared_class() const { return declared_; }
  // v(empty) is zero.
  bool normalized() const { return (*this)(0).is_zero(); }

  const Real& operator()(Mask t) const {
    return (bonus_ && t == bonus_->index) ? bonus_->value : (*table_)[t];
  }
  const Real& operator()(const ActionSet& s) const { return (*this)(s.mask()); }

  // Marginal v(i | S) for i not in S (1-based action).
  Real marginal(int action, Mask s) const;

  const std::optional<std::vector<Real>>& additive_weights() const { return weights_; }

  // Same function with v(S_t) shifted by delta.
  SetFunction with_shift(Mask t, const Real& delta) const;
  SetFunction with_declared(StructureClass c) const;

  std::vector<Real> values() const;
  const std::vector<Real>& base_table() const { return *table_; }

 private:
  struct Bonus {
    Mask index;
    Real value;
  };
  int n_ = 0;
  std::shared_ptr<const std::vector<Real>> table_;
  StructureClass declared_ = StructureClass::GeneralMonotone;
  std::optional<Bonus> bonus_;
  std::optional<std::vector<Real>> weights_;
};

struct PriceVector {
  std::vector<Real> p;  // p[i-1] is the price of action i

  PriceVector() = default;
  explicit PriceVector(std::vector<Real> v);
  int n() const { return static_cast<int>(p.size()); }
  // p(S) for every subset, indexed by mask.
  std::vector<Real> set_prices() const;
};

}  // namespace contracts
