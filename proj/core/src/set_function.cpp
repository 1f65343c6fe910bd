#include "contracts/set_function.hpp"

#include <algorithm>
#include <bit>

#include "contracts/errors.hpp"

namespace contracts {

std::string to_string(StructureClass c) {
  switch (c) {
    case StructureClass::Additive: return "additive";
    case StructureClass::Submodular: return "submodular";
    case StructureClass::Supermodular: return "supermodular";
    case StructureClass::GeneralMonotone: return "general-monotone";
  }
  return "?";
}

StructureClass structure_class_from_string(const std::string& s) {
  if (s == "additive") return StructureClass::Additive;
  if (s == "submodular") return StructureClass::Submodular;
  if (s == "supermodular") return StructureClass::Supermodular;
  if (s == "general-monotone" || s == "general") return StructureClass::GeneralMonotone;
  throw ParameterError("unknown structure class: " + s);
}

SetFunction::SetFunction(int n, std::vector<Real> table, StructureClass declared)
    : n_(n), declared_(declared) {
  check_ground_size(n);
  if (table.size() != universe_size(n)) {
    throw ParameterError("table has " + std::to_string(table.size()) + " entries, expected 2^" +
                         std::to_string(n));
  }
  table_ = std::make_shared<const std::vector<Real>>(std::move(table));
}

SetFunction SetFunction::additive(const std::vector<Real>& weights) {
  int n = static_cast<int>(weights.size());
  check_ground_size(n);
  // Sums are kept exact so marginals reproduce the weights.
  int bits = working_precision();
  long hi = 0, lo = 0;
  bool any = false;
  for (const Real& w : weights) {
    if (w.is_zero()) continue;
    long top = w.exponent(), bottom = top - w.precision();
    hi = any ? std::max(hi, top) : top;
    lo = any ? std::min(lo, bottom) : bottom;
    any = true;
  }
  if (any) bits = std::max<long>(bits, hi - lo + n + 2);
  PrecisionGuard guard(bits);
  std::vector<Real> t(universe_size(n));
  t[0] = Real(0);
  for (Mask s = 1; s < universe_size(n); ++s) {
    int low = std::countr_zero(s);
    t[s] = t[s & (s - 1)] + weights[low];
  }
  SetFunction f(n, std::move(t), StructureClass::Additive);
  f.weights_ = weights;
  return f;
}

Real SetFunction::marginal(int action, Mask s) const {
  Mask bit = Mask{1} << (action - 1);
  return (*this)(s | bit) - (*this)(s);
}

SetFunction SetFunction::with_shift(Mask t, const Real& delta) const {
  if (t >= size()) throw RangeError("shift index out of range");
  SetFunction g = *this;
  g.bonus_ = Bonus{t, (*this)(t) + delta};
  g.weights_.reset();
  return g;
}

SetFunction SetFunction::with_declared(StructureClass c) const {
  SetFunction g = *this;
  g.declared_ = c;
  return g;
}

std::vector<Real> SetFunction::values() const {
  std::vector<Real> out(*table_);
  if (bonus_) out[bonus_->index] = bonus_->value;
  return out;
}

PriceVector::PriceVector(std::vector<Real> v) : p(std::move(v)) {
  for (const Real& x : p) {
    if (x.sign() < 0) throw ParameterError("negative price");
  }
}

std::vector<Real> PriceVector::set_prices() const {
  Mask size = universe_size(n());
  std::vector<Real> out(size);
  out[0] = Real(0);
  for (Mask s = 1; s < size; ++s) out[s] = out[s & (s - 1)] + p[std::countr_zero(s)];
  return out;
}

}  // namespace contracts
