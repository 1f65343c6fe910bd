#include "contracts/action_set.hpp"

#include "contracts/errors.hpp"

namespace contracts {

void check_ground_size(int n) {
  if (n < 0 || n > kMaxActions) {
    throw RangeError("ground set size " + std::to_string(n) + " outside [0, " +
                     std::to_string(kMaxActions) + "]");
  }
}

ActionSet::ActionSet(int n, Mask mask) : n_(n), mask_(mask) {
  check_ground_size(n);
  if (n < 32 && (mask >> n) != 0) throw RangeError("mask has bits outside the ground set");
}

ActionSet ActionSet::full(int n) { return ActionSet(n, universe_size(n) - 1); }

ActionSet ActionSet::of(int n, std::initializer_list<int> actions) {
  Mask m = 0;
  for (int a : actions) {
    if (a < 1 || a > n) throw RangeError("action out of range");
    m |= Mask{1} << (a - 1);
  }
  return ActionSet(n, m);
}

ActionSet ActionSet::with(int action) const {
  if (action < 1 || action > n_) throw RangeError("action out of range");
  return ActionSet(n_, mask_ | (Mask{1} << (action - 1)));
}

ActionSet ActionSet::without(int action) const {
  if (action < 1 || action > n_) throw RangeError("action out of range");
  return ActionSet(n_, mask_ & ~(Mask{1} << (action - 1)));
}

std::vector<int> ActionSet::actions() const {
  std::vector<int> out;
  for (int i = 1; i <= n_; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

std::string ActionSet::str() const {
  std::string s = "{";
  bool first = true;
  for (int a : actions()) {
    if (!first) s += ",";
    s += std::to_string(a);
    first = false;
  }
  return s + "}";
}

ActionSet subset_from_index(int n, long long t) {
  check_ground_size(n);
  if (t < 0 || t >= static_cast<long long>(universe_size(n))) {
    throw RangeError("subset index " + std::to_string(t) + " outside [0, 2^" + std::to_string(n) +
                     " - 1]");
  }
  return ActionSet(n, static_cast<Mask>(t));
}

std::vector<Mask> subsets_of_size(int n, int k) {
  std::vector<Mask> out;
  for (Mask t = 0; t < universe_size(n); ++t) {
    if (std::popcount(t) == k) out.push_back(t);
  }
  return out;
}

}  // namespace contracts
