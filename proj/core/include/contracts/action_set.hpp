#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace contracts {

inline constexpr int kMaxActions = 24;

using Mask = std::uint32_t;

// Subset of actions {1..n}; action i is bit (i-1), so the mask doubles as the
// subset index t = sum_{i in S} 2^{i-1}.
class ActionSet {
 public:
  ActionSet() = default;
  ActionSet(int n, Mask mask);

  static ActionSet empty(int n) { return ActionSet(n, 0); }
  static ActionSet full(int n);
  static ActionSet of(int n, std::initializer_list<int> actions);

  int n() const { return n_; }
  Mask mask() const { return mask_; }
  Mask index() const { return mask_; }
  int size() const { return std::popcount(mask_); }

  bool contains(int action) const { return (mask_ >> (action - 1)) & 1u; }
  ActionSet with(int action) const;
  ActionSet without(int action) const;
  std::vector<int> actions() const;
  bool subset_of(const ActionSet& o) const { return (mask_ & ~o.mask_) == 0; }

  std::string str() const;  // "{1,3}"

  friend bool operator==(const ActionSet& a, const ActionSet& b) = default;

 private:
  int n_ = 0;
  Mask mask_ = 0;
};

inline Mask universe_size(int n) { return Mask{1} << n; }

void check_ground_size(int n);

// The set whose characteristic vector encodes t.
ActionSet subset_from_index(int n, long long t);

// Size-k subsets of [n] in increasing index order.
std::vector<Mask> subsets_of_size(int n, int k);

}  // namespace contracts
