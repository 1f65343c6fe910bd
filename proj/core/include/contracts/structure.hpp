#pragma once

#include <string>
#include <vector>

#include "contracts/set_function.hpp"

namespace contracts {

enum class ViolationKind { Nonnegativity, Monotonicity, Submodularity, Supermodularity, Additivity };

std::string to_string(ViolationKind k);

struct Violation {
  ViolationKind kind;
  Mask s = 0;
  Mask t = 0;
  int action = 0;
  Real amount;  // how far the required inequality misses
};

struct StructureOptions {
  bool strict_monotone = false;
  bool strict_class = false;
  std::size_t max_recorded = 32;
};

struct StructureReport {
  StructureClass checked;
  bool strict_monotone = false;
  bool strict_class = false;
  std::size_t violation_count = 0;
  std::vector<Violation> violations;  // first max_recorded
  std::size_t triples_checked = 0;

  bool ok() const { return violation_count == 0; }
  std::string summary() const;
};

// Exhaustive scan over S subset of T, i outside T.
StructureReport verify_structure(const SetFunction& v, StructureClass cls,
                                 const StructureOptions& opts = {});

// min over S strictly inside T, i outside T of v(i|S) - v(i|T).
Real diminishing_gap(const SetFunction& v);
// min over S strictly inside T, i outside T of v(i|T) - v(i|S).
Real increasing_gap(const SetFunction& v);

}  // namespace contracts
