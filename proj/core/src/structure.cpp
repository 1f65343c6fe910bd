#include "contracts/structure.hpp"

#include <sstream>

#include "contracts/errors.hpp"

namespace contracts {
namespace {

// d[i][S] = v(S + i) - v(S) for i not in S.
std::vector<std::vector<Real>> marginal_table(const SetFunction& v) {
  const int n = v.n();
  std::vector<std::vector<Real>> d(n, std::vector<Real>(v.size()));
  for (int i = 0; i < n; ++i) {
    Mask bit = Mask{1} << i;
    for (Mask s = 0; s < v.size(); ++s) {
      if (!(s & bit)) d[i][s] = v(s | bit) - v(s);
    }
  }
  return d;
}

// Calls fn(i, S, T) for every S strictly inside T and i outside T.
template <class Fn>
void for_each_triple(int n, Fn fn) {
  const Mask size = universe_size(n);
  for (Mask t = 0; t < size; ++t) {
    for (Mask s = (t - 1) & t;; s = (s - 1) & t) {
      if (s != t) {
        for (int i = 0; i < n; ++i) {
          if (!(t >> i & 1)) fn(i, s, t);
        }
      }
      if (s == 0) break;
    }
  }
}

Real gap(const SetFunction& v, bool diminishing) {
  if (v.n() < 2) throw ParameterError("marginal gap needs at least two actions");
  auto d = marginal_table(v);
  bool have = false;
  Real best;
  for_each_triple(v.n(), [&](int i, Mask s, Mask t) {
    Real g = diminishing ? d[i][s] - d[i][t] : d[i][t] - d[i][s];
    if (!have || g < best) {
      best = std::move(g);
      have = true;
    }
  });
  return best;
}

}  // namespace

std::string to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::Nonnegativity: return "nonnegativity";
    case ViolationKind::Monotonicity: return "monotonicity";
    case ViolationKind::Submodularity: return "submodularity";
    case ViolationKind::Supermodularity: return "supermodularity";
    case ViolationKind::Additivity: return "additivity";
  }
  return "?";
}

std::string StructureReport::summary() const {
  std::ostringstream os;
  os << to_string(checked) << (strict_class ? " (strict)" : "") << ", monotone"
     << (strict_monotone ? " (strict)" : "") << ": " << violation_count << " violation(s) in "
     << triples_checked << " checks";
  for (const auto& v : violations) {
    os << "\n  " << to_string(v.kind) << " S=" << v.s << " T=" << v.t;
    if (v.action) os << " i=" << v.action;
    os << " by " << v.amount.str(6);
  }
  return os.str();
}

StructureReport verify_structure(const SetFunction& v, StructureClass cls,
                                 const StructureOptions& opts) {
  StructureReport rep;
  rep.checked = cls;
  rep.strict_monotone = opts.strict_monotone;
  rep.strict_class = opts.strict_class;
  auto add = [&](ViolationKind k, Mask s, Mask t, int action, Real amount) {
    ++rep.violation_count;
    if (rep.violations.size() < opts.max_recorded) {
      rep.violations.push_back({k, s, t, action, std::move(amount)});
    }
  };

  for (Mask s = 0; s < v.size(); ++s) {
    if (v(s).sign() < 0) add(ViolationKind::Nonnegativity, s, s, 0, -v(s));
  }
  auto d = marginal_table(v);
  // Monotonicity along single-element steps covers all nested pairs.
  for (int i = 0; i < v.n(); ++i) {
    for (Mask s = 0; s < v.size(); ++s) {
      if (s >> i & 1) continue;
      ++rep.triples_checked;
      int sg = d[i][s].sign();
      if (sg < 0 || (opts.strict_monotone && sg == 0)) {
        add(ViolationKind::Monotonicity, s, s | (Mask{1} << i), i + 1, -d[i][s]);
      }
    }
  }
  if (cls == StructureClass::GeneralMonotone) return rep;

  for_each_triple(v.n(), [&](int i, Mask s, Mask t) {
    ++rep.triples_checked;
    auto cmp = d[i][s] <=> d[i][t];
    switch (cls) {
      case StructureClass::Submodular:
        if (cmp < 0 || (opts.strict_class && cmp == 0)) {
          add(ViolationKind::Submodularity, s, t, i + 1, d[i][t] - d[i][s]);
        }
        break;
      case StructureClass::Supermodular:
        if (cmp > 0 || (opts.strict_class && cmp == 0)) {
          add(ViolationKind::Supermodularity, s, t, i + 1, d[i][s] - d[i][t]);
        }
        break;
      case StructureClass::Additive:
        if (cmp != 0) add(ViolationKind::Additivity, s, t, i + 1, abs(d[i][s] - d[i][t]));
        break;
      case StructureClass::GeneralMonotone: break;
    }
  });
  if (cls == StructureClass::Additive && !v(0).is_zero()) {
    add(ViolationKind::Additivity, 0, 0, 0, abs(v(0)));
  }
  return rep;
}

Real diminishing_gap(const SetFunction& v) { return gap(v, true); }
Real increasing_gap(const SetFunction& v) { return gap(v, false); }

}  // namespace contracts
