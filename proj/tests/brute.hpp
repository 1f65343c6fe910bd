#pragma once

// Exhaustive rational-arithmetic references, independent of the library's
// solvers. Only the tables are read from library objects.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "contracts/oracle.hpp"

namespace brute {

using contracts::Mask;

inline std::vector<mpq_class> table(const contracts::SetFunction& v) {
  std::vector<mpq_class> out;
  for (Mask t = 0; t < v.size(); ++t) out.push_back(v(t).to_rational());
  return out;
}

inline std::vector<mpq_class> prices(const contracts::PriceVector& p) {
  std::vector<mpq_class> w;
  for (const auto& x : p.p) w.push_back(x.to_rational());
  std::vector<mpq_class> out(Mask{1} << w.size());
  for (Mask t = 0; t < out.size(); ++t) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if ((t >> i) & 1u) out[t] += w[i];
    }
  }
  return out;
}

// argmax obj, ties to higher key, then lower index.
inline Mask argmax(const std::vector<mpq_class>& obj, const std::vector<mpq_class>& key) {
  Mask best = 0;
  for (Mask t = 1; t < obj.size(); ++t) {
    if (obj[t] > obj[best] || (obj[t] == obj[best] && key[t] > key[best])) best = t;
  }
  return best;
}

inline Mask demand(const contracts::SetFunction& f, const contracts::PriceVector& p) {
  auto fv = table(f), pv = prices(p);
  std::vector<mpq_class> obj(fv.size());
  for (std::size_t t = 0; t < fv.size(); ++t) obj[t] = fv[t] - pv[t];
  return argmax(obj, fv);
}

inline Mask supply(const contracts::SetFunction& c, const contracts::PriceVector& p) {
  auto cv = table(c), pv = prices(p);
  std::vector<mpq_class> obj(cv.size());
  for (std::size_t t = 0; t < cv.size(); ++t) obj[t] = pv[t] - cv[t];
  return argmax(obj, cv);
}

inline Mask best_response(const std::vector<mpq_class>& f, const std::vector<mpq_class>& c,
                          const mpq_class& alpha) {
  std::vector<mpq_class> obj(f.size());
  for (std::size_t t = 0; t < f.size(); ++t) obj[t] = alpha * f[t] - c[t];
  return argmax(obj, f);
}

struct Row {
  mpq_class alpha;
  Mask set;
};

// Every alpha in [0, 1] where the best response changes: crossing points of
// all pairs of utility lines, each checked against the response just below.
inline std::vector<Row> breakpoints(const contracts::ContractInstance& inst) {
  auto f = table(inst.f), c = table(inst.c);
  std::set<mpq_class> cand{mpq_class(0)};
  for (std::size_t s = 0; s < f.size(); ++s) {
    for (std::size_t t = s + 1; t < f.size(); ++t) {
      if (f[s] == f[t]) continue;
      mpq_class a = (c[t] - c[s]) / (f[t] - f[s]);
      if (a > 0 && a <= 1) cand.insert(a);
    }
  }
  std::vector<Row> rows{{mpq_class(0), best_response(f, c, mpq_class(0))}};
  std::vector<mpq_class> pts(cand.begin(), cand.end());
  for (std::size_t k = 1; k < pts.size(); ++k) {
    Mask at = best_response(f, c, pts[k]);
    Mask below = best_response(f, c, (pts[k - 1] + pts[k]) / 2);
    if (at != below) rows.push_back({pts[k], at});
  }
  return rows;
}

inline mpq_class principal(const std::vector<mpq_class>& f, const mpq_class& alpha, Mask s) {
  return (1 - alpha) * f[s];
}

// Best principal utility over all breakpoints.
inline mpq_class optimum(const contracts::ContractInstance& inst) {
  auto f = table(inst.f);
  mpq_class best = -1;
  for (const auto& r : breakpoints(inst)) best = std::max(best, principal(f, r.alpha, r.set));
  return best;
}

// min over S strictly inside T, i outside T of v(i|S) - v(i|T).
inline mpq_class diminishing_gap(const std::vector<mpq_class>& v, int n) {
  bool any = false;
  mpq_class best;
  for (Mask tt = 0; tt < v.size(); ++tt) {
    for (Mask s = tt; ; s = (s - 1) & tt) {
      if (s != tt) {
        for (int i = 0; i < n; ++i) {
          Mask b = Mask{1} << i;
          if (tt & b) continue;
          mpq_class g = (v[s | b] - v[s]) - (v[tt | b] - v[tt]);
          if (!any || g < best) best = g, any = true;
        }
      }
      if (s == 0) break;
    }
  }
  return best;
}

}  // namespace brute
