#include "contracts/constructions.hpp"

#include <algorithm>
#include <sstream>

namespace contracts {
namespace {

int resolve_bits(int requested, int fallback) {
  return requested > 0 ? requested : std::max(working_precision(), fallback);
}

std::vector<Real> powers_of_two(int n) {
  std::vector<Real> w;
  for (int i = 0; i < n; ++i) w.push_back(pow2(i));
  return w;
}

}  // namespace

Real next_equal_revenue_alpha(const Real& a) {
  return a + (sqrt(Real(4) * a * a - Real(8) * a + Real(5)) - Real(1)) / Real(2);
}

std::vector<Real> equal_revenue_alphas(std::size_t count) {
  std::vector<Real> a;
  a.reserve(count);
  a.emplace_back(0);
  while (a.size() < count) a.push_back(next_equal_revenue_alpha(a.back()));
  return a;
}

int recommended_precision(int n) {
  return n <= 10 ? kDefaultPrecision : std::max(kExtendedPrecision, 30 * n);
}

EqualRevenueSubmodF equal_revenue_submod_f(int n, int precision_bits) {
  check_ground_size(n);
  if (n < 1) throw RangeError("need at least one action");
  EqualRevenueSubmodF out;
  out.n = n;
  out.precision_bits = resolve_bits(precision_bits, recommended_precision(n));
  PrecisionGuard guard(out.precision_bits);

  const Mask size = universe_size(n);
  out.alpha = equal_revenue_alphas(size);
  out.f.reserve(size);
  for (const Real& a : out.alpha) out.f.push_back(Real(1) / (Real(1) - a));

  // Adjacent critical values and reward increments must stay resolvable.
  for (Mask t = 1; t < size; ++t) {
    bool increasing = out.alpha[t - 1] < out.alpha[t] && out.alpha[t] < Real(1);
    bool concave = t < 2 || out.f[t] - out.f[t - 1] < out.f[t - 1] - out.f[t - 2];
    if (!increasing || !concave) {
      throw PrecisionError("critical values collide at t = " + std::to_string(t) + " with " +
                               std::to_string(out.precision_bits) + "-bit mantissa",
                           std::max(recommended_precision(n), 30 * n));
    }
  }
  SetFunction f(n, out.f, StructureClass::Submodular);
  SetFunction c = SetFunction::additive(powers_of_two(n));
  out.instance = ContractInstance(std::move(f), std::move(c), out.precision_bits,
                                  "equal_revenue_submod_f");
  return out;
}

ContractInstance build_equal_revenue_submod_f(int n, int precision_bits) {
  return equal_revenue_submod_f(n, precision_bits).instance;
}

EqualRevenueSupmodC equal_revenue_supmod_c(int n, int precision_bits) {
  check_ground_size(n);
  if (n < 1) throw RangeError("need at least one action");
  EqualRevenueSupmodC out;
  out.n = n;
  const int bits = resolve_bits(precision_bits, kDefaultPrecision);
  PrecisionGuard guard(bits);

  const Mask size = universe_size(n);
  out.cost.resize(size);
  out.alpha.resize(size);
  out.cost[0] = 0;
  out.alpha[0] = 0;
  std::vector<Real> table(size);
  table[0] = Real(0);
  for (Mask t = 1; t < size; ++t) {
    out.alpha[t] = mpq_class(mpz_class(t - 1), mpz_class(t));
    out.alpha[t].canonicalize();
    out.cost[t] = out.cost[t - 1] + out.alpha[t];
    table[t] = Real(out.cost[t]);
  }
  SetFunction f = SetFunction::additive(powers_of_two(n));
  SetFunction c(n, std::move(table), StructureClass::Supermodular);
  out.instance = ContractInstance(std::move(f), std::move(c), bits, "equal_revenue_supmod_c");
  return out;
}

ContractInstance build_equal_revenue_supmod_c(int n, int precision_bits) {
  return equal_revenue_supmod_c(n, precision_bits).instance;
}

std::string EqualRevenueReport::summary() const {
  std::ostringstream os;
  os << (ok ? "equal revenue holds" : "equal revenue FAILS") << ": " << nonzero_breakpoints << "/"
     << expected << " nonempty breakpoints, max |u_p - 1| = " << max_deviation.str(6)
     << " (row " << worst_row << ")";
  return os.str();
}

EqualRevenueReport verify_equal_revenue(const ContractInstance& inst, const Real& tol) {
  return verify_equal_revenue(inst, enumerate_breakpoints(inst), tol);
}

EqualRevenueReport verify_equal_revenue(const ContractInstance& inst, const BreakpointTable& table,
                                        const Real& tol) {
  PrecisionGuard guard(std::max(working_precision(), inst.precision_bits));
  EqualRevenueReport rep;
  rep.expected = universe_size(inst.n) - 1;
  rep.max_deviation = Real(0);
  for (std::size_t k = 0; k < table.size(); ++k) {
    const Breakpoint& row = table[k];
    if (row.set.mask() == 0) continue;
    ++rep.nonzero_breakpoints;
    Real dev = abs(row.principal_utility - Real(1));
    if (dev > rep.max_deviation) {
      rep.max_deviation = dev;
      rep.worst_row = k;
    }
  }
  rep.ok = rep.nonzero_breakpoints == rep.expected && rep.max_deviation <= tol;
  return rep;
}

bool verify_equal_revenue_exact(const EqualRevenueSupmodC& inst) {
  const Mask size = universe_size(inst.n);
  // S_1 is the best response at alpha = 0: the only zero-cost set with positive reward.
  for (Mask t = 2; t < size; ++t) {
    if (inst.cost[t] <= 0) return false;
  }
  for (Mask t = 1; t < size; ++t) {
    mpq_class crit = (inst.cost[t] - inst.cost[t - 1]) / mpq_class(1);  // reward step is 1
    if (crit != inst.alpha[t]) return false;
    if ((1 - crit) * mpq_class(t) != 1) return false;
    if (t >= 2 && !(inst.alpha[t - 1] < inst.alpha[t])) return false;
  }
  // Each alpha_t must also be the next critical value: min over k of (c_{t+k}-c_t)/k.
  for (Mask t = 1; t + 1 < size; ++t) {
    for (Mask k = 1; t + k < size; ++k) {
      if ((inst.cost[t + k] - inst.cost[t]) / mpq_class(k) < inst.alpha[t + 1]) return false;
    }
  }
  return true;
}

int default_kappa(int n) { return std::max(18 * n + 20, 20 * n); }

Real rounded_revenue_tolerance(int n, int kappa) { return pow2(10 * n - kappa); }

RoundedInstance build_rounded(int n, int kappa) {
  check_ground_size(n);
  if (n < 1) throw RangeError("need at least one action");
  if (kappa == 0) kappa = default_kappa(n);
  if (kappa < 1) throw ParameterError("grid exponent must be positive");
  RoundedInstance out;
  out.n = n;
  out.kappa = kappa;
  out.precision_bits = std::max(working_precision(), kappa + 10 * n);
  PrecisionGuard guard(out.precision_bits);

  const Mask size = universe_size(n);
  out.alpha = equal_revenue_alphas(size);
  for (Mask t = 0; t < size; ++t) {
    Real r = ldexp(floor(ldexp(out.alpha[t], kappa)), -kappa);
    if (t > 0 && !(out.alpha_rounded.back() < r)) {
      throw RoundingCollision("rounded critical values collide at t = " + std::to_string(t) +
                              " on a 2^-" + std::to_string(kappa) + " grid");
    }
    out.error.push_back(out.alpha[t] - r);
    out.f_rounded.push_back(Real(1) / (Real(1) - r));
    out.alpha_rounded.push_back(std::move(r));
  }
  out.beta.emplace_back(0);
  for (Mask t = 1; t < size; ++t) {
    Real b = Real(1) / (out.f_rounded[t] - out.f_rounded[t - 1]);
    if (!(out.beta.back() < b) || !(b < Real(1))) {
      throw RoundingCollision("rounded breakpoints not strictly increasing below 1 at t = " +
                              std::to_string(t));
    }
    out.beta.push_back(std::move(b));
  }
  SetFunction f(n, out.f_rounded, StructureClass::Submodular);
  SetFunction c = SetFunction::additive(powers_of_two(n));
  out.instance = ContractInstance(std::move(f), std::move(c), out.precision_bits, "rounded");
  return out;
}

GapBoundReport check_gap_bounds(int n, int precision_bits) {
  check_ground_size(n);
  GapBoundReport rep;
  PrecisionGuard guard(resolve_bits(precision_bits, std::max(64, 30 * n)));
  const Mask size = universe_size(n);
  // One extra value so the last gap is defined.
  auto a = equal_revenue_alphas(static_cast<std::size_t>(size) + 1);
  const Real one(1);
  const Real floor_one_minus = pow2(-6 * n);
  const Real floor_gap = pow2(-18 * n);
  for (Mask t = 1; t < size; ++t) {
    Real rest = one - a[t];
    Real gap = a[t + 1] - a[t];
    if (t == 1 || rest < rep.min_one_minus_alpha) rep.min_one_minus_alpha = rest;
    if (t == 1 || gap < rep.min_gap) rep.min_gap = gap;
    ++rep.checked;
    auto fail = [&](const std::string& what) {
      rep.ok = false;
      if (rep.failures.size() < 16) rep.failures.push_back("t=" + std::to_string(t) + ": " + what);
    };
    if (!(rest * rest * rest < gap)) fail("(1-a)^3 >= gap");
    if (!(gap < rest * sqrt(rest))) fail("gap >= (1-a)^(3/2)");
    if (rest < floor_one_minus) fail("1-a < 2^-6n");
    if (gap < floor_gap) fail("gap < 2^-18n");
  }
  return rep;
}

}  // namespace contracts
