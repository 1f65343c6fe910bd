#include "contracts/commlab.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "contracts/constructions.hpp"
#include "contracts/errors.hpp"
#include "contracts/perturb.hpp"
#include "contracts/sparse.hpp"

namespace contracts {
namespace {

void check_even(int n) {
  check_ground_size(n);
  if (n < 2 || n % 2 != 0) throw ParameterError("augmentation needs an even n >= 2, got " + std::to_string(n));
}

Real min_step(const SetFunction& v, Mask first_t) {
  Real best;
  for (Mask t = first_t; t < v.size(); ++t) {
    Real d = v(t) - v(t - 1);
    if (t == first_t || d < best) best = std::move(d);
  }
  return best;
}

Real min_of(const std::vector<std::pair<std::string, Real>>& parts, std::string* name = nullptr) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].second < parts[k].second) k = i;
  }
  if (name) *name = parts[k].first;
  return parts[k].second;
}

Real square(int k) { return Real(k) * Real(k); }

SetFunction bend(const SetFunction& v, const Real& delta, StructureClass cls) {
  std::vector<Real> t(v.size());
  for (Mask s = 0; s < v.size(); ++s) t[s] = v(s) + delta * square(std::popcount(s));
  return SetFunction(v.n(), std::move(t), cls);
}

}  // namespace

std::string to_string(CCVariant v) {
  switch (v) {
    case CCVariant::SubSub: return "sub-sub";
    case CCVariant::SubSup: return "sub-sup";
    case CCVariant::SupSup: return "sup-sup";
  }
  return "?";
}

CCVariant cc_variant_from_string(const std::string& s) {
  if (s == "sub-sub") return CCVariant::SubSub;
  if (s == "sub-sup") return CCVariant::SubSup;
  if (s == "sup-sup") return CCVariant::SupSup;
  throw ParameterError("unknown variant: " + s);
}

const std::vector<Mask>& half_size_sets(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<Mask>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, subsets_of_size(n, n / 2)).first;
  return it->second;
}

SpecialSetVector::SpecialSetVector(int n) : n_(n) {
  check_even(n);
  bits_.assign(half_size_sets(n).size(), false);
}

SpecialSetVector SpecialSetVector::filled(int n, bool bit) {
  SpecialSetVector v(n);
  std::fill(v.bits_.begin(), v.bits_.end(), bit);
  return v;
}

SpecialSetVector SpecialSetVector::from_bits(int n, std::vector<bool> bits) {
  SpecialSetVector v(n);
  if (bits.size() != v.bits_.size()) {
    throw ParameterError("special-set vector needs " + std::to_string(v.bits_.size()) + " bits");
  }
  v.bits_ = std::move(bits);
  return v;
}

SpecialSetVector SpecialSetVector::from_word(int n, std::uint64_t word) {
  SpecialSetVector v(n);
  for (std::size_t j = 0; j < v.bits_.size() && j < 64; ++j) v.bits_[j] = (word >> j) & 1u;
  return v;
}

SpecialSetVector SpecialSetVector::random(int n, std::mt19937_64& rng) {
  SpecialSetVector v(n);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t j = 0; j < v.bits_.size(); ++j) v.bits_[j] = coin(rng);
  return v;
}

SpecialSetVector SpecialSetVector::singleton(int n, Mask s) {
  SpecialSetVector v(n);
  long pos = v.position(s);
  if (pos < 0) throw ParameterError("not a half-size set: " + ActionSet(n, s).str());
  v.bits_[pos] = true;
  return v;
}

const std::vector<Mask>& SpecialSetVector::sets() const { return half_size_sets(n_); }

long SpecialSetVector::position(Mask s) const {
  const auto& all = sets();
  auto it = std::lower_bound(all.begin(), all.end(), s);
  if (it == all.end() || *it != s) return -1;
  return static_cast<long>(it - all.begin());
}

bool SpecialSetVector::contains(Mask s) const {
  long pos = position(s);
  return pos >= 0 && bits_[pos];
}

SpecialSetVector SpecialSetVector::complement() const {
  SpecialSetVector v = *this;
  v.bits_.flip();
  return v;
}

std::string SpecialSetVector::str() const {
  std::string s;
  for (bool b : bits_) s += b ? '1' : '0';
  return s;
}

bool disjointness(const std::vector<bool>& a, const std::vector<bool>& b) {
  if (a.size() != b.size()) throw ParameterError("disjointness inputs differ in length");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && b[i]) return false;
  }
  return true;
}

bool disjointness(const SpecialSetVector& a, const SpecialSetVector& b) {
  return disjointness(a.bits(), b.bits());
}

std::vector<std::pair<std::string, Real>> delta_bound_terms(CCVariant variant,
                                                            const ContractInstance& original) {
  PrecisionGuard guard(std::max(working_precision(), original.precision_bits));
  const int n = original.n;
  const Real n2 = square(n);
  const Mask top = original.f.size() - 1;
  const auto a = index_critical_values(original);
  const SetFunction& f = original.f;
  const SetFunction& c = original.c;
  auto df = [&](Mask t) { return f(t) - f(t - 1); };
  auto dc = [&](Mask t) { return c(t) - c(t - 1); };

  std::vector<std::pair<std::string, Real>> terms;
  if (variant == CCVariant::SupSup) {
    const Real phi_f = min_step(f, 1);
    bool have = false;
    Real step, inverse;
    bool have_inv = false;
    for (Mask t = 1; t + 1 <= top; ++t) {
      Real s = phi_f * (a[t + 1] - a[t]) / n2;
      if (!have || s < step) step = std::move(s);
      have = true;
      if (a[t].sign() > 0) {
        Real v = (Real(1) / a[t] - Real(1) / a[t + 1]) / (Real(2) * n2) * dc(t + 1) * dc(t) /
                 (c(t + 1) - c(t - 1));
        if (!have_inv || v < inverse) inverse = std::move(v);
        have_inv = true;
      }
    }
    if (!have) throw ParameterError("delta bound needs at least two actions");
    terms.emplace_back("reward-step", std::move(step));
    if (have_inv) terms.emplace_back("inverse-gap", std::move(inverse));
    return terms;
  }
  if (variant == CCVariant::SubSub) {
    terms.emplace_back("cost-step", min_step(c, 1) / n2);
    terms.emplace_back("first", a[1] * df(1) / n2);
  }
  terms.emplace_back("top", (Real(1) - a[top]) * df(top) / n2);
  bool have = false;
  Real gap;
  for (Mask t = 1; t + 1 <= top; ++t) {
    Real v = (a[t + 1] - a[t]) / n2 * df(t) * df(t + 1) / (f(t + 1) - f(t - 1));
    if (!have || v < gap) gap = std::move(v);
    have = true;
  }
  if (have) terms.emplace_back("gap", std::move(gap));
  return terms;
}

Real delta_bound(CCVariant variant, const ContractInstance& original) {
  Real b = min_of(delta_bound_terms(variant, original));
  if (!(b.sign() > 0)) throw IntegrityError("delta bound is not positive: " + b.str(8));
  return b;
}

ContractInstance build_perturbed(CCVariant variant, const ContractInstance& original,
                                 const Real& delta, const Real& delta_max) {
  if (!(delta.sign() > 0) || !(delta < delta_max)) {
    throw BudgetError("delta " + delta.str(8) + " outside (0, " + delta_max.str(8) + ")");
  }
  PrecisionGuard guard(std::max(working_precision(), original.precision_bits));
  const std::string name = original.name + "/" + to_string(variant);
  switch (variant) {
    case CCVariant::SubSub:
      return ContractInstance(original.f, bend(original.c, -delta, StructureClass::Submodular),
                              original.precision_bits, name);
    case CCVariant::SubSup:
      return ContractInstance(original.f, bend(original.c, delta, StructureClass::Supermodular),
                              original.precision_bits, name);
    case CCVariant::SupSup:
      return ContractInstance(bend(original.f, delta, StructureClass::Supermodular), original.c,
                              original.precision_bits, name);
  }
  throw ParameterError("unknown variant");
}

ContractInstance build_perturbed_cost(const ContractInstance& original, const Real& delta) {
  return build_perturbed(CCVariant::SubSub, original, delta,
                         delta_bound(CCVariant::SubSub, original));
}

std::shared_ptr<const CCBase> build_cc_base(CCVariant variant, int n, const CCOptions& opts) {
  check_even(n);
  auto base = std::make_shared<CCBase>();
  base->variant = variant;
  base->n = n;
  base->precision_bits =
      opts.precision_bits > 0 ? opts.precision_bits : std::max(working_precision(), kExtendedPrecision);
  PrecisionGuard guard(base->precision_bits);

  if (variant == CCVariant::SupSup) {
    auto er = equal_revenue_supmod_c(n, base->precision_bits);
    base->original = er.instance;
    base->sigma = opts.sigma ? *opts.sigma : sigma_bound_supply(er).value;
  } else {
    auto er = equal_revenue_submod_f(n, base->precision_bits);
    base->original = er.instance;
    base->sigma = opts.sigma ? *opts.sigma : sigma_bound_demand(er).value;
  }
  if (!(base->sigma.sign() > 0)) throw ParameterError("sparseness slack must be positive");
  base->alpha = index_critical_values(base->original);

  const Real n2 = square(n);
  base->delta_bound = delta_bound(variant, base->original);
  base->delta_cap = base->sigma / (Real(2) * n2);
  const Real delta_max = min(base->delta_bound, base->delta_cap);
  base->delta = opts.delta ? *opts.delta : delta_max / Real(2);
  base->perturbed = build_perturbed(variant, base->original, base->delta, delta_max);

  const Mask size = universe_size(n);
  const Mask top = size - 1;
  auto table = enumerate_breakpoints(base->perturbed);
  std::size_t nonempty = 0;
  for (const auto& row : table.rows) nonempty += row.set.mask() != 0;
  if (nonempty != top) {
    throw IntegrityError("perturbed instance has " + std::to_string(nonempty) + " breakpoints, expected " +
                         std::to_string(top));
  }
  base->alpha_perturbed = index_critical_values(base->perturbed);
  if (!(base->alpha_perturbed[top] < Real(1))) throw IntegrityError("top perturbed critical value >= 1");

  const SetFunction& f = base->original.f;
  const SetFunction& fp = base->perturbed.f;
  const SetFunction& cp = base->perturbed.c;
  const Real one_minus_top = Real(1) - base->alpha[top];
  auto& parts = base->z.parts;
  if (variant == CCVariant::SupSup) {
    const Real phi_f = min(Real(1) / Real(2), min_step(f, 1));
    // S_1 costs nothing, so cost steps start at t = 2.
    parts.emplace_back("phi_cost", min_step(cp, 2));
    parts.emplace_back("psi_cost", increasing_gap(cp));
    parts.emplace_back("phi_reward", phi_f);
    parts.emplace_back("phi_reward_perturbed", min_step(fp, 1));
    parts.emplace_back("psi_reward_perturbed", increasing_gap(fp));
    parts.emplace_back("zeta", base->delta * one_minus_top * phi_f /
                                   (Real(16) * n2 * (f(top) + Real(1))));
  } else {
    const Real phi_f = min_step(f, 1);
    parts.emplace_back("phi_cost", min_step(cp, 1));
    parts.emplace_back("psi_cost", variant == CCVariant::SubSub ? diminishing_gap(cp)
                                                                : increasing_gap(cp));
    parts.emplace_back("phi_reward", phi_f);
    parts.emplace_back("psi_reward", diminishing_gap(f));
    parts.emplace_back("zeta", base->delta * one_minus_top * phi_f / (Real(16) * n2 * f(top)));
  }
  parts.emplace_back("sigma/2", base->sigma / Real(2));
  for (const auto& [name, v] : parts) {
    if (!(v.sign() > 0)) throw IntegrityError("z component " + name + " is not positive: " + v.str(8));
  }
  base->z.minimum = min_of(parts, &base->z.binding);
  base->z.z = pow2(base->z.minimum.exponent() - 1);
  base->revenue_halfwidth = base->z.z * one_minus_top / Real(16);
  return base;
}

std::vector<Mask> covering_half_index(int n) {
  check_even(n);
  const auto& halves = half_size_sets(n);
  std::vector<Mask> h(universe_size(n));
  for (Mask t = 0; t < h.size(); ++t) {
    h[t] = t;
    if (std::popcount(t) >= n / 2) continue;
    for (Mask s : halves) {
      if ((t & ~s) == 0) {
        h[t] = s;
        break;
      }
    }
  }
  return h;
}

AugmentedCCInstance build_augmented(std::shared_ptr<const CCBase> base, const SpecialSetVector& x_f,
                                    const SpecialSetVector& x_c, bool verify) {
  const int n = base->n;
  if (x_f.n() != n || x_c.n() != n) throw ParameterError("special-set vectors sized for another n");
  PrecisionGuard guard(base->precision_bits);
  AugmentedCCInstance aug;
  aug.base = base;
  aug.x_f = x_f;
  aug.x_c = x_c;
  const CCVariant v = base->variant;
  const int half = n / 2;
  const Mask size = universe_size(n);
  const Real& z = base->z.z;
  const Real z2 = z / Real(2), z4 = z / Real(4), z8 = z / Real(8);
  const auto& at = base->alpha_perturbed;
  if (v == CCVariant::SubSup) aug.h = covering_half_index(n);

  aug.reward_marginal.resize(size);
  aug.cost_marginal.resize(size);
  for (Mask t = 0; t < size; ++t) {
    const int k = std::popcount(t);
    const bool in_f = k == half && x_f.contains(t);
    const bool in_c = k == half && x_c.contains(t);
    Real rf, rc;
    if (v == CCVariant::SupSup) {
      rf = (k > half || in_f) ? z4 : Real(0);
      if (k < half) rc = at[1] * z8;
      else if (in_c) rc = at[t] * z4;
      else rc = z2;
    } else {
      rf = (k < half || in_f) ? z4 : Real(0);
      if (v == CCVariant::SubSub) {
        if (k > half) rc = at[1] * z8;
        else if (in_c) rc = at[t] * z4;
        else rc = z2;
      } else {
        if (k < half) rc = at[aug.h[t]] * z4;
        else if (in_c) rc = at[t] * z4;
        else rc = z2;
      }
    }
    aug.reward_marginal[t] = std::move(rf);
    aug.cost_marginal[t] = std::move(rc);
  }

  const SetFunction& f = base->perturbed.f;
  const SetFunction& c = base->perturbed.c;
  // Enough bits that f(S) + marginal and its difference back are exact.
  long low = 0;
  bool have_low = false;
  int bits = base->precision_bits;
  for (Mask t = 0; t < size; ++t) bits = std::max({bits, f(t).precision(), c(t).precision()});
  for (const auto* col : {&aug.reward_marginal, &aug.cost_marginal}) {
    for (const Real& m : *col) {
      bits = std::max(bits, m.precision());
      if (m.is_zero()) continue;
      if (!have_low || m.exponent() < low) low = m.exponent();
      have_low = true;
    }
  }
  const long high = std::max(f(size - 1).exponent(), c(size - 1).exponent());
  const long span = have_low ? high - low : 0;
  PrecisionGuard wide(bits + static_cast<int>(std::max(0L, span)) + 4);
  std::vector<Real> ft(2 * size), ct(2 * size);
  for (Mask t = 0; t < size; ++t) {
    // Stored at the widened precision so later differences stay exact.
    ft[t] = f(t).with_precision(working_precision());
    ct[t] = c(t).with_precision(working_precision());
    ft[t | size] = f(t) + aug.reward_marginal[t];
    ct[t | size] = c(t) + aug.cost_marginal[t];
  }
  const StructureClass fcls =
      v == CCVariant::SupSup ? StructureClass::Supermodular : StructureClass::Submodular;
  const StructureClass ccls =
      v == CCVariant::SubSub ? StructureClass::Submodular : StructureClass::Supermodular;
  SetFunction fh(n + 1, std::move(ft), fcls);
  SetFunction ch(n + 1, std::move(ct), ccls);
  if (verify) {
    aug.reward_report = verify_structure(fh, fcls);
    aug.cost_report = verify_structure(ch, ccls);
    if (!aug.reward_report.ok() || !aug.cost_report.ok()) {
      throw IntegrityError("augmented instance fails its structure checks:\n" +
                           aug.reward_report.summary() + "\n" + aug.cost_report.summary());
    }
  }
  aug.instance = ContractInstance(std::move(fh), std::move(ch), working_precision(),
                                  "cc-" + to_string(v));
  return aug;
}

AugmentedCCInstance build_augmented(CCVariant variant, int n, const SpecialSetVector& x_f,
                                    const SpecialSetVector& x_c, const CCOptions& opts) {
  return build_augmented(build_cc_base(variant, n, opts), x_f, x_c);
}

ReductionOutcome run_reduction(const AugmentedCCInstance& aug) {
  PrecisionGuard guard(aug.base->precision_bits);
  ReductionOutcome out;
  out.disjoint = disjointness(aug.x_f, aug.x_c);
  out.solution = optimal_contract(aug.instance);
  out.extra_in_optimum = (out.solution.set_star.mask() & aug.extra_bit()) != 0;
  out.matches = out.extra_in_optimum == !out.disjoint;
  return out;
}

bool check_reduction(const AugmentedCCInstance& aug) {
  auto out = run_reduction(aug);
  if (!out.matches) {
    throw ReductionFailure(to_string(aug.variant()) + " reduction mismatch: x_f=" + aug.x_f.str() +
                           " x_c=" + aug.x_c.str() + " optimum " + out.solution.set_star.str());
  }
  return out.extra_in_optimum;
}

bool check_reduction(CCVariant variant, int n, const SpecialSetVector& x_f,
                     const SpecialSetVector& x_c) {
  return check_reduction(build_augmented(variant, n, x_f, x_c));
}

CCInvariantReport check_revenue_sandwich(const CCBase& base) {
  PrecisionGuard guard(base.precision_bits);
  CCInvariantReport rep;
  rep.halfwidth = base.revenue_halfwidth;
  rep.max_deviation = Real(0);
  for (const auto& row : enumerate_breakpoints(base.perturbed).rows) {
    if (row.set.mask() == 0) continue;
    Real dev = abs(row.principal_utility - Real(1));
    if (dev > rep.max_deviation) rep.max_deviation = dev;
  }
  rep.sandwich_ok = rep.max_deviation <= rep.halfwidth;
  return rep;
}

std::vector<Real> probe_contracts(const AugmentedCCInstance& aug, int alpha_grid) {
  PrecisionGuard guard(aug.base->precision_bits);
  std::vector<Real> out;
  for (int k = 0; k <= alpha_grid; ++k) out.push_back(Real(k) / Real(alpha_grid));
  for (const auto& row : enumerate_breakpoints(aug.instance).rows) out.push_back(row.alpha);
  return out;
}

CCInvariantReport check_cc_invariants(const AugmentedCCInstance& aug,
                                      const ReductionOutcome& outcome, int alpha_grid) {
  const CCBase& base = *aug.base;
  CCInvariantReport rep = check_revenue_sandwich(base);
  PrecisionGuard guard(base.precision_bits);

  rep.optimum_utility = outcome.solution.principal_utility;
  rep.margin_applicable = !outcome.disjoint;
  if (rep.margin_applicable) {
    rep.margin_ok = outcome.extra_in_optimum &&
                    outcome.solution.principal_utility > Real(1) + rep.halfwidth;
  }

  const Real slack = base.sigma / Real(2);
  const std::size_t bound = sparse_size_bound(base.n);
  for (const Real& alpha : probe_contracts(aug, alpha_grid)) {
    Mask s = best_response_mask(aug.instance.f, aug.instance.c, alpha);
    Mask projected = s & ~aug.extra_bit();
    auto br = approx_best_response(base.perturbed, alpha, slack);
    ++rep.projection_checked;
    rep.max_br_size = std::max(rep.max_br_size, br.size());
    if (!br.contains(projected)) {
      rep.projection_ok = false;
      if (rep.projection_failures.size() < 8) {
        rep.projection_failures.push_back("alpha=" + alpha.str(12) + " best response " +
                                          ActionSet(base.n + 1, s).str());
      }
    }
  }
  rep.sparse_ok = rep.max_br_size <= bound;
  return rep;
}

ContractInstance inapprox_table(CCVariant kind, int n, const SpecialSetVector& x_f,
                                const SpecialSetVector& x_c) {
  check_even(n);
  if (n < 4) throw ParameterError("inapproximability tables need n >= 4");
  if (kind == CCVariant::SubSup) throw ParameterError("no inapproximability table for sub-sup");
  if (x_f.n() != n || x_c.n() != n) throw ParameterError("special-set vectors sized for another n");
  const int half = n / 2;
  const Mask size = universe_size(n);
  std::vector<Real> ft(size), ct(size);
  for (Mask t = 0; t < size; ++t) {
    const int k = std::popcount(t);
    long fv, cv;
    if (kind == CCVariant::SubSub) {
      if (k < half) fv = cv = 8L * k;
      else if (k > half) fv = 2L * k + 3L * n - 3, cv = 2L * k + 3L * n - 2;
      else {
        fv = x_f.contains(t) ? 4L * n - 3 : 4L * n - 4;
        cv = x_c.contains(t) ? 4L * n - 4 : 4L * n - 2;
      }
    } else {
      if (k < half) fv = cv = 2L * k;
      else if (k > half) fv = 6L * k - 2L * n - 1, cv = 6L * k - 2L * n;
      else {
        fv = x_f.contains(t) ? n + 1L : static_cast<long>(n);
        cv = x_c.contains(t) ? static_cast<long>(n) : n + 2L;
      }
    }
    ft[t] = Real(fv);
    ct[t] = Real(cv);
  }
  const StructureClass cls =
      kind == CCVariant::SubSub ? StructureClass::Submodular : StructureClass::Supermodular;
  return ContractInstance(SetFunction(n, std::move(ft), cls), SetFunction(n, std::move(ct), cls),
                          kDefaultPrecision, "inapprox-" + to_string(kind));
}

std::vector<Mask> positive_surplus_sets(const ContractInstance& inst) {
  std::vector<Mask> out;
  for (Mask t = 0; t < inst.f.size(); ++t) {
    if ((inst.f(t) - inst.c(t)).sign() > 0) out.push_back(t);
  }
  return out;
}

std::vector<Mask> intersection_sets(const SpecialSetVector& x_f, const SpecialSetVector& x_c) {
  if (x_f.n() != x_c.n()) throw ParameterError("special-set vectors sized for different n");
  std::vector<Mask> out;
  const auto& sets = x_f.sets();
  for (std::size_t j = 0; j < sets.size(); ++j) {
    if (x_f[j] && x_c[j]) out.push_back(sets[j]);
  }
  return out;
}

}  // namespace contracts
