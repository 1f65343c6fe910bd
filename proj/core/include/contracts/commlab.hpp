#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "contracts/errors.hpp"
#include "contracts/oracle.hpp"
#include "contracts/solver.hpp"
#include "contracts/structure.hpp"

namespace contracts {

// Which modularity pair the reduction targets (reward / cost).
enum class CCVariant { SubSub, SubSup, SupSup };

std::string to_string(CCVariant v);
CCVariant cc_variant_from_string(const std::string& s);

// One bit per subset of size n/2, in increasing subset-index order.
class SpecialSetVector {
 public:
  SpecialSetVector() = default;
  explicit SpecialSetVector(int n);  // all zero

  static SpecialSetVector filled(int n, bool bit);
  static SpecialSetVector from_bits(int n, std::vector<bool> bits);
  // Bit j of word is position j (positions < 64).
  static SpecialSetVector from_word(int n, std::uint64_t word);
  static SpecialSetVector random(int n, std::mt19937_64& rng);
  // Indicator of a single half-size set.
  static SpecialSetVector singleton(int n, Mask s);

  int n() const { return n_; }
  std::size_t size() const { return bits_.size(); }
  const std::vector<Mask>& sets() const;
  const std::vector<bool>& bits() const { return bits_; }
  bool operator[](std::size_t pos) const { return bits_.at(pos); }
  void set(std::size_t pos, bool bit) { bits_.at(pos) = bit; }

  // Position of a half-size set, or -1.
  long position(Mask s) const;
  // s has size n/2 and its bit is set.
  bool contains(Mask s) const;

  SpecialSetVector complement() const;
  std::string str() const;

 private:
  int n_ = 0;
  std::vector<bool> bits_;
};

// All subsets of [n] of size n/2, increasing index.
const std::vector<Mask>& half_size_sets(int n);

// True iff the vectors share no set bit.
bool disjointness(const std::vector<bool>& a, const std::vector<bool>& b);
bool disjointness(const SpecialSetVector& a, const SpecialSetVector& b);

struct CCOptions {
  int precision_bits = 0;         // 0: max(working, 256)
  std::optional<Real> delta;      // default: half the capped bound
  std::optional<Real> sigma;      // default: the sparse module's bound for the base
};

// Named positive quantities; z is the largest power of two not above their
// minimum, which keeps every augmented marginal exactly representable.
struct ZComponents {
  std::vector<std::pair<std::string, Real>> parts;
  Real minimum;
  Real z;
  std::string binding;
};

// The n-action part shared by every augmented instance of one variant.
struct CCBase {
  CCVariant variant = CCVariant::SubSub;
  int n = 0;
  int precision_bits = 0;
  ContractInstance original;        // equal-revenue instance
  std::vector<Real> alpha;          // its critical values by subset index
  Real sigma;                       // sparseness slack of the original
  Real delta_bound;                 // perturbation bound from the construction
  Real delta_cap;                   // sigma / (2 n^2), for sparse best response
  Real delta;
  ContractInstance perturbed;       // reward or cost bent by delta |S|^2
  std::vector<Real> alpha_perturbed;
  ZComponents z;
  Real revenue_halfwidth;           // z (1 - alpha_top) / 16
};

// Components of the delta bound, by name.
std::vector<std::pair<std::string, Real>> delta_bound_terms(CCVariant variant,
                                                            const ContractInstance& original);
Real delta_bound(CCVariant variant, const ContractInstance& original);

// c - delta |S|^2 (SubSub), c + delta |S|^2 (SubSup), or f + delta |S|^2 (SupSup).
ContractInstance build_perturbed(CCVariant variant, const ContractInstance& original,
                                 const Real& delta, const Real& delta_max);
// Sub-sub shorthand with the construction's own bound.
ContractInstance build_perturbed_cost(const ContractInstance& original, const Real& delta);

std::shared_ptr<const CCBase> build_cc_base(CCVariant variant, int n, const CCOptions& opts = {});

struct AugmentedCCInstance {
  std::shared_ptr<const CCBase> base;
  SpecialSetVector x_f;
  SpecialSetVector x_c;
  std::vector<Real> reward_marginal;  // f_hat(n+1 | S), S over [n]
  std::vector<Real> cost_marginal;    // c_hat(n+1 | S)
  std::vector<Mask> h;                // SubSup only: the covering half-size index
  ContractInstance instance;          // n + 1 actions
  StructureReport reward_report;
  StructureReport cost_report;

  CCVariant variant() const { return base->variant; }
  int n() const { return base->n; }
  Mask extra_bit() const { return Mask{1} << base->n; }
};

// Throws IntegrityError if a structure check fails and verify is set.
AugmentedCCInstance build_augmented(std::shared_ptr<const CCBase> base, const SpecialSetVector& x_f,
                                    const SpecialSetVector& x_c, bool verify = true);
AugmentedCCInstance build_augmented(CCVariant variant, int n, const SpecialSetVector& x_f,
                                    const SpecialSetVector& x_c, const CCOptions& opts = {});

// Minimal index covering S_t with a half-size superset; t itself when |S_t| >= n/2.
std::vector<Mask> covering_half_index(int n);

struct ReductionFailure : IntegrityError {
  using IntegrityError::IntegrityError;
};

struct ReductionOutcome {
  bool disjoint = true;
  bool extra_in_optimum = false;
  bool matches = false;
  ContractSolution solution;
};

ReductionOutcome run_reduction(const AugmentedCCInstance& aug);
// Throws ReductionFailure on mismatch; returns whether action n+1 is in the optimum.
bool check_reduction(const AugmentedCCInstance& aug);
bool check_reduction(CCVariant variant, int n, const SpecialSetVector& x_f,
                     const SpecialSetVector& x_c);

struct CCInvariantReport {
  // Every nonempty breakpoint of the perturbed n-action instance pays 1 +- halfwidth.
  bool sandwich_ok = true;
  Real halfwidth;
  Real max_deviation;
  // With an intersection, the optimum beats 1 + halfwidth.
  bool margin_applicable = false;
  bool margin_ok = true;
  Real optimum_utility;
  // Best response minus action n+1 lies in the approximate best response of
  // the perturbed instance.
  bool projection_ok = true;
  std::size_t projection_checked = 0;
  std::vector<std::string> projection_failures;
  // |BR^{sigma/2}(alpha)| <= 2(n+1)(n+2).
  bool sparse_ok = true;
  std::size_t max_br_size = 0;

  bool ok() const { return sandwich_ok && margin_ok && projection_ok && sparse_ok; }
};

// The sandwich depends on the base alone.
CCInvariantReport check_revenue_sandwich(const CCBase& base);
CCInvariantReport check_cc_invariants(const AugmentedCCInstance& aug,
                                      const ReductionOutcome& outcome, int alpha_grid = 64);

// Contracts used to probe best responses: a uniform grid plus every
// breakpoint of the augmented instance.
std::vector<Real> probe_contracts(const AugmentedCCInstance& aug, int alpha_grid);

// Integer-valued tables from the inapproximability appendix (SubSub or SupSup).
ContractInstance inapprox_table(CCVariant kind, int n, const SpecialSetVector& x_f,
                                const SpecialSetVector& x_c);
// Subsets with f(S) - c(S) > 0.
std::vector<Mask> positive_surplus_sets(const ContractInstance& inst);
// Half-size sets in both vectors.
std::vector<Mask> intersection_sets(const SpecialSetVector& x_f, const SpecialSetVector& x_c);

}  // namespace contracts
