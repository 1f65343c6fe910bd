#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "contracts/errors.hpp"
#include "contracts/oracle.hpp"
#include "contracts/solver.hpp"

namespace contracts {

// Submodular reward, additive cost c_i = 2^{i-1}; every set S_t is incentivized
// at alpha_t and each such contract leaves the principal exactly 1.
struct EqualRevenueSubmodF {
  int n = 0;
  int precision_bits = kDefaultPrecision;
  std::vector<Real> alpha;  // alpha_0..alpha_{2^n-1}
  std::vector<Real> f;      // f_t = 1 / (1 - alpha_t)
  ContractInstance instance;
};

// Additive reward f_i = 2^{i-1}, supermodular cost c_t = c_{t-1} + (t-1)/t.
struct EqualRevenueSupmodC {
  int n = 0;
  std::vector<mpq_class> cost;   // exact c_t
  std::vector<mpq_class> alpha;  // exact (t-1)/t, alpha_0 = 0
  ContractInstance instance;
};

// Next critical value of the submodular-reward recurrence.
Real next_equal_revenue_alpha(const Real& a);
// alpha_0..alpha_{count-1}.
std::vector<Real> equal_revenue_alphas(std::size_t count);

// Bits the submodular-reward recurrence needs at size n.
int recommended_precision(int n);

EqualRevenueSubmodF equal_revenue_submod_f(int n, int precision_bits = 0);
ContractInstance build_equal_revenue_submod_f(int n, int precision_bits = 0);

EqualRevenueSupmodC equal_revenue_supmod_c(int n, int precision_bits = 0);
ContractInstance build_equal_revenue_supmod_c(int n, int precision_bits = 0);

struct EqualRevenueReport {
  bool ok = false;
  std::size_t nonzero_breakpoints = 0;
  std::size_t expected = 0;
  Real max_deviation;
  std::size_t worst_row = 0;
  std::string summary() const;
};

EqualRevenueReport verify_equal_revenue(const ContractInstance& inst, const Real& tol);
EqualRevenueReport verify_equal_revenue(const ContractInstance& inst, const BreakpointTable& table,
                                        const Real& tol);
// Exact rational check of (1 - alpha_t) f(S_t) = 1 and of the critical values.
bool verify_equal_revenue_exact(const EqualRevenueSupmodC& inst);

struct RoundedInstance {
  int n = 0;
  int kappa = 0;
  int precision_bits = 0;
  std::vector<Real> alpha;          // unrounded
  std::vector<Real> alpha_rounded;  // floor to the 2^-kappa grid
  std::vector<Real> f_rounded;      // 1 / (1 - alpha_rounded)
  std::vector<Real> beta;           // critical values of the rounded instance
  std::vector<Real> error;          // alpha - alpha_rounded
  ContractInstance instance;
};

struct RoundingCollision : IntegrityError {
  using IntegrityError::IntegrityError;
};

int default_kappa(int n);
// Revenue slack allowed after rounding on a 2^-kappa grid.
Real rounded_revenue_tolerance(int n, int kappa);
RoundedInstance build_rounded(int n, int kappa = 0);

struct GapBoundReport {
  bool ok = true;
  std::size_t checked = 0;
  std::vector<std::string> failures;
  Real min_one_minus_alpha;
  Real min_gap;
};

GapBoundReport check_gap_bounds(int n, int precision_bits = 0);

}  // namespace contracts
