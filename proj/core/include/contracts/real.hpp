#pragma once

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace contracts {

inline constexpr int kDefaultPrecision = 53;
inline constexpr int kExtendedPrecision = 256;

// Working precision (mantissa bits) used for newly created values on this thread.
int working_precision();
void set_working_precision(int bits);

class PrecisionGuard {
 public:
  explicit PrecisionGuard(int bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  int saved_;
};

// Arbitrary-precision binary float. Results of binary operations carry the
// larger of the operand precisions and the thread's working precision.
class Real {
 public:
  Real();
  Real(int v);
  Real(long v);
  Real(long long v);
  Real(unsigned long v);
  Real(double v);
  Real(const mpq_class& q);
  explicit Real(const std::string& s);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  int precision() const { return static_cast<int>(mpfr_get_prec(v_)); }
  Real with_precision(int bits) const;

  double to_double() const;
  std::string str(int digits = 0) const;
  // Exact binary representation "m*2^e" that round-trips.
  std::string exact() const;
  static Real parse_exact(const std::string& s);
  // Exact value as a rational (the representation is dyadic).
  mpq_class to_rational() const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  // e with |x| = m 2^e, 1/2 <= m < 1; x must be nonzero.
  long exponent() const { return static_cast<long>(mpfr_get_exp(v_)); }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real operator-() const;

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::strong_ordering operator<=>(const Real& a, const Real& b) {
    int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend Real sqrt(const Real& a);
  friend Real abs(const Real& a);
  friend Real log(const Real& a);
  friend Real pow(const Real& a, long e);
  friend Real ldexp(const Real& a, long e);  // a * 2^e, exact
  friend Real floor(const Real& a);
  friend Real ceil(const Real& a);

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

 private:
  struct Uninit {};
  Real(Uninit, int prec);
  mpfr_t v_;
};

Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

// 2^e at the working precision.
Real pow2(long e);

std::ostream& operator<<(std::ostream& os, const Real& r);

}  // namespace contracts
