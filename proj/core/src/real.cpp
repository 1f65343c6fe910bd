#include "contracts/real.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace contracts {
namespace {

thread_local int g_precision = kDefaultPrecision;

mpfr_prec_t joint(const Real& a, const Real& b) {
  return std::max({static_cast<mpfr_prec_t>(g_precision), mpfr_get_prec(a.raw()),
                   mpfr_get_prec(b.raw())});
}

}  // namespace

int working_precision() { return g_precision; }

void set_working_precision(int bits) {
  if (bits < MPFR_PREC_MIN || bits > 1 << 20) throw std::invalid_argument("precision out of range");
  g_precision = bits;
}

PrecisionGuard::PrecisionGuard(int bits) : saved_(g_precision) { set_working_precision(bits); }
PrecisionGuard::~PrecisionGuard() { g_precision = saved_; }

Real::Real(Uninit, int prec) { mpfr_init2(v_, prec); }

Real::Real() : Real(Uninit{}, g_precision) { mpfr_set_zero(v_, 1); }
Real::Real(int v) : Real(Uninit{}, g_precision) { mpfr_set_si(v_, v, MPFR_RNDN); }
Real::Real(long v) : Real(Uninit{}, g_precision) { mpfr_set_si(v_, v, MPFR_RNDN); }
Real::Real(long long v) : Real(Uninit{}, g_precision) {
  static_assert(sizeof(long) == sizeof(long long), "LP64 expected");
  mpfr_set_si(v_, static_cast<long>(v), MPFR_RNDN);
}
Real::Real(unsigned long v) : Real(Uninit{}, g_precision) { mpfr_set_ui(v_, v, MPFR_RNDN); }
Real::Real(double v) : Real(Uninit{}, std::max(g_precision, 53)) { mpfr_set_d(v_, v, MPFR_RNDN); }
Real::Real(const mpq_class& q) : Real(Uninit{}, g_precision) {
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}
Real::Real(const std::string& s) : Real(Uninit{}, g_precision) {
  if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("not a number: " + s);
  }
}
Real::Real(const Real& o) : Real(Uninit{}, static_cast<int>(mpfr_get_prec(o.v_))) {
  mpfr_set(v_, o.v_, MPFR_RNDN);
}
Real::Real(Real&& o) noexcept : Real(Uninit{}, MPFR_PREC_MIN) { mpfr_swap(v_, o.v_); }

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}
Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}
Real::~Real() { mpfr_clear(v_); }

Real Real::with_precision(int bits) const {
  Real r(Uninit{}, bits);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

double Real::to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

std::string Real::str(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (digits <= 0) digits = static_cast<int>(mpfr_get_prec(v_) * 0.30103) + 1;
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::string Real::exact() const {
  if (mpfr_zero_p(v_)) return "0";
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
  // strip trailing zero bits
  mp_bitcnt_t tz = mpz_scan1(m.get_mpz_t(), 0);
  m >>= tz;
  e += static_cast<mpfr_exp_t>(tz);
  return m.get_str() + "p" + std::to_string(e);
}

Real Real::parse_exact(const std::string& s) {
  auto p = s.find('p');
  if (p == std::string::npos) return Real(s);
  mpz_class m(s.substr(0, p));
  long e = std::stol(s.substr(p + 1));
  size_t bits = std::max<size_t>(mpz_sizeinbase(m.get_mpz_t(), 2), 2);
  Real r(Uninit{}, std::max<int>(g_precision, static_cast<int>(bits)));
  mpfr_set_z_2exp(r.v_, m.get_mpz_t(), e, MPFR_RNDN);
  return r;
}

mpq_class Real::to_rational() const {
  if (mpfr_zero_p(v_)) return mpq_class(0);
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
  mpq_class q(m);
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  q.canonicalize();
  return q;
}

Real& Real::operator+=(const Real& o) { return *this = *this + o; }
Real& Real::operator-=(const Real& o) { return *this = *this - o; }
Real& Real::operator*=(const Real& o) { return *this = *this * o; }
Real& Real::operator/=(const Real& o) { return *this = *this / o; }

Real Real::operator-() const {
  Real r(Uninit{}, static_cast<int>(mpfr_get_prec(v_)));
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

Real operator+(const Real& a, const Real& b) {
  Real r(Real::Uninit{}, static_cast<int>(joint(a, b)));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r(Real::Uninit{}, static_cast<int>(joint(a, b)));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r(Real::Uninit{}, static_cast<int>(joint(a, b)));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  Real r(Real::Uninit{}, static_cast<int>(joint(a, b)));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real sqrt(const Real& a) {
  Real r(Real::Uninit{}, static_cast<int>(joint(a, a)));
  mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
  return r;
}
Real abs(const Real& a) {
  Real r(Real::Uninit{}, static_cast<int>(mpfr_get_prec(a.v_)));
  mpfr_abs(r.v_, a.v_, MPFR_RNDN);
  return r;
}
Real log(const Real& a) {
  Real r(Real::Uninit{}, static_cast<int>(joint(a, a)));
  mpfr_log(r.v_, a.v_, MPFR_RNDN);
  return r;
}
Real pow(const Real& a, long e) {
  Real r(Real::Uninit{}, static_cast<int>(joint(a, a)));
  mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
  return r;
}
Real ldexp(const Real& a, long e) {
  Real r(Real::Uninit{}, static_cast<int>(mpfr_get_prec(a.v_)));
  mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
  return r;
}
Real floor(const Real& a) {
  Real r(Real::Uninit{}, static_cast<int>(mpfr_get_prec(a.v_)));
  mpfr_floor(r.v_, a.v_);
  return r;
}
Real ceil(const Real& a) {
  Real r(Real::Uninit{}, static_cast<int>(mpfr_get_prec(a.v_)));
  mpfr_ceil(r.v_, a.v_);
  return r;
}

Real min(const Real& a, const Real& b) { return b < a ? b : a; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real pow2(long e) { return ldexp(Real(1), e); }

std::ostream& operator<<(std::ostream& os, const Real& r) {
  return os << r.str(static_cast<int>(os.precision()));
}

}  // namespace contracts
