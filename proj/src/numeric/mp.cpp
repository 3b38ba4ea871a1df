#include "qmock/numeric/mp.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace qmock::numeric {

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(double v, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(const mpq_class& v, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& o) {
  mpfr_init2(v_, o.precision());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

double Real::log2Abs() const {
  if (mpfr_zero_p(v_)) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

std::string Real::toString(int digits) const {
  if (mpfr_zero_p(v_)) return "0";
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Re", digits - 1, v_);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

Real Real::pi(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::operator-() const {
  Real r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

namespace {
mpfr_prec_t wider(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }
}  // namespace

Real operator+(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real Real::abs() const {
  Real r(precision());
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

Real Real::sqrt() const {
  Real r(precision());
  mpfr_sqrt(r.v_, v_, MPFR_RNDN);
  return r;
}

Real ldexpReal(long e, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_set_ui_2exp(r.raw(), 1, e, MPFR_RNDN);
  return r;
}

// ---- Complex ---------------------------------------------------------------

Complex Complex::rootOfUnity(long j, long m, mpfr_prec_t bits) {
  // exact values where they exist keep e.g. i^2 == -1 bit-exact
  long r = ((j % m) + m) % m;
  if (r == 0) return Complex(1, 0, bits);
  if (2 * r == m) return Complex(-1, 0, bits);
  if (4 * r == m) return Complex(0, 1, bits);
  if (4 * r == 3 * m) return Complex(0, -1, bits);
  Real theta = Real::pi(bits + 16) * Real(mpq_class(2 * r, m), bits + 16);
  Real c(bits), s(bits);
  mpfr_sin_cos(s.raw(), c.raw(), theta.raw(), MPFR_RNDN);
  return Complex(c, s);
}

Complex Complex::polar(const Real& r, const Real& theta) {
  Real c(theta.precision()), s(theta.precision());
  mpfr_sin_cos(s.raw(), c.raw(), theta.raw(), MPFR_RNDN);
  return Complex(r * c, r * s);
}

Real Complex::abs() const {
  Real r(precision());
  mpfr_hypot(r.raw(), re_.raw(), im_.raw(), MPFR_RNDN);
  return r;
}

Real Complex::norm() const { return re_ * re_ + im_ * im_; }

Real Complex::arg() const {
  Real r(precision());
  mpfr_atan2(r.raw(), im_.raw(), re_.raw(), MPFR_RNDN);
  return r;
}

double Complex::log2Abs() const {
  if (isZero()) return -std::numeric_limits<double>::infinity();
  double a = re_.log2Abs(), b = im_.log2Abs();
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + 0.5 * std::log2(1.0 + std::exp2(2.0 * (lo - hi)));
}

Complex Complex::inverse() const {
  Real n = norm();
  return Complex(re_ / n, -im_ / n);
}

Complex Complex::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Complex result(1, 0, precision());
  Complex base = *this;
  unsigned long u = static_cast<unsigned long>(e);
  while (u) {
    if (u & 1) result *= base;
    u >>= 1;
    if (u) base *= base;
  }
  return result;
}

Complex Complex::log() const {
  Real m = abs();
  Real lm(precision());
  mpfr_log(lm.raw(), m.raw(), MPFR_RNDN);
  return Complex(lm, arg());
}

Complex Complex::exp() const {
  Real er(precision());
  mpfr_exp(er.raw(), re_.raw(), MPFR_RNDN);
  return polar(er, im_);
}

Complex Complex::pow(const mpq_class& e) const {
  if (e.get_den() == 1 && e.get_num().fits_slong_p()) return pow(e.get_num().get_si());
  if (isZero()) return *this;
  Complex l = log();
  Real k(e, precision());
  return Complex(l.re_ * k, l.im_ * k).exp();
}

Complex& Complex::operator+=(const Complex& o) {
  re_ = re_ + o.re_;
  im_ = im_ + o.im_;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re_ = re_ - o.re_;
  im_ = im_ - o.im_;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  Real r = re_ * o.re_ - im_ * o.im_;
  Real i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

std::string Complex::toString(int digits) const {
  if (im_.isZero()) return re_.toString(digits);
  std::string im = im_.toString(digits);
  if (re_.isZero()) return im + "i";
  if (im[0] != '-') im = "+" + im;
  return re_.toString(digits) + im + "i";
}

}  // namespace qmock::numeric
