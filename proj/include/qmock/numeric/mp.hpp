#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

#include "qmock/gaussian.hpp"

namespace qmock::numeric {

// Owning wrapper around mpfr_t. Precision travels with the value; results of binary
// operations take the larger operand precision.
class Real {
 public:
  explicit Real(mpfr_prec_t bits = 212);
  Real(double v, mpfr_prec_t bits);
  Real(const mpq_class& v, mpfr_prec_t bits);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  bool isZero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double toDouble() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // log2 |x| without overflow; -inf for zero
  double log2Abs() const;
  // fixed-point decimal with `digits` significant digits, e.g. "-1.2500000000e-3"
  std::string toString(int digits) const;

  static Real pi(mpfr_prec_t bits);

  Real operator-() const;
  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

  Real abs() const;
  Real sqrt() const;

 private:
  mpfr_t v_;
};

// 2^e at the given precision
Real ldexpReal(long e, mpfr_prec_t bits);

class Complex {
 public:
  explicit Complex(mpfr_prec_t bits = 212) : re_(bits), im_(bits) {}
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  Complex(double re, double im, mpfr_prec_t bits) : re_(re, bits), im_(im, bits) {}
  Complex(const Gaussian& g, mpfr_prec_t bits) : re_(g.re(), bits), im_(g.im(), bits) {}

  // exp(2 pi i j / m)
  static Complex rootOfUnity(long j, long m, mpfr_prec_t bits);
  static Complex polar(const Real& r, const Real& theta);

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  mpfr_prec_t precision() const { return re_.precision(); }

  bool isZero() const { return re_.isZero() && im_.isZero(); }
  Real abs() const;
  Real norm() const;  // |z|^2
  Real arg() const;
  double log2Abs() const;
  Complex conj() const { return Complex(re_, -im_); }
  Complex inverse() const;
  Complex pow(long e) const;
  // principal branch exp(e log z)
  Complex pow(const mpq_class& e) const;
  Complex log() const;
  Complex exp() const;

  Complex operator-() const { return Complex(-re_, -im_); }
  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o) { return *this *= o.inverse(); }
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }

  // "re" or "re+imi" style; both parts in scientific notation with `digits` digits
  std::string toString(int digits = 30) const;

 private:
  Real re_;
  Real im_;
};

}  // namespace qmock::numeric
