#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace qmock {

// Exact element of Q(i).
class Gaussian {
 public:
  Gaussian() = default;
  Gaussian(long v) : re_(v) {}  // NOLINT(implicit)
  Gaussian(const mpq_class& re) : re_(re) { re_.canonicalize(); }  // NOLINT(implicit)
  Gaussian(mpq_class re, mpq_class im);

  static Gaussian i() { return Gaussian(mpq_class(0), mpq_class(1)); }
  static Gaussian fraction(long num, long den);
  // accepts "3", "-2/5", "i", "-i", "1/2+3/4i", "2i"
  static Gaussian parse(const std::string& text);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool isZero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool isReal() const { return sgn(im_) == 0; }
  bool isOne() const { return sgn(im_) == 0 && re_ == 1; }
  bool isInteger() const;

  Gaussian conj() const { return Gaussian(re_, -im_); }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  Gaussian inverse() const;
  Gaussian pow(std::int64_t e) const;

  Gaussian operator-() const { return Gaussian(-re_, -im_); }
  Gaussian& operator+=(const Gaussian& o);
  Gaussian& operator-=(const Gaussian& o);
  Gaussian& operator*=(const Gaussian& o);
  Gaussian& operator/=(const Gaussian& o) { return *this *= o.inverse(); }
  // this += a*b without building a temporary Gaussian
  void addProduct(const Gaussian& a, const Gaussian& b);
  void subProduct(const Gaussian& a, const Gaussian& b);

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::string toString() const;

  static std::optional<Gaussian> exactSqrt(const Gaussian& z);

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

inline std::ostream& operator<<(std::ostream& os, const Gaussian& g) { return os << g.toString(); }

}  // namespace qmock
