#include "qmock/exponent.hpp"

#include <numeric>

#include "qmock/error.hpp"

namespace qmock {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw Error(ErrorKind::Overflow, "exponent arithmetic overflow");
  return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Exponent make(i128 n, i128 d) {
  if (d == 0) throw Error(ErrorKind::EvaluationError, "exponent division by zero");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Exponent(narrow(n), narrow(d));
}

}  // namespace

Exponent::Exponent(std::int64_t n, std::int64_t d) {
  if (d == 0) throw Error(ErrorKind::EvaluationError, "exponent with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  std::int64_t g = std::gcd(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = n;
  den_ = d;
}

std::int64_t Exponent::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t Exponent::ceil() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

std::string Exponent::toString() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Exponent Exponent::operator-() const { return Exponent(narrow(-static_cast<i128>(num_)), den_); }

Exponent operator+(const Exponent& a, const Exponent& b) {
  if (a.den_ == 1 && b.den_ == 1) return Exponent(narrow(static_cast<i128>(a.num_) + b.num_));
  return make(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
              static_cast<i128>(a.den_) * b.den_);
}

Exponent operator-(const Exponent& a, const Exponent& b) { return a + (-b); }

Exponent operator*(const Exponent& a, const Exponent& b) {
  return make(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Exponent operator/(const Exponent& a, const Exponent& b) {
  return make(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) {
  i128 l = static_cast<i128>(a.num_) * b.den_;
  i128 r = static_cast<i128>(b.num_) * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::int64_t checkedLcm(std::int64_t a, std::int64_t b) {
  std::int64_t g = std::gcd(a, b);
  return narrow(static_cast<i128>(a / g) * b);
}

}  // namespace qmock
