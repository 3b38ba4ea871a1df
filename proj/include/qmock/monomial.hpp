#pragma once

#include <cstdint>
#include <string>

#include "qmock/exponent.hpp"
#include "qmock/gaussian.hpp"
#include "qmock/series.hpp"

namespace qmock {

// u * q^e with u a nonzero Gaussian rational
struct Monomial {
  Gaussian unit{1};
  Exponent exponent{0};

  Monomial() = default;
  Monomial(Gaussian u, Exponent e);
  static Monomial q(const Exponent& e = 1) { return Monomial(Gaussian(1), e); }
  // "u*q^e", "-q^2", "i*q^(1/2)", "3", "q^-1/3"
  static Monomial parse(const std::string& text);

  Monomial operator*(const Monomial& o) const { return Monomial(unit * o.unit, exponent + o.exponent); }
  Monomial operator/(const Monomial& o) const { return Monomial(unit / o.unit, exponent - o.exponent); }
  Monomial operator-() const { return Monomial(-unit, exponent); }
  Monomial inverse() const { return Monomial(unit.inverse(), -exponent); }
  Monomial pow(std::int64_t k) const { return Monomial(unit.pow(k), exponent * k); }
  // rational powers are only defined for unit 1
  Monomial pow(const Exponent& k) const;
  bool operator==(const Monomial& o) const { return unit == o.unit && exponent == o.exponent; }

  Series toSeries() const { return Series::monomial(unit, exponent); }
  std::string toString() const;
};

// base q^scale of a Pochhammer symbol
struct QStep {
  Exponent scale{1};
  QStep() = default;
  explicit QStep(Exponent s);
  Monomial base() const { return Monomial::q(scale); }
};

}  // namespace qmock
