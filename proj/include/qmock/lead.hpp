#pragma once

#include <string>

#include "qmock/exponent.hpp"
#include "qmock/gaussian.hpp"

namespace qmock {

// What is known about the lowest term of a quantity before expanding it.
struct Lead {
  enum class Kind { Zero, Exact, LowerBound, Pole };
  Kind kind = Kind::Zero;
  Exponent val{0};
  Gaussian coeff{0};

  static Lead zero() { return Lead{}; }
  static Lead exact(Exponent v, Gaussian c) { return Lead{Kind::Exact, v, std::move(c)}; }
  static Lead lowerBound(Exponent v) { return Lead{Kind::LowerBound, v, Gaussian(0)}; }
  static Lead pole() { return Lead{Kind::Pole, 0, Gaussian(0)}; }

  bool isZero() const { return kind == Kind::Zero; }
  bool isExact() const { return kind == Kind::Exact; }
  bool isPole() const { return kind == Kind::Pole; }
  bool hasVal() const { return kind == Kind::Exact || kind == Kind::LowerBound; }

  Lead inverse() const;
  Lead pow(long k) const;
  Lead negated() const;
  std::string toString() const;
};

Lead operator*(const Lead& a, const Lead& b);
Lead operator+(const Lead& a, const Lead& b);

}  // namespace qmock
