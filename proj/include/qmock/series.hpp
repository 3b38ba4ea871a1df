#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qmock/exponent.hpp"
#include "qmock/gaussian.hpp"

namespace qmock {

// Laurent/Puiseux series  sum c_k q^(k/D)  known modulo q^order.
// An empty order means the series is exact (a Laurent polynomial).
class Series {
 public:
  using Order = std::optional<Exponent>;

  Series() = default;  // exact zero
  static Series zero(Order order);
  static Series constant(const Gaussian& c, Order order = std::nullopt);
  static Series monomial(const Gaussian& c, const Exponent& e, Order order = std::nullopt);
  static Series fromTerms(const std::vector<std::pair<Exponent, Gaussian>>& terms, Order order);

  const Order& order() const { return order_; }
  bool isExact() const { return !order_.has_value(); }
  std::int64_t denomHint() const { return den_; }
  bool isZero() const { return c_.empty(); }
  std::optional<Exponent> valuation() const;
  // valuation if a term is stored, else the order; empty only for the exact zero
  std::optional<Exponent> valuationBound() const;
  Gaussian leadingCoefficient() const;
  Gaussian coefficient(const Exponent& e) const;
  std::vector<std::pair<Exponent, Gaussian>> terms() const;
  std::size_t termCount() const;
  std::optional<Exponent> maxExponent() const;

  Series truncated(const Exponent& order) const;
  Series scaled(const Gaussian& c) const;
  Series shifted(const Exponent& e) const;
  Series substitute(const Gaussian& u, const Exponent& k) const;
  Series pow(std::int64_t e) const;
  // in-place style multiplication by the exact binomial (1 - c q^e)
  Series timesBinomial(const Gaussian& c, const Exponent& e) const;

  Series operator-() const;
  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  friend Series operator*(const Series& a, const Series& b);
  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator*=(const Series& o) { return *this = *this * o; }
  friend bool operator==(const Series& a, const Series& b);

  std::string toString() const;

  friend Series invertTo(const Series& s, const Order& order);

 private:
  std::int64_t den_ = 1;
  std::int64_t low_ = 0;  // index of c_[0]; exponent = index / den_
  std::vector<Gaussian> c_;
  Order order_;

  void normalize();
  Series rescaled(std::int64_t den) const;
};

Series add(const Series& a, const Series& b);
Series mul(const Series& a, const Series& b);
// Multiplicative inverse; the result is known to order  ord(s) - 2 val(s).
Series invert(const Series& s);
// Inverse cut at `order` (or at the natural order if that is smaller).
Series invertTo(const Series& s, const Series::Order& order);

inline std::ostream& operator<<(std::ostream& os, const Series& s) { return os << s.toString(); }

}  // namespace qmock
