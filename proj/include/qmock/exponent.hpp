#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

namespace qmock {

// Small exact rational (int64 num/den, den > 0, reduced). Used for q-exponents and orders.
class Exponent {
 public:
  constexpr Exponent() = default;
  constexpr Exponent(std::int64_t n) : num_(n) {}  // NOLINT(implicit)
  Exponent(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool isInteger() const { return den_ == 1; }
  bool isZero() const { return num_ == 0; }
  int sign() const { return (num_ > 0) - (num_ < 0); }
  std::int64_t floor() const;
  std::int64_t ceil() const;
  double toDouble() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string toString() const;

  Exponent operator-() const;
  friend Exponent operator+(const Exponent& a, const Exponent& b);
  friend Exponent operator-(const Exponent& a, const Exponent& b);
  friend Exponent operator*(const Exponent& a, const Exponent& b);
  friend Exponent operator/(const Exponent& a, const Exponent& b);
  Exponent& operator+=(const Exponent& o) { return *this = *this + o; }
  Exponent& operator-=(const Exponent& o) { return *this = *this - o; }
  Exponent& operator*=(const Exponent& o) { return *this = *this * o; }

  friend bool operator==(const Exponent& a, const Exponent& b) = default;
  friend std::strong_ordering operator<=>(const Exponent& a, const Exponent& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Exponent& e) { return os << e.toString(); }

std::int64_t checkedLcm(std::int64_t a, std::int64_t b);

}  // namespace qmock

template <>
struct std::hash<qmock::Exponent> {
  std::size_t operator()(const qmock::Exponent& e) const noexcept {
    return std::hash<std::int64_t>()(e.num()) * 31u + std::hash<std::int64_t>()(e.den());
  }
};
