#include "doctest.h"
#include "oracles.hpp"
#include "qmock/cesaro.hpp"
#include "qmock/error.hpp"
#include "qmock/qproducts.hpp"
#include "qmock/series.hpp"

using namespace qmock;

namespace {
Series poly(std::initializer_list<long> c, Series::Order order = std::nullopt) {
  std::vector<std::pair<Exponent, Gaussian>> t;
  long e = 0;
  for (long v : c) t.emplace_back(e++, Gaussian(v));
  return Series::fromTerms(t, order);
}
}  // namespace

TEST_SUITE("series") {
  TEST_CASE("exponent arithmetic stays reduced") {
    Exponent a(6, 4);
    CHECK(a.num() == 3);
    CHECK(a.den() == 2);
    CHECK(a + Exponent(1, 2) == Exponent(2));
    CHECK((Exponent(1, 3) * Exponent(3)).isInteger());
    CHECK(Exponent(-7, 2).floor() == -4);
    CHECK(Exponent(-7, 2).ceil() == -3);
    CHECK(Exponent(1, 3) < Exponent(1, 2));
  }

  TEST_CASE("gaussian parse and arithmetic") {
    CHECK(Gaussian::parse("1/2+3/4i") == Gaussian(mpq_class(1, 2), mpq_class(3, 4)));
    CHECK(Gaussian::parse("-i") == -Gaussian::i());
    CHECK(Gaussian::i() * Gaussian::i() == Gaussian(-1));
    Gaussian z(mpq_class(2), mpq_class(-3));
    CHECK(z * z.inverse() == Gaussian(1));
    CHECK(z.pow(-2) * z.pow(2) == Gaussian(1));
  }

  TEST_CASE("truncation order follows the operands") {
    Series a = poly({1, 2, 3}, Exponent(10));
    Series b = poly({1, -1}, Exponent(6));
    CHECK((a + b).order() == Exponent(6));
    CHECK((a * b).order() == Exponent(6));
    // multiplying by q^2 lifts what is known
    Series c = Series::monomial(1, 2) * b;
    CHECK(c.order() == Exponent(8));
    CHECK(c.valuation() == Exponent(2));
  }

  TEST_CASE("inverse of a series with positive valuation") {
    // 1/(q + q^2 + O(q^5)) is known to O(q^3)
    Series s = Series::fromTerms({{1, 1}, {2, 1}}, Exponent(5));
    Series inv = invert(s);
    REQUIRE(inv.order() == Exponent(3));
    CHECK(inv.coefficient(-1) == Gaussian(1));
    CHECK(inv.coefficient(0) == Gaussian(-1));
    CHECK(inv.coefficient(1) == Gaussian(1));
    CHECK(inv.coefficient(2) == Gaussian(-1));
  }

  TEST_CASE("inverting zero is an error") {
    CHECK_THROWS_AS(invert(Series::zero(Exponent(5))), Error);
    try {
      invert(Series());
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ZeroSeries);
    }
  }

  TEST_CASE("partition generating function against brute force") {
    const int N = 40;
    Series s = invert(pochInf(Monomial::q(1), QStep(1), N));
    auto p = oracle::partitions(N);
    for (int n = 0; n < N; ++n) CHECK(s.coefficient(n) == Gaussian(p[n]));
    // frozen
    CHECK(p[10] == 42);
    CHECK(p[39] == 31185);
  }

  TEST_CASE("substitution q -> u q^k") {
    Series s = poly({1, 1, 1}, Exponent(3));
    Series t = s.substitute(Gaussian(-2), 2);
    CHECK(t.order() == Exponent(6));
    CHECK(t.coefficient(2) == Gaussian(-2));
    CHECK(t.coefficient(4) == Gaussian(4));
    CHECK(t.coefficient(1) == Gaussian(0));
  }

  TEST_CASE("fractional exponents share a denominator") {
    Series a = Series::monomial(1, Exponent(1, 2), Exponent(4));
    Series b = Series::monomial(1, Exponent(1, 3), Exponent(4));
    Series c = a * b;
    CHECK(c.coefficient(Exponent(5, 6)) == Gaussian(1));
    CHECK(c.denomHint() % 6 == 0);
  }

  TEST_CASE("pow and timesBinomial agree with products") {
    Series a = poly({1, 1}, Exponent(12));
    CHECK(a.pow(3) == a * a * a);
    CHECK(a.timesBinomial(Gaussian(2), 3) == a * poly({1, 0, 0, -2}));
    CHECK(a.pow(-2) * a.pow(2) == poly({1}, Exponent(12)));
  }

  TEST_CASE("cesaro sum of Grandi's series") {
    auto term = [](std::int64_t n, const Exponent& order) {
      return Series::constant(n % 2 ? Gaussian(-1) : Gaussian(1), order);
    };
    auto v = cesaroSum(term, 5);
    CHECK(v.value.coefficient(0) == Gaussian::fraction(1, 2));
    CHECK(v.value.coefficient(1) == Gaussian(0));
  }

  TEST_CASE("cesaro sum of a terminating sequence is the ordinary sum") {
    auto term = [](std::int64_t n, const Exponent& order) {
      return n < 4 ? Series::monomial(Gaussian(n + 1), n, order) : Series::zero(order);
    };
    auto v = cesaroSum(term, 8);
    for (int e = 0; e < 4; ++e) CHECK(v.value.coefficient(e) == Gaussian(e + 1));
  }
}
