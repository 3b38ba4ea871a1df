#include "doctest.h"
#include "oracles.hpp"
#include "qmock/error.hpp"
#include "qmock/qproducts.hpp"

using namespace qmock;

TEST_SUITE("qproducts") {
  TEST_CASE("(q;q)_inf is the pentagonal series") {
    const int N = 100;
    Series s = pochInf(Monomial::q(1), QStep(1), N);
    auto c = oracle::eulerProduct(N);
    for (int n = 0; n < N; ++n) CHECK(s.coefficient(n) == Gaussian(c[n]));
  }

  TEST_CASE("finite Pochhammer is the product of its factors") {
    Monomial a = Monomial::parse("-2*q^(1/2)");
    Series p = pochFinite(a, QStep(Exponent(3, 2)), 4);
    CHECK(p.isExact());
    Series expect = Series::constant(1);
    for (int j = 0; j < 4; ++j) expect = expect.timesBinomial(a.unit, a.exponent + Exponent(3 * j, 2));
    CHECK(p == expect);
    CHECK(pochFinite(a, QStep(1), 0) == Series::constant(1));
  }

  TEST_CASE("negative index: both routes agree") {
    for (const char* a : {"q^7", "-1", "2*q^2", "i*q^(1/2)"})
      for (int n = 1; n <= 5; ++n) {
        CAPTURE(a);
        CAPTURE(n);
        Monomial m = Monomial::parse(a);
        CHECK(pochNeg(m, QStep(1), n, 20) == pochNegQuotient(m, QStep(1), n, 20));
      }
  }

  TEST_CASE("negative index times positive index") {
    // (a;q)_{-n} (a q^{-n};q)_n = 1
    Monomial a = Monomial::parse("3*q^2");
    for (int n = 1; n <= 4; ++n) {
      Series lhs = pochNeg(a, QStep(1), n, 25) * pochFinite(a * Monomial::q(-n), QStep(1), n, Exponent(25));
      CHECK(lhs.truncated(20) == Series::constant(1, Exponent(20)));
    }
  }

  TEST_CASE("leading terms") {
    CHECK(pochLead(Monomial::q(1), QStep(1), -1).isPole());
    Lead l = pochLead(Monomial::parse("2"), QStep(1), 3);
    REQUIRE(l.isExact());
    CHECK(l.val == Exponent(0));
    CHECK(l.coeff == Gaussian(-1));
    CHECK_THROWS_AS(pochInfLead(Monomial::q(-1), QStep(1)), Error);
    CHECK_THROWS_AS(pochInfLead(Monomial(Gaussian(1), 0), QStep(1)), Error);
  }

  TEST_CASE("Jacobi triple product at several z") {
    for (const char* z : {"1", "-1", "i", "2", "-1/3", "3*q^(1/3)", "-q^(1/2)"}) {
      CAPTURE(z);
      auto [sum, prod] = jacobiTripleProduct(Monomial::parse(z), 40);
      CHECK(sum.truncated(40) == prod.truncated(40));
    }
  }

  TEST_CASE("theta blocks") {
    CHECK(JM(1, 30) == pochInf(Monomial::q(1), QStep(1), 30));
    // j(q^a; q^m) = (q^a, q^(m-a), q^m; q^m)_inf
    Series expect = pochInf(Monomial::q(2), QStep(5), 40) * pochInf(Monomial::q(3), QStep(5), 40) *
                    pochInf(Monomial::q(5), QStep(5), 40);
    CHECK(JSub(2, 5, 40) == expect);
    CHECK(JBar(1, 2, 30) == jBlock(Monomial::parse("-q"), QStep(2), 30));
  }

  TEST_CASE("PochProduct expands only as far as needed") {
    PochProduct p;
    p.times(Monomial::q(3)).poch(Monomial::q(1), QStep(1), 5, -1).pochInfinite(Monomial::q(2), QStep(2));
    Lead l = p.lead();
    REQUIRE(l.isExact());
    CHECK(l.val == Exponent(3));
    Series s = p.evaluate(20);
    Series expect = Series::monomial(1, 3) * invert(pochFinite(Monomial::q(1), QStep(1), 5, Exponent(20))) *
                    pochInf(Monomial::q(2), QStep(2), 20);
    CHECK(s.truncated(20) == expect.truncated(20));
  }
}
