#include "doctest.h"
#include "qmock/bilateral.hpp"
#include "qmock/error.hpp"
#include "qmock/qproducts.hpp"

using namespace qmock;

namespace {
Monomial M(const char* s) { return Monomial::parse(s); }
}  // namespace

TEST_SUITE("bilateral") {
  TEST_CASE("bilateral theta sum equals the triple product") {
    // sum_n (-z)^n q^(n^2) with z = 2
    TermFamily f;
    f.termAt = [](std::int64_t n, const Exponent& order) {
      return Series::monomial(Gaussian(-2).pow(n), n * n, order);
    };
    f.valuationBound = [](std::int64_t n) { return std::optional<Exponent>(n * n); };
    auto [sum, prod] = jacobiTripleProduct(M("2"), 50);
    CHECK(sumBilateral(f, 50) == sum.truncated(50));
    CHECK(sumBilateral(f, 50) == prod.truncated(50));
  }

  TEST_CASE("2psi2 equals its split form") {
    struct P { const char *a, *b, *c, *d, *z; };
    for (P p : {P{"-1", "3*q", "2", "-q", "q"}, P{"-q", "-q^2", "-1", "2*q", "q"}, P{"i", "q", "2", "-q^3", "q"}}) {
      CAPTURE(p.a);
      REQUIRE(checkValidity(twoPsiTwoFamily(M(p.a), M(p.b), M(p.c), M(p.d), M(p.z))).ok);
      CHECK(twoPsiTwo(M(p.a), M(p.b), M(p.c), M(p.d), M(p.z), 30) ==
            twoPsiTwoSplit(M(p.a), M(p.b), M(p.c), M(p.d), M(p.z), 30));
    }
  }

  TEST_CASE("growth violation is reported with its direction") {
    auto v = checkValidity(twoPsiTwoFamily(M("-1"), M("3*q"), M("2"), M("-q"), M("q^-3")));
    CHECK_FALSE(v.ok);
    CHECK(v.failing == Direction::Positive);
    CHECK_THROWS_AS(twoPsiTwo(M("-1"), M("3*q"), M("2"), M("-q"), M("q^-3"), 20), Error);
  }

  TEST_CASE("6psi6 sum and product") {
    // a needs valuation 0 so that (q/a;q)_inf expands; b..e with total valuation below 1
    struct P { const char *a, *b, *c, *d, *e; };
    for (P p : {P{"4", "-1", "2", "3", "-q^(1/2)"}, P{"-4", "2*q^(1/4)", "3", "-1", "q^(1/4)"}}) {
      CAPTURE(p.b);
      auto [sum, prod] = sixPsiSix(M(p.a), M(p.b), M(p.c), M(p.d), M(p.e), 30);
      CHECK(sum.truncated(25) == prod.truncated(25));
    }
  }

  TEST_CASE("a pole in a 2psi2 term is reported") {
    // (q;q)_{-n} has the factor 1 - q^0
    CHECK_THROWS_AS(checkValidity(twoPsiTwoFamily(M("q"), M("-q^2"), M("-1"), M("2*q"), M("q^2"))), Error);
  }

  TEST_CASE("G(x, q/x) links to g(x; q)") {
    for (const char* x : {"-1", "2", "i", "q^(1/2)"}) {
      CAPTURE(x);
      auto [a, b] = linkCheck(M(x), 30);
      CHECK(a.truncated(30) == b.truncated(30));
    }
  }

  TEST_CASE("unilateral sum stops at the order") {
    // sum_{n>=0} q^n = 1/(1-q)
    TermFamily f;
    f.termAt = [](std::int64_t n, const Exponent& order) { return Series::monomial(1, n, order); };
    f.valuationBound = [](std::int64_t n) { return std::optional<Exponent>(n); };
    Series s = sumUnilateral(f, 0, 15);
    for (int n = 0; n < 15; ++n) CHECK(s.coefficient(n) == Gaussian(1));
    CHECK(s.order() == Exponent(15));
  }

  TEST_CASE("a family that never grows is divergent") {
    TermFamily f;
    f.termAt = [](std::int64_t, const Exponent& order) { return Series::constant(1, order); };
    f.valuationBound = [](std::int64_t) { return std::optional<Exponent>(0); };
    SumOptions o;
    o.maxTerms = 500;
    CHECK_THROWS_AS(sumUnilateral(f, 0, 5, o), Error);
    CHECK_FALSE(checkValidity(f).ok);
  }

  TEST_CASE("Appell-Lerch sum: m(qx, q, z) = 1 - x m(x, q, z)") {
    for (const char* x : {"2", "-3", "2*q^(1/2)"}) {
      CAPTURE(x);
      Monomial mx = M(x);
      Series lhs = appellLerchM(mx * Monomial::q(1), QStep(1), M("-1"), 25);
      Series rhs = Series::constant(1) - mx.toSeries() * appellLerchM(mx, QStep(1), M("-1"), 25);
      CHECK(lhs.truncated(20) == rhs.truncated(20));
    }
  }
}
