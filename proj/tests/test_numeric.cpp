#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qmock/dsl/parser.hpp"
#include "qmock/error.hpp"
#include "qmock/mocktheta.hpp"
#include "qmock/numeric/evaluator.hpp"

using namespace qmock;
using namespace qmock::numeric;

namespace {
double dist(const Complex& a, const Complex& b) { return (a - b).abs().toDouble(); }
Complex rat(const mpq_class& v, mpfr_prec_t bits) { return Complex(Real(v, bits), Real(bits)); }
}  // namespace

TEST_SUITE("numeric") {
  TEST_CASE("roots of unity") {
    CHECK(Complex::rootOfUnity(1, 4, 212).pow(2).re().toDouble() == -1.0);
    CHECK(Complex::rootOfUnity(1, 4, 212).pow(2).im().isZero());
    Complex z = Complex::rootOfUnity(3, 7, 212);
    CHECK(dist(z.pow(7), Complex(1, 0, 212)) < 1e-60);
    CHECK(std::fabs(z.abs().toDouble() - 1.0) < 1e-60);
  }

  TEST_CASE("exp and log are inverse on the principal branch") {
    Complex z(0.3, -1.7, 212);
    CHECK(dist(z.log().exp(), z) < 1e-60);
    Complex r = z.pow(mpq_class(1, 3)).pow(3);
    CHECK(dist(r, z) < 1e-58);
  }

  TEST_CASE("f3 at 1/10 against an exact rational sum") {
    const int bits = 256;
    mpq_class q(1, 10);
    mpq_class exact = oracle::f3At(q, bits);
    NumericOptions o;
    o.bits = bits;
    Complex v = evalSeriesNumeric(MockThetaName::f3, rat(q, bits), o);
    CHECK(dist(v, rat(exact, bits)) < std::ldexp(1.0, -180));
  }

  TEST_CASE("(q;q)_inf at 1/2 against the pentagonal series") {
    const int bits = 212;
    mpq_class q(1, 2);
    mpq_class exact = oracle::eulerAt(q, bits);
    NumericOptions o;
    o.bits = bits;
    Complex v = evalProductNumeric(dsl::parseExpression("poch(q;q;inf)"), rat(q, bits), o);
    CHECK(dist(v, rat(exact, bits)) < std::ldexp(1.0, -150));
    // frozen leading digits of (1/2;1/2)_inf
    CHECK(std::fabs(v.re().toDouble() - 0.28878809508660242) < 1e-15);
  }

  TEST_CASE("series definition agrees with the truncated exact series") {
    // |q| <= 0.7: the exact series to order 80 differs from the value by its tail
    for (const auto& id : allMockThetas()) {
      CAPTURE(std::string(id.id));
      NumericOptions o;
      o.allowCesaro = id.summability == Summability::Cesaro;
      for (double r : {0.3, 0.5}) {
        Complex q = Complex::polar(Real(r, 212), Real(0.7, 212));
        Complex numeric = evalSeriesNumeric(id.name, q, o);
        Complex truncated = evalTruncated(build(id.name, 80), q, 212);
        double tol = r < 0.4 ? 1e-30 : 1e-15;
        CHECK(dist(numeric, truncated) < tol);
      }
    }
  }

  TEST_CASE("|q| >= 1 is refused") {
    CHECK_THROWS_AS(evalSeriesNumeric(MockThetaName::f3, Complex(1, 0, 212)), Error);
    CHECK_THROWS_AS(evalSeriesNumeric(MockThetaName::phi3, Complex(0, -1.2, 212)), Error);
  }

  TEST_CASE("mu6 inside an expression requires Cesaro permission") {
    Complex q(0.2, 0.1, 212);
    auto ast = dsl::parseExpression("mu6(q)");
    try {
      evaluate(ast, q, {}, NumericOptions{});
      FAIL("expected CesaroNotPermitted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::CesaroNotPermitted);
    }
    NumericOptions o;
    o.allowCesaro = true;
    // evaluating by name grants the permission for the function's own definition
    CHECK((evaluate(ast, q, {}, o) - evalSeriesNumeric(MockThetaName::mu6, q)).abs().toDouble() < 1e-50);
  }


  TEST_CASE("vanishing factors are reported") {
    auto ast = dsl::parseExpression("1/poch(1/q; q; inf)");
    try {
      evaluate(ast, Complex(0.5, 0, 212));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK((e.kind() == ErrorKind::ZeroFactor || e.kind() == ErrorKind::FormalDivergence));
    }
  }

  TEST_CASE("finite sums with bound variables") {
    NumericBindings b;
    b.integers["k"] = 3;
    b.values["x"] = Complex(2, 0, 212);
    Complex v = evaluate(dsl::parseExpression("sum(n=0..k, x^n)"), Complex(0.5, 0, 212), b);
    CHECK(dist(v, Complex(15, 0, 212)) < 1e-60);
  }

  TEST_CASE("raising precision keeps the value") {
    Complex q(0.4, 0.3, 400);
    NumericOptions lo, hi;
    lo.bits = 128;
    hi.bits = 400;
    Complex a = evalSeriesNumeric(MockThetaName::S0, Complex(0.4, 0.3, 128), lo);
    Complex b = evalSeriesNumeric(MockThetaName::S0, q, hi);
    CHECK(dist(a, b) < 1e-30);
  }
}
