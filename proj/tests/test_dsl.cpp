#include "doctest.h"
#include "oracles.hpp"
#include "qmock/dsl/evaluator.hpp"
#include "qmock/dsl/parser.hpp"
#include "qmock/error.hpp"
#include "qmock/identities.hpp"
#include "qmock/mocktheta.hpp"
#include "qmock/qproducts.hpp"

using namespace qmock;
using dsl::parseExpression;

namespace {
ErrorKind kindOf(const std::string& text) {
  try {
    parseExpression(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error for " << text);
  return ErrorKind::Overflow;
}
}  // namespace

TEST_SUITE("dsl") {
  TEST_CASE("phi3 definition parses and evaluates to the builder") {
    auto ast = parseExpression("sum(n=0..inf, q^(n^2) / poch(-q^2; q^2; n))");
    CHECK(dsl::evaluate(ast, 40) == build(MockThetaName::phi3, 40));
  }

  TEST_CASE("1/(q;q)_inf gives the partition numbers") {
    Series s = dsl::evaluate(parseExpression("1/poch(q;q;inf)"), 6);
    auto p = oracle::partitions(6);
    for (int n = 0; n < 6; ++n) CHECK(s.coefficient(n) == Gaussian(p[n]));
    CHECK(p == std::vector<long>{1, 1, 2, 3, 5, 7});
  }

  TEST_CASE("syntax errors carry line and column") {
    try {
      parseExpression("1 +\n (q*");
      FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 5);
    }
    CHECK(kindOf("q^") == ErrorKind::SyntaxError);
    CHECK(kindOf("poch(q; q)") == ErrorKind::SyntaxError);
    CHECK(kindOf("sum(n=0..inf q)") == ErrorKind::SyntaxError);
    CHECK(kindOf("prod(inf; -q; q^2)") == ErrorKind::SyntaxError);
  }

  TEST_CASE("named functions check their arity") {
    CHECK(kindOf("f3(q, q)") == ErrorKind::ArityError);
    CHECK(kindOf("J(1)") == ErrorKind::ArityError);
    CHECK(kindOf("m(q, q)") == ErrorKind::ArityError);
  }

  TEST_CASE("unbound variables") {
    auto ast = parseExpression("s*q + sum(n=0..3, q^n)");
    CHECK(dsl::freeParameters(ast) == std::set<std::string>{"s"});
    try {
      dsl::evaluate(ast, 5);
      FAIL("expected UnboundVariable");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnboundVariable);
    }
    dsl::ParamBindings b{{"s", Monomial::parse("2*q")}};
    CHECK(dsl::evaluate(ast, 5, b).coefficient(2) == Gaussian(3));
  }

  TEST_CASE("jtp(z=-1) is the triple product at z = -1") {
    Series viaSugar = dsl::evaluate(parseExpression("jtp(z=-1)"), 30);
    Series product = dsl::evaluate(parseExpression("poch(-q, -q, q^2; q^2; inf)"), 30);
    CHECK(viaSugar == product);
    CHECK(viaSugar == jacobiTripleProduct(Monomial::parse("-1"), 30).second.truncated(30));
  }

  TEST_CASE("printer round trip over every registry side") {
    for (const auto& rec : embeddedRegistry().records)
      for (const auto& side : rec.sides) {
        CAPTURE(rec.id);
        std::string once = dsl::print(side.ast);
        CHECK(dsl::print(parseExpression(once)) == once);
      }
  }

  TEST_CASE("negative-index Pochhammer and bilateral bounds") {
    Series a = dsl::evaluate(parseExpression("poch(q^3; q; -2)"), 10);
    Series b = dsl::evaluate(parseExpression("1/poch(q; q; 2)"), 10);
    CHECK(a == b);
    Series bil = dsl::evaluate(parseExpression("sum(n=-inf..inf, q^(n^2))"), 30);
    CHECK(bil.coefficient(0) == Gaussian(1));
    CHECK(bil.coefficient(4) == Gaussian(2));
    CHECK(bil.coefficient(5) == Gaussian(0));
  }

  TEST_CASE("rational exponents and powers") {
    Series s = dsl::evaluate(parseExpression("(1 + q^(1/2))^2"), 3);
    CHECK(s.coefficient(Exponent(1, 2)) == Gaussian(2));
    CHECK(s.coefficient(1) == Gaussian(1));
    CHECK(dsl::evaluate(parseExpression("i^2"), 1).coefficient(0) == Gaussian(-1));
  }

  TEST_CASE("mu6 needs Cesaro permission") {
    auto ast = parseExpression("mu6(q)");
    CHECK_THROWS_AS(dsl::evaluate(ast, 10), Error);
    dsl::EvalOptions o;
    o.allowCesaro = true;
    CHECK(dsl::evaluate(ast, 10, {}, o) == build(MockThetaName::mu6, 10));
  }

  TEST_CASE("validity check of a divergent sum") {
    auto ast = parseExpression("sum(n=0..inf, poch(q;q^2;n)/poch(-q;q;n))");
    auto v = dsl::checkFormalValidity(ast, {}, {});
    CHECK_FALSE(v.ok);
    CHECK_FALSE(v.message.empty());
  }
}
