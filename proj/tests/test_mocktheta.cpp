#include "doctest.h"
#include "oracles.hpp"
#include "qmock/dsl/evaluator.hpp"
#include "qmock/dsl/parser.hpp"
#include "qmock/error.hpp"
#include "qmock/mocktheta.hpp"

using namespace qmock;

namespace {
void checkAgainstOracle(const MockThetaId& id, int N) {
  CAPTURE(std::string(id.id));
  Series s = build(id.name, N);
  REQUIRE(s.order() == Exponent(N));
  oracle::Poly p = oracle::mockTheta(std::string(id.id), N);
  for (int n = 0; n < N; ++n) {
    CAPTURE(n);
    CHECK(s.coefficient(n) == Gaussian(p[n]));
  }
}
}  // namespace

TEST_SUITE("mocktheta") {
  TEST_CASE("every builder matches the naive oracle to order 40") {
    REQUIRE(allMockThetas().size() == 27);
    for (const auto& id : allMockThetas()) {
      REQUIRE(oracle::hasMockTheta(std::string(id.id)));
      checkAgainstOracle(id, 40);
    }
  }

  TEST_CASE("frozen oracle values") {
    // first coefficients of the third order f(q)
    std::vector<long> f3 = {1, 1, -2, 3, -3, 3, -5, 7, -6, 6, -10, 12, -11, 13, -17, 20};
    auto p = oracle::mockTheta("f3", 16);
    for (int n = 0; n < 16; ++n) CHECK(p[n] == f3[n]);
    // psi3 starts at n = 1, so no constant term
    CHECK(oracle::mockTheta("psi3", 4) == oracle::Poly{0, 1, 1, 1});
    // mu6 through the even/odd averages
    auto mu = oracle::mockTheta("mu6", 4);
    CHECK(mu[0] == mpq_class(1, 2));
    CHECK(mu[2] == mpq_class(-3, 2));
  }

  TEST_CASE("summability flags") {
    for (const auto& id : allMockThetas())
      CHECK((id.summability == Summability::Cesaro) == (id.name == MockThetaName::mu6));
  }

  TEST_CASE("lookup by registry spelling") {
    auto id = mockThetaByName("phi6minus");
    REQUIRE(id.has_value());
    CHECK(id->order == 6);
    CHECK_FALSE(mockThetaByName("f7").has_value());
    CHECK(mockTheta(MockThetaName::S1).id == "S1");
  }

  TEST_CASE("buildAt substitutes u q^k") {
    Series a = buildAt(MockThetaName::F0, Gaussian(-1), 2, 30);
    Series b = build(MockThetaName::F0, 15).substitute(Gaussian(-1), 2);
    CHECK(a.truncated(30) == b.truncated(30));
  }

  TEST_CASE("DSL definition evaluates to the builder") {
    for (const auto& id : allMockThetas()) {
      CAPTURE(std::string(id.id));
      dsl::EvalOptions o;
      o.allowCesaro = id.summability == Summability::Cesaro;
      Series viaDsl = dsl::evaluate(dsl::parseExpression(std::string(id.definition)), 30, {}, o);
      CHECK(viaDsl.truncated(30) == build(id.name, 30));
    }
  }

  TEST_CASE("named call in the DSL") {
    Series s = dsl::evaluate(dsl::parseExpression("f3(q^2)"), 20);
    CHECK(s == build(MockThetaName::f3, 10).substitute(Gaussian(1), 2));
  }
}
