#include "qmock/mocktheta.hpp"

#include "qmock/cesaro.hpp"
#include "qmock/error.hpp"

namespace qmock {

namespace {

struct PochSpec {
  int unit;       // +1 or -1
  int aExp;       // a = unit * q^aExp
  int step;       // base q^step
  int mult, off;  // index mult*n + off
  int power;
};

struct Recipe {
  MockThetaName name;
  int start;
  bool alternating;
  int A, B, C, D;  // q^{(A n^2 + B n + C)/D}
  std::vector<PochSpec> pochs;
};

using N = MockThetaName;

const std::vector<Recipe>& recipes() {
  static const std::vector<Recipe> r = {
      {N::f3, 0, false, 1, 0, 0, 1, {{-1, 1, 1, 1, 0, -2}}},
      {N::phi3, 0, false, 1, 0, 0, 1, {{-1, 2, 2, 1, 0, -1}}},
      {N::chi3, 0, false, 1, 0, 0, 1, {{-1, 1, 1, 1, 0, 1}, {-1, 3, 3, 1, 0, -1}}},
      {N::psi3, 1, false, 1, 0, 0, 1, {{1, 1, 2, 1, 0, -1}}},
      {N::nu3, 0, false, 1, 1, 0, 1, {{-1, 1, 2, 1, 1, -1}}},
      {N::f0, 0, false, 1, 0, 0, 1, {{-1, 1, 1, 1, 0, -1}}},
      {N::f1, 0, false, 1, 1, 0, 1, {{-1, 1, 1, 1, 0, -1}}},
      {N::F0, 0, false, 2, 0, 0, 1, {{1, 1, 2, 1, 0, -1}}},
      {N::F1, 0, false, 2, 2, 0, 1, {{1, 1, 2, 1, 1, -1}}},
      {N::phi0, 0, false, 1, 0, 0, 1, {{-1, 1, 2, 1, 0, 1}}},
      {N::phi1, 0, false, 1, 2, 1, 1, {{-1, 1, 2, 1, 0, 1}}},
      {N::psi0, 0, false, 1, 3, 2, 2, {{-1, 1, 1, 1, 0, 1}}},
      {N::psi1, 0, false, 1, 1, 0, 2, {{-1, 1, 1, 1, 0, 1}}},
      {N::chi0, 0, false, 0, 1, 0, 1, {{1, 1, 1, 1, 0, 1}, {1, 1, 1, 2, 0, -1}}},
      {N::chi1, 0, false, 0, 1, 0, 1, {{1, 1, 1, 1, 0, 1}, {1, 1, 1, 2, 1, -1}}},
      {N::phi6, 0, true, 1, 0, 0, 1, {{1, 1, 2, 1, 0, 1}, {-1, 1, 1, 2, 0, -1}}},
      {N::psi6, 0, true, 1, 2, 1, 1, {{1, 1, 2, 1, 0, 1}, {-1, 1, 1, 2, 1, -1}}},
      {N::rho6, 0, false, 1, 1, 0, 2, {{-1, 1, 1, 1, 0, 1}, {1, 1, 2, 1, 1, -1}}},
      {N::sigma6, 0, false, 1, 3, 2, 2, {{-1, 1, 1, 1, 0, 1}, {1, 1, 2, 1, 1, -1}}},
      {N::lambda6, 0, true, 0, 1, 0, 1, {{1, 1, 2, 1, 0, 1}, {-1, 1, 1, 1, 0, -1}}},
      {N::mu6, 0, true, 0, 0, 0, 1, {{1, 1, 2, 1, 0, 1}, {-1, 1, 1, 1, 0, -1}}},
      {N::phi6minus, 1, false, 0, 1, 0, 1, {{-1, 1, 1, 2, -1, 1}, {1, 1, 2, 1, 0, -1}}},
      {N::psi6minus, 1, false, 0, 1, 0, 1, {{-1, 1, 1, 2, -2, 1}, {1, 1, 2, 1, 0, -1}}},
      {N::S0, 0, false, 1, 0, 0, 1, {{-1, 1, 2, 1, 0, 1}, {-1, 2, 2, 1, 0, -1}}},
      {N::S1, 0, false, 1, 2, 0, 1, {{-1, 1, 2, 1, 0, 1}, {-1, 2, 2, 1, 0, -1}}},
      {N::T0, 0, false, 1, 3, 2, 1, {{-1, 2, 2, 1, 0, 1}, {-1, 1, 2, 1, 1, -1}}},
      {N::T1, 0, false, 1, 1, 0, 1, {{-1, 2, 2, 1, 0, 1}, {-1, 1, 2, 1, 1, -1}}},
  };
  return r;
}

const Recipe& recipe(MockThetaName name) {
  for (const auto& r : recipes())
    if (r.name == name) return r;
  throw Error(ErrorKind::UnknownName, "mock theta recipe");
}

}  // namespace

const std::vector<MockThetaId>& allMockThetas() {
  using S = Summability;
  static const std::vector<MockThetaId> ids = {
      {N::f3, 3, S::Ordinary, "f3", "sum(n=0..inf, q^(n^2)/poch(-q,-q;q;n))"},
      {N::phi3, 3, S::Ordinary, "phi3", "sum(n=0..inf, q^(n^2)/poch(-q^2;q^2;n))"},
      {N::chi3, 3, S::Ordinary, "chi3", "sum(n=0..inf, q^(n^2)*poch(-q;q;n)/poch(-q^3;q^3;n))"},
      {N::psi3, 3, S::Ordinary, "psi3", "sum(n=1..inf, q^(n^2)/poch(q;q^2;n))"},
      {N::nu3, 3, S::Ordinary, "nu3", "sum(n=0..inf, q^(n^2+n)/poch(-q;q^2;n+1))"},
      {N::f0, 5, S::Ordinary, "f0", "sum(n=0..inf, q^(n^2)/poch(-q;q;n))"},
      {N::f1, 5, S::Ordinary, "f1", "sum(n=0..inf, q^(n^2+n)/poch(-q;q;n))"},
      {N::F0, 5, S::Ordinary, "F0", "sum(n=0..inf, q^(2*n^2)/poch(q;q^2;n))"},
      {N::F1, 5, S::Ordinary, "F1", "sum(n=0..inf, q^(2*n^2+2*n)/poch(q;q^2;n+1))"},
      {N::phi0, 5, S::Ordinary, "phi0", "sum(n=0..inf, q^(n^2)*poch(-q;q^2;n))"},
      {N::phi1, 5, S::Ordinary, "phi1", "sum(n=0..inf, q^((n+1)^2)*poch(-q;q^2;n))"},
      {N::psi0, 5, S::Ordinary, "psi0", "sum(n=0..inf, q^((n+1)*(n+2)/2)*poch(-q;q;n))"},
      {N::psi1, 5, S::Ordinary, "psi1", "sum(n=0..inf, q^(n*(n+1)/2)*poch(-q;q;n))"},
      {N::chi0, 5, S::Ordinary, "chi0", "sum(n=0..inf, q^n*poch(q;q;n)/poch(q;q;2*n))"},
      {N::chi1, 5, S::Ordinary, "chi1", "sum(n=0..inf, q^n*poch(q;q;n)/poch(q;q;2*n+1))"},
      {N::phi6, 6, S::Ordinary, "phi6", "sum(n=0..inf, (-1)^n*q^(n^2)*poch(q;q^2;n)/poch(-q;q;2*n))"},
      {N::psi6, 6, S::Ordinary, "psi6", "sum(n=0..inf, (-1)^n*q^((n+1)^2)*poch(q;q^2;n)/poch(-q;q;2*n+1))"},
      {N::rho6, 6, S::Ordinary, "rho6", "sum(n=0..inf, q^(n*(n+1)/2)*poch(-q;q;n)/poch(q;q^2;n+1))"},
      {N::sigma6, 6, S::Ordinary, "sigma6", "sum(n=0..inf, q^((n+1)*(n+2)/2)*poch(-q;q;n)/poch(q;q^2;n+1))"},
      {N::lambda6, 6, S::Ordinary, "lambda6", "sum(n=0..inf, (-1)^n*q^n*poch(q;q^2;n)/poch(-q;q;n))"},
      {N::mu6, 6, S::Cesaro, "mu6", "sum(n=0..inf, (-1)^n*poch(q;q^2;n)/poch(-q;q;n))"},
      {N::phi6minus, 6, S::Ordinary, "phi6minus", "sum(n=1..inf, q^n*poch(-q;q;2*n-1)/poch(q;q^2;n))"},
      {N::psi6minus, 6, S::Ordinary, "psi6minus", "sum(n=1..inf, q^n*poch(-q;q;2*n-2)/poch(q;q^2;n))"},
      {N::S0, 8, S::Ordinary, "S0", "sum(n=0..inf, q^(n^2)*poch(-q;q^2;n)/poch(-q^2;q^2;n))"},
      {N::S1, 8, S::Ordinary, "S1", "sum(n=0..inf, q^(n*(n+2))*poch(-q;q^2;n)/poch(-q^2;q^2;n))"},
      {N::T0, 8, S::Ordinary, "T0", "sum(n=0..inf, q^((n+1)*(n+2))*poch(-q^2;q^2;n)/poch(-q;q^2;n+1))"},
      {N::T1, 8, S::Ordinary, "T1", "sum(n=0..inf, q^(n*(n+1))*poch(-q^2;q^2;n)/poch(-q;q^2;n+1))"},
  };
  return ids;
}

const MockThetaId& mockTheta(MockThetaName name) {
  for (const auto& m : allMockThetas())
    if (m.name == name) return m;
  throw Error(ErrorKind::UnknownName, "mock theta function");
}

std::optional<MockThetaId> mockThetaByName(std::string_view id) {
  for (const auto& m : allMockThetas())
    if (m.id == id) return m;
  return std::nullopt;
}

std::int64_t mockThetaStart(MockThetaName name) { return recipe(name).start; }

PochProduct mockThetaTerm(MockThetaName name, std::int64_t n) {
  const Recipe& r = recipe(name);
  PochProduct p;
  Exponent e(r.A * n * n + r.B * n + r.C, r.D);
  Gaussian sign(r.alternating && (n % 2 != 0) ? -1 : 1);
  p.times(Monomial(sign, e));
  for (const auto& s : r.pochs)
    p.poch(Monomial(Gaussian(s.unit), s.aExp), QStep(s.step), s.mult * n + s.off, s.power);
  return p;
}

Series build(MockThetaName name, const Exponent& order) {
  const Recipe& r = recipe(name);
  if (mockTheta(name).summability == Summability::Cesaro) {
    return cesaroSum([name](std::int64_t n, const Exponent& ord) { return mockThetaTerm(name, n).evaluate(ord); },
                     order)
        .value;
  }
  TermFamily f = productFamily([name](std::int64_t n) { return mockThetaTerm(name, n); });
  return sumUnilateral(f, r.start, order);
}

Series buildAt(MockThetaName name, const Gaussian& u, const Exponent& k, const Exponent& order) {
  if (k.sign() <= 0) throw Error(ErrorKind::EvaluationError, "mock theta argument needs a positive q-exponent");
  return build(name, order / k).substitute(u, k).truncated(order);
}

}  // namespace qmock
