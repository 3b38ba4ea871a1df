#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmock/bilateral.hpp"
#include "qmock/series.hpp"

namespace qmock {

enum class MockThetaName {
  f3, phi3, chi3, psi3, nu3,
  f0, f1, F0, F1, phi0, phi1, psi0, psi1, chi0, chi1,
  phi6, psi6, rho6, sigma6, lambda6, mu6, phi6minus, psi6minus,
  S0, S1, T0, T1,
};

enum class Summability { Ordinary, Cesaro };

struct MockThetaId {
  MockThetaName name;
  int order;  // 3, 5, 6 or 8
  Summability summability;
  std::string_view id;          // registry spelling, e.g. "phi6minus"
  std::string_view definition;  // summand in the expression language
};

const std::vector<MockThetaId>& allMockThetas();
const MockThetaId& mockTheta(MockThetaName name);
std::optional<MockThetaId> mockThetaByName(std::string_view id);

// the q-series to O(q^order); only mu6 goes through Cesaro summation
Series build(MockThetaName name, const Exponent& order);
// build(name) evaluated at u q^k
Series buildAt(MockThetaName name, const Gaussian& u, const Exponent& k, const Exponent& order);
// the summand as a product, for callers that want valuations
PochProduct mockThetaTerm(MockThetaName name, std::int64_t n);
std::int64_t mockThetaStart(MockThetaName name);

}  // namespace qmock
