#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qmock/dsl/ast.hpp"
#include "qmock/numeric/evaluator.hpp"
#include "qmock/numeric/mp.hpp"

namespace qmock {

struct PrimitiveRoot {
  long order = 1;  // m
  long index = 0;  // j, gcd(j, m) = 1
  PrimitiveRoot() = default;
  PrimitiveRoot(long m, long j);  // throws RootClassMismatch unless primitive
  numeric::Complex value(mpfr_prec_t bits) const;
  std::string toString() const;
};

// Radial limit  lim_{t->1} (mock(t zeta) - theta(t zeta)) = finiteSum(zeta).
//
// D(t) itself is computed through a complement series: the identity behind each limit writes
// mock - theta as a series that terminates (or converges geometrically) at zeta, and that
// series stays well conditioned as t -> 1 while mock and theta separately blow up.
// When `complementExact` is false the complement differs from mock - theta by terms that only
// vanish in the limit.
struct RadialCase {
  std::string id;
  std::string ref;
  std::string rootClass;  // human readable congruence, e.g. "m = 4k"
  std::function<bool(const PrimitiveRoot&)> admits;
  std::function<long(const PrimitiveRoot&)> kOf;  // the k of the finite sum
  std::string mock;        // expression in q
  std::string theta;       // theta companion in q, may use k
  std::string complement;  // equals mock - theta (see complementExact)
  bool complementExact = true;
  bool complementCesaro = false;
  std::string finiteSum;   // evaluated at q = zeta with k bound
  // second companion with the same limit (rad-S0-zeta8 only)
  std::optional<std::string> altTheta, altComplement, altFiniteSum;
  std::vector<PrimitiveRoot> sampleRoots;  // admissible roots of order <= 12 used in tests and listings
};

const std::vector<RadialCase>& radialCases();
const RadialCase* findRadialCase(const std::string& id);

// radii 1 - 2^-j for j = first..last
std::vector<double> defaultSchedule(int first = 4, int last = 20);

numeric::Complex finiteSumRHS(const RadialCase& c, const PrimitiveRoot& zeta, mpfr_prec_t bits = 212);

enum class Trend { MonotoneConverging, Inconclusive };
const char* trendName(Trend t);

struct RadialProbeResult {
  std::string caseId;
  PrimitiveRoot root;
  std::vector<double> radii;
  std::vector<numeric::Complex> differences;
  std::vector<double> residuals;  // |D(t_j) - target|
  numeric::Complex target;
  double finalResidual = 0;
  Trend trend = Trend::Inconclusive;
  bool complementExact = true;
  // direct mock - theta at the smaller radii, for comparison with the complement values
  std::vector<double> directRadii;
  std::vector<numeric::Complex> directDifferences;
  std::vector<std::string> errors;  // per-radius failures, recorded rather than thrown
  std::optional<numeric::Complex> altTarget;
  std::optional<double> altFinalResidual;
};

struct ProbeOptions {
  mpfr_prec_t bits = 212;
  std::vector<double> schedule = defaultSchedule();
  double directMaxRadius = 0.97;  // direct evaluation only up to this radius (costs grow quickly)
  bool direct = true;
};

RadialProbeResult radialProbe(const RadialCase& c, const PrimitiveRoot& zeta, const ProbeOptions& opts = {});

// monotone over the last half of the schedule, allowing residuals already at the precision floor
Trend classifyTrend(const std::vector<double>& residuals, double floor);

struct ConjectureDef {
  std::string id;
  std::string ref;
  std::string lhs, rhs;  // finite sums in q with upper bound k, evaluated at q = zeta of order 2k+1
};
const std::vector<ConjectureDef>& conjectures();
const ConjectureDef* findConjecture(const std::string& id);  // accepts a "conj-" prefix

struct ConjectureRow {
  long rootOrder = 1;
  long rootIndex = 0;
  numeric::Complex lhs, rhs;
  double residual = 0;
  bool agree = false;
};

// every primitive root of each odd order 1, 3, ..., 2 maxK + 1; tolerance 10^(-0.2 bits)
std::vector<ConjectureRow> conjectureCheck(const ConjectureDef& c, long maxK, mpfr_prec_t bits = 212);
double conjectureTolerance(mpfr_prec_t bits);

}  // namespace qmock
