#include "qmock/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qmock/dsl/parser.hpp"
#include "qmock/error.hpp"

namespace qmock {

using numeric::Complex;
using numeric::NumericBindings;
using numeric::NumericOptions;
using numeric::Real;

PrimitiveRoot::PrimitiveRoot(long m, long j) : order(m), index(m > 0 ? ((j % m) + m) % m : j) {
  if (m < 1 || std::gcd(index, m) != 1)
    throw Error(ErrorKind::RootClassMismatch,
                "exp(2 pi i " + std::to_string(j) + "/" + std::to_string(m) + ") is not a primitive root of order " +
                    std::to_string(m));
}

Complex PrimitiveRoot::value(mpfr_prec_t bits) const { return Complex::rootOfUnity(index, order, bits); }

std::string PrimitiveRoot::toString() const {
  return "exp(2 pi i " + std::to_string(index) + "/" + std::to_string(order) + ")";
}

namespace {

bool orderIs(const PrimitiveRoot& z, long mod, long rem) { return z.order % mod == rem; }

std::vector<PrimitiveRoot> roots(std::initializer_list<std::pair<long, long>> list) {
  std::vector<PrimitiveRoot> out;
  for (auto [m, j] : list) out.emplace_back(m, j);
  return out;
}

RadialCase make(std::string id, std::string ref, std::string cls, long mod, long rem, long sub, long div,
                std::string mock, std::string theta, std::string complement, std::string finite,
                std::vector<PrimitiveRoot> samples) {
  RadialCase c;
  c.id = std::move(id);
  c.ref = std::move(ref);
  c.rootClass = std::move(cls);
  c.admits = [=](const PrimitiveRoot& z) { return orderIs(z, mod, rem); };
  c.kOf = [=](const PrimitiveRoot& z) { return (z.order - sub) / div; };
  c.mock = std::move(mock);
  c.theta = std::move(theta);
  c.complement = std::move(complement);
  c.finiteSum = std::move(finite);
  c.sampleRoots = std::move(samples);
  return c;
}

std::vector<RadialCase> buildCases() {
  std::vector<RadialCase> v;

  // third order
  v.push_back(make("rad-f3", "Eq. (foreq)", "m = 2k", 2, 0, 0, 2, "f3(q)",
                   "(-1)^k*poch(q;q;inf)/poch(-q;q;inf)^2",
                   "-sum(n=1..inf, poch(-1,-1;q;n)*q^n)",
                   "-4*sum(n=0..k-1, poch(-q;q;n)^2*q^(n+1))", roots({{2, 1}, {4, 1}, {6, 1}})));
  // f3 - b(q) and the complement differ by a term that only tends to zero
  v.back().complementExact = false;
  v.push_back(make("rad-phi3", "Eq. (philim)", "m = 4k", 4, 0, 0, 4, "phi3(q)",
                   "poch(q^2,-q,-q;q^2;inf)/poch(-q^2,q;q^2;inf)",
                   "-sum(r=1..inf, poch(-1;q^2;r)*q^r)",
                   "-2*sum(n=0..k-1, poch(-q^2;q^2;n)*q^(n+1))", roots({{4, 1}, {8, 1}, {12, 5}})));
  v.push_back(make("rad-nu3", "Eq. (nulim)", "m = 4k+2", 4, 2, 2, 4, "nu3(q)",
                   "2*poch(-q^2;q^2;inf)^2*poch(q^4;q^4;inf)",
                   "-sum(r=0..inf, poch(-q;q^2;r)*q^r)",
                   "-sum(n=0..k, poch(-q;q^2;n)*q^n)", roots({{2, 1}, {6, 1}, {10, 3}})));
  v.push_back(make("rad-psi3", "Eq. (psilim)", "m = 2k+1", 2, 1, 1, 2, "psi3(q)",
                   "poch(q^2,-q,-q;q^2;inf)/(2*poch(-q^2,q;q^2;inf))",
                   "-sum(r=0..inf, poch(q;q^2;r)*(-1)^r)",
                   "-sum(n=0..k, poch(q;q^2;n)*(-1)^n)", roots({{1, 0}, {3, 1}, {5, 2}})));
  v.back().complementCesaro = true;

  // fifth order
  v.push_back(make("rad-f0", "Eq. (f0lim)", "m = 2k", 2, 0, 0, 2, "f0(q)",
                   "4*q*poch(q^4,q^16,q^20;q^20;inf)/poch(q^2;q^4;inf) + poch(q^2,q^3,q^5;q^5;inf)/poch(-q;q;inf)",
                   "-2*psi0(q)",
                   "-2*sum(n=0..k-1, poch(-q;q;n)*q^((n+1)*(n+2)/2))", roots({{2, 1}, {4, 1}, {6, 5}})));
  v.push_back(make("rad-f1", "Eq. (f1lim)", "m = 2k", 2, 0, 0, 2, "f1(q)",
                   "4*poch(q^8,q^12,q^20;q^20;inf)/poch(q^2;q^4;inf) - poch(q,q^4,q^5;q^5;inf)/poch(-q;q;inf)",
                   "-2*psi1(q)",
                   "-2*sum(n=0..k-1, poch(-q;q;n)*q^(n*(n+1)/2))", roots({{2, 1}, {4, 1}, {6, 5}})));
  v.push_back(make("rad-F0", "Eq. (F0lim)", "m = 4k+2", 4, 2, 2, 4, "F0(q^2)",
                   "q*poch(q^4,q^16,q^20;q^20;inf)/poch(q^2;q^4;inf) + poch(q^2,q^3,q^5;q^5;inf)/poch(-q;q;inf)",
                   "1 - phi0(-q^2)",
                   "-sum(n=1..k, poch(q^2;q^4;n)*(-1)^n*q^(2*n^2))", roots({{2, 1}, {6, 1}, {10, 1}})));
  v.push_back(make("rad-F1", "Eq. (F1lim)", "m = 4k+2", 4, 2, 2, 4, "F1(q^2)",
                   "poch(q^8,q^12,q^20;q^20;inf)/(q*poch(q^2;q^4;inf)) - poch(q,q^4,q^5;q^5;inf)/(q*poch(-q;q;inf))",
                   "phi1(-q^2)/q^2",
                   "-sum(n=0..k, poch(q^2;q^4;n)*(-1)^n*q^(2*n^2+4*n))", roots({{2, 1}, {6, 1}, {10, 1}})));

  // sixth order
  v.push_back(make("rad-sigma6", "Eq. (sig6lim)", "m = 2k+1", 2, 1, 1, 2, "sigma6(q)",
                   "(2*poch(-q;q^2;inf)^2*poch(-q^3,-q^3,q^6;q^6;inf) - poch(q;q^2;inf)^2*poch(q^3,q^3,q^6;q^6;inf))/4",
                   "-mu6(q)/2",
                   "-sum(n=0..k, poch(q;q^2;n)/poch(-q;q;n)*(-1)^n)/2", roots({{1, 0}, {3, 1}, {5, 1}})));
  v.back().complementCesaro = true;
  v.push_back(make("rad-phi6", "Eq. (phi6lim)", "m = 2k", 2, 0, 0, 2, "phi6(q)",
                   "poch(-q;q;inf)/poch(q^2;q^4;inf)*(2*poch(-q^2;q^4;inf)^2*poch(-q^6,-q^6,q^12;q^12;inf)"
                   " - poch(q^2;q^4;inf)^2*poch(q^6,q^6,q^12;q^12;inf))",
                   "-2*phi6minus(q)",
                   "-2*sum(n=1..k, poch(-q;q;2*n-1)/poch(q;q^2;n)*q^n)", roots({{2, 1}, {4, 1}, {6, 1}})));
  v.push_back(make("rad-psi6", "Eq. (psi6lim)", "m = 2k", 2, 0, 0, 2, "psi6(q)",
                   "3*q*poch(-q;q;inf)*poch(q^6,q^6,q^6;q^6;inf)/poch(q^2;q^2;inf)^2",
                   "-2*psi6minus(q)",
                   "-2*sum(n=1..k, poch(-q;q;2*n-2)/poch(q;q^2;n)*q^n)", roots({{2, 1}, {4, 1}, {6, 1}})));
  v.push_back(make("rad-rho6", "Eq. (rho6lim)", "m = 2k+1", 2, 1, 1, 2, "rho6(q)",
                   "3*poch(q;q^2;inf)*poch(q^3,q^3,q^3;q^3;inf)/(2*poch(q;q;inf)^2)",
                   "-lambda6(q)/2",
                   "-sum(n=0..k, poch(q;q^2;n)/poch(-q;q;n)*(-q)^n)/2", roots({{1, 0}, {3, 1}, {5, 1}})));

  // eighth order, stated at q^2
  v.push_back(make("rad-S0", "Eq. (S0lim)", "m = 8k", 8, 0, 0, 8, "S0(q^2)",
                   "poch(q^2;q^2;inf)*(poch(q;q^2;inf)^3 + poch(-q;q^2;inf)^3)/(2*poch(-q^2;q^2;inf))",
                   "-2*T0(q^2)",
                   "-2*sum(n=0..k-1, poch(-q^4;q^4;n)/poch(-q^2;q^4;n+1)*q^(2*n^2+6*n+4))",
                   roots({{8, 1}, {8, 3}, {8, 5}})));
  v.push_back(make("rad-S1", "Eq. (S1lim)", "m = 8k", 8, 0, 0, 8, "S1(q^2)",
                   "poch(q^2;q^2;inf)*(poch(-q;q^2;inf)^3 - poch(q;q^2;inf)^3)/(2*q*poch(-q^2;q^2;inf))",
                   "-2*T1(q^2)",
                   "-2*sum(n=0..k-1, poch(-q^4;q^4;n)/poch(-q^2;q^4;n+1)*q^(2*n^2+2*n))",
                   roots({{8, 1}, {8, 3}, {8, 5}})));

  RadialCase z8 = make("rad-S0-zeta8", "Eq. (mock8radeq3)", "m = 8, j = +-1 mod 8", 8, 0, 0, 8, "S0(-q^2)",
                       "-2*q*Jm(16)^3/(J(8,16)*J(2,16)) - Jm(16)^10*Jbar(2,16)/(Jm(8)^4*Jm(32)^4*J(2,16)*Jbar(10,16))"
                       " + Jbar(1,2)*J(6,16)/J(2,8)",
                       "sum(n=0..inf, q^(8*n+1)*poch(q,q^7;q^8;n)/poch(-q^8;q^8;n))",
                       "sum(n=0..inf, q^(8*n+1)*poch(q,q^7;q^8;n)/poch(-q^8;q^8;n))", roots({{8, 1}, {8, 7}}));
  z8.admits = [](const PrimitiveRoot& z) { return z.order == 8 && (z.index == 1 || z.index == 7); };
  // two more terms of the exact identity carry J_{1,8}, which tends to zero at these roots
  z8.complementExact = false;
  z8.altTheta =
      "(poch(-i*q;-q^2;inf)^3 + poch(i*q;-q^2;inf)^3)*poch(-q^2;-q^2;inf)/(2*poch(q^2;-q^2;inf))";
  z8.altComplement = "-2*T0(-q^2)";
  z8.altFiniteSum = "-2*sum(n=0..k-1, poch(-q^4;q^4;n)/poch(q^2;q^4;n+1)*q^(2*n^2+6*n+4))";
  v.push_back(std::move(z8));

  std::sort(v.begin(), v.end(), [](const RadialCase& a, const RadialCase& b) { return a.id < b.id; });
  return v;
}

dsl::NodePtr parsed(const std::string& text) { return dsl::parseExpression(text); }

NumericBindings withK(long k) {
  NumericBindings b;
  b.integers["k"] = k;
  return b;
}

void requireAdmissible(const RadialCase& c, const PrimitiveRoot& z) {
  if (!c.admits(z))
    throw Error(ErrorKind::RootClassMismatch,
                c.id + " needs a primitive root with " + c.rootClass + ", got order " + std::to_string(z.order));
}

Complex radialPoint(const PrimitiveRoot& z, double t, mpfr_prec_t bits) {
  Complex zeta = z.value(bits);
  Real tr(t, bits);
  return Complex(zeta.re() * tr, zeta.im() * tr);
}

}  // namespace

const std::vector<RadialCase>& radialCases() {
  static const std::vector<RadialCase> cases = buildCases();
  return cases;
}

const RadialCase* findRadialCase(const std::string& id) {
  for (const auto& c : radialCases())
    if (c.id == id) return &c;
  return nullptr;
}

std::vector<double> defaultSchedule(int first, int last) {
  std::vector<double> s;
  for (int j = first; j <= last; ++j) s.push_back(1.0 - std::ldexp(1.0, -j));
  return s;
}

const char* trendName(Trend t) { return t == Trend::MonotoneConverging ? "monotone-converging" : "inconclusive"; }

Complex finiteSumRHS(const RadialCase& c, const PrimitiveRoot& zeta, mpfr_prec_t bits) {
  requireAdmissible(c, zeta);
  NumericOptions o;
  o.bits = bits;
  return numeric::evaluate(parsed(c.finiteSum), zeta.value(bits), withK(c.kOf(zeta)), o);
}

Trend classifyTrend(const std::vector<double>& r, double floor) {
  if (r.size() < 2) return Trend::Inconclusive;
  std::size_t from = r.size() / 2;
  if (from > 0) --from;
  for (std::size_t i = from; i + 1 < r.size(); ++i) {
    if (!std::isfinite(r[i + 1]) || !std::isfinite(r[i])) return Trend::Inconclusive;
    if (r[i + 1] <= floor) continue;
    if (!(r[i + 1] < r[i])) return Trend::Inconclusive;
  }
  return Trend::MonotoneConverging;
}

RadialProbeResult radialProbe(const RadialCase& c, const PrimitiveRoot& zeta, const ProbeOptions& opts) {
  requireAdmissible(c, zeta);
  RadialProbeResult res;
  res.caseId = c.id;
  res.root = zeta;
  res.complementExact = c.complementExact;
  long k = c.kOf(zeta);
  NumericBindings env = withK(k);
  res.target = finiteSumRHS(c, zeta, opts.bits);

  NumericOptions o;
  o.bits = opts.bits;
  o.allowCesaro = c.complementCesaro;
  auto comp = parsed(c.complement);
  for (double t : opts.schedule) {
    if (!(t > 0 && t < 1)) throw Error(ErrorKind::EvaluationError, "radii must lie in (0, 1)");
    if (!res.radii.empty() && !(t > res.radii.back()))
      throw Error(ErrorKind::EvaluationError, "radii must increase");
    try {
      Complex d = numeric::evaluate(comp, radialPoint(zeta, t, opts.bits), env, o);
      res.radii.push_back(t);
      res.residuals.push_back((d - res.target).abs().toDouble());
      res.differences.push_back(std::move(d));
    } catch (const Error& e) {
      res.errors.push_back("t = " + std::to_string(t) + ": " + e.what());
    }
  }
  res.finalResidual = res.residuals.empty() ? INFINITY : res.residuals.back();
  if (res.errors.empty()) res.trend = classifyTrend(res.residuals, std::ldexp(1.0, -static_cast<int>(opts.bits) / 2));

  if (c.altComplement) {
    Complex at = numeric::evaluate(parsed(*c.altFiniteSum), zeta.value(opts.bits), env, o);
    Complex ad = numeric::evaluate(parsed(*c.altComplement), radialPoint(zeta, opts.schedule.back(), opts.bits), env, o);
    res.altFinalResidual = (ad - at).abs().toDouble();
    res.altTarget = std::move(at);
  }

  if (opts.direct) {
    // mock and theta grow quickly toward the circle; evaluate with enough extra bits for their size
    auto mock = parsed(c.mock), theta = parsed(c.theta);
    NumericOptions d;
    d.bits = opts.bits;
    d.adaptive = true;
    for (double t : opts.schedule) {
      if (t > opts.directMaxRadius) break;
      try {
        Complex q = radialPoint(zeta, t, opts.bits);
        Complex m = numeric::evaluate(mock, q, env, d);
        double big = std::max(0.0, m.log2Abs());
        NumericOptions wide = d;
        wide.bits = opts.bits + static_cast<mpfr_prec_t>(big) + 32;
        wide.log2Epsilon = -static_cast<double>(opts.bits) * 0.75;
        Complex qw = radialPoint(zeta, t, wide.bits);
        Complex diff = numeric::evaluate(mock, qw, env, wide) - numeric::evaluate(theta, qw, env, wide);
        res.directRadii.push_back(t);
        res.directDifferences.push_back(std::move(diff));
      } catch (const Error& e) {
        res.errors.push_back("direct t = " + std::to_string(t) + ": " + e.what());
      }
    }
  }
  return res;
}

const std::vector<ConjectureDef>& conjectures() {
  static const std::vector<ConjectureDef> defs = {
      {"mock8radeq4", "Eq. (mock8radeq4)",
       "sum(n=0..k, (-1)^n*q^(2*n^2)*poch(q^2;q^4;n)/poch(-q^4;q^4;n))",
       "sum(n=0..k, q^(8*n+1)*poch(q,q^7;q^8;n)/poch(-q^8;q^8;n))"},
      {"psiq4eq4", "Eq. (psiq4eq4)",
       "sum(r=0..k, q^(6*r+3)*poch(q^3,q^3;q^6;r)/(2*poch(-q^6;q^6;r)))",
       "sum(r=0..k, (-1)^r*q^(4*(r+1)^2)*poch(q^4;q^8;r)/poch(-q^4;q^4;2*r+1))"},
      {"psiq4eq5", "Eq. (psiq4eq5)",
       "sum(r=0..k, q^(6*r+1)*poch(q^3,q^3;q^6;r)/poch(-q^6;q^6;r))",
       "sum(r=0..k, (-1)^r*q^(2*r)*poch(q^2;q^4;r)/poch(-q^2;q^2;r))"},
  };
  return defs;
}

const ConjectureDef* findConjecture(const std::string& id) {
  std::string bare = id.rfind("conj-", 0) == 0 ? id.substr(5) : id;
  for (const auto& c : conjectures())
    if (c.id == bare) return &c;
  return nullptr;
}

double conjectureTolerance(mpfr_prec_t bits) { return std::pow(10.0, -0.2 * static_cast<double>(bits)); }

std::vector<ConjectureRow> conjectureCheck(const ConjectureDef& c, long maxK, mpfr_prec_t bits) {
  if (maxK < 0) throw Error(ErrorKind::EvaluationError, "max k must be >= 0");
  auto lhs = parsed(c.lhs), rhs = parsed(c.rhs);
  NumericOptions o;
  o.bits = bits;
  double tol = conjectureTolerance(bits);
  std::vector<ConjectureRow> rows;
  for (long k = 0; k <= maxK; ++k) {
    long m = 2 * k + 1;
    for (long j = 0; j < m; ++j) {
      if (std::gcd(j, m) != 1) continue;
      PrimitiveRoot z(m, j);
      Complex zeta = z.value(bits);
      ConjectureRow row;
      row.rootOrder = m;
      row.rootIndex = j;
      row.lhs = numeric::evaluate(lhs, zeta, withK(k), o);
      row.rhs = numeric::evaluate(rhs, zeta, withK(k), o);
      row.residual = (row.lhs - row.rhs).abs().toDouble();
      row.agree = row.residual < tol;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace qmock
