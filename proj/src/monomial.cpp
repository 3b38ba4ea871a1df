#include "qmock/monomial.hpp"

#include <cctype>

#include "qmock/error.hpp"

namespace qmock {

Monomial::Monomial(Gaussian u, Exponent e) : unit(std::move(u)), exponent(e) {
  if (unit.isZero()) throw Error(ErrorKind::EvaluationError, "monomial with zero coefficient");
}

Monomial Monomial::pow(const Exponent& k) const {
  if (k.isInteger()) return pow(k.num());
  if (!unit.isOne())
    throw Error(ErrorKind::NonIntegralUnitPower,
                "(" + toString() + ")^(" + k.toString() + ") needs a unit coefficient of 1");
  return Monomial(Gaussian(1), exponent * k);
}

std::string Monomial::toString() const {
  std::string e = exponent.isInteger() && exponent.sign() >= 0 ? exponent.toString()
                                                                : "(" + exponent.toString() + ")";
  if (exponent.isZero()) return unit.toString();
  std::string qpart = exponent == Exponent(1) ? "q" : "q^" + e;
  if (unit.isOne()) return qpart;
  if (unit == Gaussian(-1)) return "-" + qpart;
  std::string u = unit.toString();
  if (!unit.isReal() && sgn(unit.re()) != 0) u = "(" + u + ")";
  return u + "*" + qpart;
}

namespace {

Exponent parseExponent(std::string s) {
  if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Exponent(std::stoll(s));
    return Exponent(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::SyntaxError, "bad exponent '" + s + "'");
  }
}

}  // namespace

Monomial Monomial::parse(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto qpos = s.find('q');
  if (qpos == std::string::npos) return Monomial(Gaussian::parse(s), 0);
  std::string unitText = s.substr(0, qpos);
  std::string rest = s.substr(qpos + 1);
  if (!unitText.empty() && unitText.back() == '*') unitText.pop_back();
  if (!unitText.empty() && unitText.front() == '(' && unitText.back() == ')')
    unitText = unitText.substr(1, unitText.size() - 2);
  Gaussian unit(1);
  if (unitText == "-") unit = Gaussian(-1);
  else if (!unitText.empty() && unitText != "+") unit = Gaussian::parse(unitText);
  Exponent e(1);
  if (!rest.empty()) {
    if (rest[0] != '^') throw Error(ErrorKind::SyntaxError, "bad monomial '" + raw + "'");
    e = parseExponent(rest.substr(1));
  }
  return Monomial(unit, e);
}

QStep::QStep(Exponent s) : scale(s) {
  if (s.sign() <= 0) throw Error(ErrorKind::EvaluationError, "q-step must have positive scale");
}

}  // namespace qmock
