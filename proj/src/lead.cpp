#include "qmock/lead.hpp"

#include "qmock/error.hpp"

namespace qmock {

Lead Lead::inverse() const {
  switch (kind) {
    case Kind::Zero: return pole();
    case Kind::Pole: return zero();
    case Kind::Exact: return exact(-val, coeff.inverse());
    case Kind::LowerBound: break;
  }
  throw Error(ErrorKind::EvaluationError, "cannot invert a quantity whose leading term is unknown");
}

Lead Lead::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  if (k == 0) return exact(0, Gaussian(1));
  switch (kind) {
    case Kind::Zero:
    case Kind::Pole: return *this;
    case Kind::Exact: return exact(val * Exponent(k), coeff.pow(k));
    case Kind::LowerBound: return lowerBound(val * Exponent(k));
  }
  return *this;
}

Lead Lead::negated() const {
  if (kind == Kind::Exact) return exact(val, -coeff);
  return *this;
}

std::string Lead::toString() const {
  switch (kind) {
    case Kind::Zero: return "zero";
    case Kind::Pole: return "pole";
    case Kind::Exact: return coeff.toString() + "*q^" + val.toString();
    case Kind::LowerBound: return "O(q^" + val.toString() + ")";
  }
  return "?";
}

Lead operator*(const Lead& a, const Lead& b) {
  using K = Lead::Kind;
  if ((a.kind == K::Zero && b.kind == K::Pole) || (a.kind == K::Pole && b.kind == K::Zero))
    throw Error(ErrorKind::PolePochhammer, "zero factor multiplied by a pole");
  if (a.kind == K::Zero || b.kind == K::Zero) return Lead::zero();
  if (a.kind == K::Pole || b.kind == K::Pole) return Lead::pole();
  if (a.kind == K::Exact && b.kind == K::Exact) return Lead::exact(a.val + b.val, a.coeff * b.coeff);
  return Lead::lowerBound(a.val + b.val);
}

Lead operator+(const Lead& a, const Lead& b) {
  using K = Lead::Kind;
  if (a.kind == K::Zero) return b;
  if (b.kind == K::Zero) return a;
  if (a.kind == K::Pole || b.kind == K::Pole) return Lead::pole();
  if (a.kind == K::Exact && b.kind == K::Exact) {
    if (a.val < b.val) return a;
    if (b.val < a.val) return b;
    Gaussian c = a.coeff + b.coeff;
    if (c.isZero()) return Lead::lowerBound(a.val);
    return Lead::exact(a.val, c);
  }
  if (a.kind == K::Exact && a.val < b.val) return a;
  if (b.kind == K::Exact && b.val < a.val) return b;
  return Lead::lowerBound(std::min(a.val, b.val));
}

}  // namespace qmock
