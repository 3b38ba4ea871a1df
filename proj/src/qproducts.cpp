#include "qmock/qproducts.hpp"

#include <algorithm>

#include "qmock/error.hpp"

namespace qmock {

Lead binomialLead(const Monomial& a) {
  const Exponent& e = a.exponent;
  if (e.sign() > 0) return Lead::exact(0, Gaussian(1));
  if (e.sign() < 0) return Lead::exact(e, -a.unit);
  Gaussian c = Gaussian(1) - a.unit;
  if (c.isZero()) return Lead::zero();
  return Lead::exact(0, c);
}

Lead pochLead(const Monomial& a, QStep step, std::int64_t n) {
  if (n < 0) {
    Monomial shifted = a * Monomial::q(step.scale * Exponent(n));
    return pochLead(shifted, step, -n).inverse();
  }
  Lead l = Lead::exact(0, Gaussian(1));
  for (std::int64_t j = 0; j < n; ++j) {
    Monomial f(a.unit, a.exponent + step.scale * Exponent(j));
    if (f.exponent.sign() > 0) break;  // all later factors have leading term 1
    l = l * binomialLead(f);
    if (l.isZero()) return l;
  }
  return l;
}

Lead pochInfLead(const Monomial& a, QStep step) {
  if (a.exponent.sign() < 0 || (a.exponent.isZero() && a.unit.isOne()))
    throw Error(ErrorKind::FormalDivergence,
                "(" + a.toString() + "; " + step.base().toString() + ")_inf has no formal expansion");
  if (a.exponent.isZero()) return Lead::exact(0, Gaussian(1) - a.unit);
  return Lead::exact(0, Gaussian(1));
}

Series pochFinite(const Monomial& a, QStep step, std::int64_t n, std::optional<Exponent> order) {
  if (n < 0) {
    if (!order) throw Error(ErrorKind::EvaluationError, "negative-index Pochhammer needs an order");
    return pochNeg(a, step, -n, *order);
  }
  std::vector<Exponent> exps;
  exps.reserve(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < n; ++j) {
    Exponent e = a.exponent + step.scale * Exponent(j);
    if (e.isZero() && a.unit.isOne()) return Series();  // vanishing factor
    exps.push_back(e);
  }
  if (!order) {
    Series p = Series::constant(1);
    for (const auto& e : exps) p = p.timesBinomial(a.unit, e);
    return p;
  }
  // suffix[j] = total valuation of factors j..n-1
  std::vector<Exponent> suffix(static_cast<std::size_t>(n) + 1, Exponent(0));
  for (std::int64_t j = n - 1; j >= 0; --j) {
    const Exponent& e = exps[static_cast<std::size_t>(j)];
    suffix[static_cast<std::size_t>(j)] = suffix[static_cast<std::size_t>(j) + 1] + (e.sign() < 0 ? e : Exponent(0));
  }
  Series p = Series::constant(1);
  for (std::int64_t j = 0; j < n; ++j) {
    const Exponent& e = exps[static_cast<std::size_t>(j)];
    Exponent target = *order - suffix[static_cast<std::size_t>(j) + 1];
    if (e.sign() > 0) {
      auto v = p.valuationBound();
      // exponents only grow from here on, so no later factor reaches below the target
      if (!v || *v + e >= target) break;
    }
    p = p.timesBinomial(a.unit, e).truncated(target);
  }
  return p.truncated(*order);
}

Series pochNeg(const Monomial& a, QStep step, std::int64_t n, const Exponent& order) {
  if (n <= 0) return pochFinite(a, step, -n, order);
  Monomial b = step.base() / a;
  Lead dl = pochLead(b, step, n);
  if (dl.isZero())
    throw Error(ErrorKind::PolePochhammer,
                "(" + a.toString() + "; " + step.base().toString() + ")_{-" + std::to_string(n) + "}");
  Monomial m = (-b).pow(n) * Monomial::q(step.scale * Exponent(n * (n - 1) / 2));
  Exponent t = order - m.exponent;
  Exponent need = t + dl.val + dl.val;
  if (need <= dl.val) need = dl.val + Exponent(1);
  Series d = pochFinite(b, step, n, need);
  return (m.toSeries() * invertTo(d, t)).truncated(order);
}

Series pochNegQuotient(const Monomial& a, QStep step, std::int64_t n, const Exponent& order) {
  Monomial shifted = a * Monomial::q(step.scale * Exponent(-n));
  Lead l = pochLead(shifted, step, n);
  if (l.isZero())
    throw Error(ErrorKind::PolePochhammer,
                "(" + a.toString() + "; " + step.base().toString() + ")_{-" + std::to_string(n) + "}");
  // 1/(q^v u) needs u to order - 2v; keep at least the leading term when v is very negative
  Exponent need = order + l.val + l.val;
  if (need <= l.val) need = l.val + Exponent(1);
  Series p = pochFinite(shifted, step, n, need);
  return invertTo(p, order);
}

Series pochInf(const Monomial& a, QStep step, const Exponent& order) {
  pochInfLead(a, step);
  Series p = Series::constant(1);
  for (std::int64_t j = 0;; ++j) {
    Exponent e = a.exponent + step.scale * Exponent(j);
    if (e >= order) break;
    p = p.timesBinomial(a.unit, e).truncated(order);
  }
  return p.truncated(order);
}

Series jacobiTripleProductSum(const Monomial& z, QStep step, const Exponent& order) {
  // (-z)^n Q^{n^2}: exponent s n^2 + e n is an upward parabola, so scan outward until it passes order
  Series total = Series::zero(order);
  Monomial mz = -z;
  for (int dir : {1, -1}) {
    for (std::int64_t n = (dir == 1 ? 0 : -1);; n += dir) {
      Exponent e = step.scale * Exponent(n * n) + z.exponent * Exponent(n);
      Exponent next = step.scale * Exponent((n + dir) * (n + dir)) + z.exponent * Exponent(n + dir);
      if (e >= order && next > e) break;
      if (e < order) total = total + Series::monomial(mz.unit.pow(n), e, order);
    }
  }
  return total;
}

std::pair<Series, Series> jacobiTripleProduct(const Monomial& z, const Exponent& order) {
  Series lhs = jacobiTripleProductSum(z, QStep(1), order);
  PochProduct rhs;
  QStep two(2);
  rhs.pochInfinite(z * Monomial::q(1), two).pochInfinite(Monomial::q(1) / z, two).pochInfinite(Monomial::q(2), two);
  return {lhs, rhs.evaluate(order)};
}

Series jBlock(const Monomial& x, QStep base, const Exponent& order) {
  PochProduct p;
  p.pochInfinite(x, base).pochInfinite(base.base() / x, base).pochInfinite(base.base(), base);
  return p.evaluate(order);
}

Series JSub(std::int64_t a, std::int64_t m, const Exponent& order) {
  return jBlock(Monomial::q(a), QStep(m), order);
}

Series JBar(std::int64_t a, std::int64_t m, const Exponent& order) {
  return jBlock(-Monomial::q(a), QStep(m), order);
}

Series JM(std::int64_t m, const Exponent& order) { return pochInf(Monomial::q(m), QStep(m), order); }

// ---------------------------------------------------------------------------

PochProduct& PochProduct::times(const Monomial& m) {
  coeff_ = coeff_ * m;
  return *this;
}

PochProduct& PochProduct::poch(const Monomial& a, QStep step, std::int64_t n, int power) {
  if (power == 0) return *this;
  Factor f{Kind::Finite, a, step, n, power, {}, {}};
  if (n < 0) {
    // (a;Q)_{-m} = 1 / (a Q^{-m}; Q)_m
    f.a = a * Monomial::q(step.scale * Exponent(n));
    f.n = -n;
    f.power = -power;
  }
  f.lead = pochLead(f.a, f.step, f.n);
  factors_.push_back(std::move(f));
  return *this;
}

PochProduct& PochProduct::pochInfinite(const Monomial& a, QStep step, int power) {
  if (power == 0) return *this;
  Factor f{Kind::Infinite, a, step, 0, power, {}, pochInfLead(a, step)};
  factors_.push_back(std::move(f));
  return *this;
}

PochProduct& PochProduct::binomial(const Monomial& a, int power) {
  return poch(a, QStep(1), 1, power);
}

PochProduct& PochProduct::generic(Evaluator eval, Lead lead, int power) {
  if (power == 0) return *this;
  if (power < 0 && !lead.isExact() && !lead.isZero())
    throw Error(ErrorKind::EvaluationError, "divisor with unknown leading term");
  Factor f{Kind::Generic, Monomial(), QStep(), 0, power, std::move(eval), lead};
  factors_.push_back(std::move(f));
  return *this;
}

Lead PochProduct::lead() const {
  Lead l = Lead::exact(coeff_.exponent, coeff_.unit);
  bool zero = false, pole = false;
  for (const auto& f : factors_) {
    Lead p = f.lead.pow(f.power);
    if (p.isZero()) zero = true;
    else if (p.isPole()) pole = true;
    else l = l * p;
  }
  if (zero && pole) throw Error(ErrorKind::PolePochhammer, "vanishing factor against a pole");
  if (pole) return Lead::pole();
  if (zero) return Lead::zero();
  return l;
}

Series PochProduct::evaluate(const Exponent& order) const {
  Lead total = lead();
  if (total.isZero()) return Series();
  if (total.isPole()) throw Error(ErrorKind::PolePochhammer, "product has a vanishing divisor");
  Exponent sum = total.val;
  // rest[i] = valuation of factors i.. (with powers)
  std::vector<Exponent> rest(factors_.size() + 1, Exponent(0));
  for (std::size_t i = factors_.size(); i-- > 0;)
    rest[i] = rest[i + 1] + factors_[i].lead.val * Exponent(factors_[i].power);
  Series result = Series::monomial(coeff_.unit, coeff_.exponent);
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const Factor& f = factors_[i];
    Exponent v = f.lead.val;
    Exponent mine = v * Exponent(f.power);
    Exponent target = order - (sum - mine);
    auto expand = [&](const Exponent& ord) -> Series {
      switch (f.kind) {
        case Kind::Finite: return pochFinite(f.a, f.step, f.n, ord);
        case Kind::Infinite: return pochInf(f.a, f.step, ord);
        case Kind::Generic: return f.eval(ord);
      }
      return Series();
    };
    Series piece;
    if (f.power > 0) {
      Exponent need = target - v * Exponent(f.power - 1);
      piece = expand(need);
      if (f.power > 1) piece = piece.pow(f.power);
    } else {
      std::int64_t k = -f.power;
      Exponent invNeed = target + v * Exponent(k - 1);
      Series base = expand(invNeed + v + v);
      if (base.isZero())
        throw Error(ErrorKind::ZeroSeries, "divisor vanished to order " + (invNeed + v + v).toString());
      piece = invertTo(base, invNeed);
      if (k > 1) piece = piece.pow(k);
    }
    result = (result * piece).truncated(order - rest[i + 1]);
  }
  return result.truncated(order);
}

}  // namespace qmock
