#include "qmock/bilateral.hpp"

#include <vector>

#include "qmock/error.hpp"

namespace qmock {

namespace {

std::optional<Exponent> boundOf(const Lead& l) {
  if (l.isZero()) return std::nullopt;
  if (l.isPole()) throw Error(ErrorKind::PolePochhammer, "term with a vanishing divisor");
  return l.val;
}

// a > b with "vanished" treated as +infinity
bool grows(const std::optional<Exponent>& next, const std::optional<Exponent>& prev) {
  if (!next) return true;
  if (!prev) return false;
  return *next > *prev;
}

const Monomial kQ = Monomial::q(1);

}  // namespace

TermFamily productFamily(std::function<PochProduct(std::int64_t r)> term) {
  TermFamily f;
  f.termAt = [term](std::int64_t r, const Exponent& order) { return term(r).evaluate(order); };
  f.valuationBound = [term](std::int64_t r) { return boundOf(term(r).lead()); };
  return f;
}

FormalValidity checkValidity(const TermFamily& f, const SumOptions& opts) {
  for (int dir : {1, -1}) {
    std::int64_t start = dir == 1 ? 0 : -1;
    std::optional<Exponent> prev;
    bool havePrev = false;
    for (std::int64_t k = 0; k < opts.horizon; ++k) {
      std::int64_t r = start + dir * k;
      auto v = f.valuationBound(r);
      if (k >= opts.horizon / 2 && havePrev && !grows(v, prev))
        return FormalValidity{false, dir == 1 ? Direction::Positive : Direction::Negative, r};
      prev = v;
      havePrev = true;
    }
  }
  return FormalValidity{};
}

std::optional<Cutoff> findCutoff(const std::function<std::optional<Exponent>(std::int64_t)>& bound,
                                 std::int64_t start, int dir, const Exponent& order, std::int64_t window,
                                 std::int64_t cap) {
  Cutoff c;
  std::optional<Exponent> prev;
  bool havePrev = false;
  std::int64_t run = 0;
  for (std::int64_t k = 0; k < cap; ++k) {
    auto v = bound(start + dir * k);
    bool past = !v || *v >= order;
    if (past && (!havePrev || grows(v, prev))) ++run;
    else run = 0;
    c.bounds.push_back(v);
    if (run >= window) {
      c.count = k + 1 - run;
      c.bounds.resize(static_cast<std::size_t>(c.count));
      return c;
    }
    prev = v;
    havePrev = true;
  }
  return std::nullopt;
}

Series sumDirection(const TermFamily& f, std::int64_t start, int dir, const Exponent& order,
                    const SumOptions& opts) {
  auto cut = findCutoff(f.valuationBound, start, dir, order, opts.window, opts.maxTerms);
  if (!cut)
    throw Error(ErrorKind::DivergentFamily,
                "term valuations did not pass O(q^" + order.toString() + ") within " +
                    std::to_string(opts.maxTerms) + " terms");
  Series total = Series::zero(order);
  for (std::int64_t k = 0; k < cut->count; ++k) {
    const auto& v = cut->bounds[static_cast<std::size_t>(k)];
    if (v && *v < order) total = total + f.termAt(start + dir * k, order);
  }
  return total.truncated(order);
}

Series sumUnilateral(const TermFamily& f, std::int64_t start, const Exponent& order, const SumOptions& opts) {
  return sumDirection(f, start, 1, order, opts);
}

Series sumBilateral(const TermFamily& f, const Exponent& order, const SumOptions& opts) {
  FormalValidity v = checkValidity(f, opts);
  if (!v.ok)
    throw Error(ErrorKind::DivergentFamily,
                std::string("valuations do not grow in the ") +
                    (v.failing == Direction::Positive ? "positive" : "negative") + " direction (index " +
                    std::to_string(v.witness) + ")");
  return (sumDirection(f, 0, 1, order, opts) + sumDirection(f, -1, -1, order, opts)).truncated(order);
}

// ---------------------------------------------------------------------------

TermFamily twoPsiTwoFamily(const Monomial& a, const Monomial& b, const Monomial& c, const Monomial& d,
                           const Monomial& z) {
  return productFamily([=](std::int64_t n) {
    PochProduct p;
    p.times(z.pow(n)).poch(a, QStep(1), n).poch(c, QStep(1), n).poch(b, QStep(1), n, -1).poch(d, QStep(1), n, -1);
    return p;
  });
}

Series twoPsiTwo(const Monomial& a, const Monomial& b, const Monomial& c, const Monomial& d, const Monomial& z,
                 const Exponent& order) {
  return sumBilateral(twoPsiTwoFamily(a, b, c, d, z), order);
}

Series twoPsiTwoSplit(const Monomial& a, const Monomial& b, const Monomial& c, const Monomial& d,
                      const Monomial& z, const Exponent& order) {
  Series pos = sumUnilateral(twoPsiTwoFamily(a, b, c, d, z), 0, order);
  Monomial ratio = (b * d) / (a * c * z);
  TermFamily reflected = productFamily([=](std::int64_t n) {
    PochProduct p;
    p.times(ratio.pow(n))
        .poch(kQ / b, QStep(1), n)
        .poch(kQ / d, QStep(1), n)
        .poch(kQ / a, QStep(1), n, -1)
        .poch(kQ / c, QStep(1), n, -1);
    return p;
  });
  return (pos + sumUnilateral(reflected, 1, order)).truncated(order);
}

std::pair<Series, Series> sixPsiSix(const Monomial& a, const Monomial& b, const Monomial& c, const Monomial& d,
                                    const Monomial& e, const Exponent& order) {
  auto root = Gaussian::exactSqrt(a.unit);
  if (!root) throw Error(ErrorKind::EvaluationError, "6psi6 needs a parameter a with an exact square root");
  Monomial ra(*root, a.exponent / Exponent(2));
  Monomial aq = a * kQ;
  Monomial arg = (kQ * a * a) / (b * c * d * e);
  TermFamily fam = productFamily([=](std::int64_t n) {
    PochProduct p;
    QStep s(1);
    p.times(arg.pow(n))
        .poch(kQ * ra, s, n)
        .poch(-(kQ * ra), s, n)
        .poch(b, s, n)
        .poch(c, s, n)
        .poch(d, s, n)
        .poch(e, s, n)
        .poch(ra, s, n, -1)
        .poch(-ra, s, n, -1)
        .poch(aq / b, s, n, -1)
        .poch(aq / c, s, n, -1)
        .poch(aq / d, s, n, -1)
        .poch(aq / e, s, n, -1);
    return p;
  });
  Series lhs = sumBilateral(fam, order);
  PochProduct rhs;
  QStep s(1);
  for (const Monomial& m : {aq, aq / (b * c), aq / (b * d), aq / (b * e), aq / (c * d), aq / (c * e),
                            aq / (d * e), kQ, kQ / a})
    rhs.pochInfinite(m, s);
  for (const Monomial& m : {aq / b, aq / c, aq / d, aq / e, kQ / b, kQ / c, kQ / d, kQ / e, arg})
    rhs.pochInfinite(m, s, -1);
  return {lhs, rhs.evaluate(order)};
}

namespace {

PochProduct g3Term(const Monomial& s, const Monomial& t, std::int64_t n) {
  PochProduct p;
  p.times((s * t).pow(n) * Monomial::q(n * n)).poch(s * kQ, QStep(1), n, -1).poch(t * kQ, QStep(1), n, -1);
  return p;
}

}  // namespace

Series g3Family(const Monomial& s, const Monomial& t, const Exponent& order) {
  TermFamily f = productFamily([=](std::int64_t n) { return g3Term(s, t, n); });
  return sumUnilateral(f, 0, order);
}

Series g3Star(const Monomial& s, const Monomial& t, const Exponent& order) {
  return sumBilateral(productFamily([=](std::int64_t n) { return g3Term(s, t, n); }), order);
}

Series gUniversal3(const Monomial& x, QStep base, const Exponent& order) {
  Monomial Q = base.base();
  TermFamily f = productFamily([=](std::int64_t n) {
    PochProduct p;
    p.times(Q.pow(n * n + n)).poch(x, base, n + 1, -1).poch(Q / x, base, n + 1, -1);
    return p;
  });
  return sumUnilateral(f, 0, order);
}

std::pair<Series, Series> linkCheck(const Monomial& x, const Exponent& order) {
  Series lhs = g3Family(x, kQ / x, order);
  PochProduct factor;
  factor.binomial(x).binomial(kQ / x);
  Lead fl = factor.lead();
  Series g = gUniversal3(x, QStep(1), order - fl.val);
  return {lhs, (factor.evaluate(order - g.valuationBound().value_or(0)) * g).truncated(order)};
}

Series g5Star(const Monomial& w, const Monomial& y, const Exponent& order) {
  return sumBilateral(productFamily([=](std::int64_t n) {
                        PochProduct p;
                        p.times(w.pow(n) * Monomial::q(n * n)).poch(y, QStep(1), n, -1);
                        return p;
                      }),
                      order);
}

Series g6(const Monomial& a, const Monomial& b, const Monomial& d, const Monomial& z, const Exponent& order) {
  QStep two(2);
  return sumBilateral(productFamily([=](std::int64_t r) {
                        PochProduct p;
                        p.times(z.pow(r) * Monomial::q(r * r)).poch(a, two, r).poch(b, two, r, -1).poch(d, two, r, -1);
                        return p;
                      }),
                      order);
}

Series g8(const Monomial& a, const Monomial& b, const Monomial& z, const Exponent& order) {
  QStep two(2);
  return sumBilateral(productFamily([=](std::int64_t r) {
                        PochProduct p;
                        p.times(z.pow(r) * Monomial::q(r * r)).poch(a, two, r).poch(b, two, r, -1);
                        return p;
                      }),
                      order);
}

Series appellLerchM(const Monomial& x, QStep base, const Monomial& z, const Exponent& order) {
  Monomial xz = x * z;
  if (xz.unit.isOne() && (xz.exponent / base.scale).isInteger())
    throw Error(ErrorKind::PoleAppellLerch,
                "x*z = " + xz.toString() + " makes 1 - Q^(r-1) x z vanish for some integer r");
  Monomial Q = base.base();
  TermFamily f = productFamily([=](std::int64_t r) {
    PochProduct p;
    Monomial sign(Gaussian(r % 2 == 0 ? 1 : -1), 0);
    p.times(sign * Q.pow(r * (r - 1) / 2) * z.pow(r)).binomial(Q.pow(r - 1) * xz, -1);
    return p;
  });
  PochProduct theta;
  theta.pochInfinite(z, base, -1).pochInfinite(Q / z, base, -1).pochInfinite(Q, base, -1);
  Lead tl = theta.lead();
  Series sum = sumBilateral(f, order - tl.val);
  auto sv = sum.valuationBound();
  Series th = theta.evaluate(order - (sv ? *sv : Exponent(0)));
  return (th * sum).truncated(order);
}

Series gUniversal2(const Monomial& x, QStep base, const Exponent& order) {
  Monomial Q = base.base();
  TermFamily f = productFamily([=](std::int64_t n) {
    PochProduct p;
    p.times(Q.pow(n * (n + 1) / 2)).poch(-Q, base, n).poch(x, base, n + 1, -1).poch(Q / x, base, n + 1, -1);
    return p;
  });
  return sumUnilateral(f, 0, order);
}

}  // namespace qmock
