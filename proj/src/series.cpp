#include "qmock/series.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "qmock/error.hpp"

namespace qmock {

namespace {

// first index k (in units 1/den) with k/den >= order
std::int64_t indexLimit(const Exponent& order, std::int64_t den) { return (order * den).ceil(); }

Series::Order minOrder(const Series::Order& a, const Series::Order& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

Series Series::zero(Order order) {
  Series s;
  s.order_ = order;
  return s;
}

Series Series::constant(const Gaussian& c, Order order) { return monomial(c, 0, order); }

Series Series::monomial(const Gaussian& c, const Exponent& e, Order order) {
  Series s;
  s.order_ = order;
  s.den_ = e.den();
  s.low_ = e.num();
  if (!c.isZero()) s.c_.push_back(c);
  s.normalize();
  return s;
}

Series Series::fromTerms(const std::vector<std::pair<Exponent, Gaussian>>& terms, Order order) {
  Series s = zero(order);
  for (const auto& [e, c] : terms) s = s + monomial(c, e, order);
  return s;
}

std::optional<Exponent> Series::valuation() const {
  if (c_.empty()) return std::nullopt;
  return Exponent(low_, den_);
}

std::optional<Exponent> Series::valuationBound() const {
  if (!c_.empty()) return Exponent(low_, den_);
  return order_;
}

Gaussian Series::leadingCoefficient() const {
  if (c_.empty()) throw Error(ErrorKind::ZeroSeries, "no leading coefficient");
  return c_.front();
}

Gaussian Series::coefficient(const Exponent& e) const {
  if (order_ && e >= *order_)
    throw Error(ErrorKind::BeyondTruncation,
                "coefficient of q^" + e.toString() + " requested from series known to O(q^" +
                    order_->toString() + ")");
  if (c_.empty()) return Gaussian(0);
  if (den_ % e.den() != 0) return Gaussian(0);
  std::int64_t idx = e.num() * (den_ / e.den());
  if (idx < low_ || idx >= low_ + static_cast<std::int64_t>(c_.size())) return Gaussian(0);
  return c_[static_cast<std::size_t>(idx - low_)];
}

std::vector<std::pair<Exponent, Gaussian>> Series::terms() const {
  std::vector<std::pair<Exponent, Gaussian>> out;
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (!c_[k].isZero()) out.emplace_back(Exponent(low_ + static_cast<std::int64_t>(k), den_), c_[k]);
  return out;
}

std::size_t Series::termCount() const {
  return static_cast<std::size_t>(
      std::count_if(c_.begin(), c_.end(), [](const Gaussian& g) { return !g.isZero(); }));
}

std::optional<Exponent> Series::maxExponent() const {
  if (c_.empty()) return std::nullopt;
  return Exponent(low_ + static_cast<std::int64_t>(c_.size()) - 1, den_);
}

void Series::normalize() {
  if (order_ && !c_.empty()) {
    std::int64_t lim = indexLimit(*order_, den_);
    std::int64_t keep = std::clamp<std::int64_t>(lim - low_, 0, static_cast<std::int64_t>(c_.size()));
    c_.resize(static_cast<std::size_t>(keep));
  }
  while (!c_.empty() && c_.back().isZero()) c_.pop_back();
  std::size_t front = 0;
  while (front < c_.size() && c_[front].isZero()) ++front;
  if (front == c_.size()) {
    c_.clear();
    low_ = 0;
    den_ = 1;
    return;
  }
  if (front > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(front));
    low_ += static_cast<std::int64_t>(front);
  }
  if (den_ == 1) return;
  std::int64_t g = std::gcd(den_, low_);
  for (std::size_t k = 1; k < c_.size() && g > 1; ++k)
    if (!c_[k].isZero()) g = std::gcd(g, low_ + static_cast<std::int64_t>(k));
  if (g <= 1) return;
  std::vector<Gaussian> packed;
  packed.reserve(c_.size() / static_cast<std::size_t>(g) + 1);
  for (std::size_t k = 0; k < c_.size(); k += static_cast<std::size_t>(g)) packed.push_back(std::move(c_[k]));
  c_ = std::move(packed);
  low_ /= g;
  den_ /= g;
}

Series Series::rescaled(std::int64_t den) const {
  if (den == den_) return *this;
  std::int64_t f = den / den_;
  Series s;
  s.order_ = order_;
  s.den_ = den;
  s.low_ = low_ * f;
  if (!c_.empty()) {
    s.c_.resize((c_.size() - 1) * static_cast<std::size_t>(f) + 1);
    for (std::size_t k = 0; k < c_.size(); ++k) s.c_[k * static_cast<std::size_t>(f)] = c_[k];
  }
  return s;
}

Series Series::truncated(const Exponent& order) const {
  Series s = *this;
  s.order_ = minOrder(order_, order);
  s.normalize();
  return s;
}

Series Series::scaled(const Gaussian& c) const {
  if (c.isZero()) return zero(order_);
  Series s = *this;
  for (auto& x : s.c_) x *= c;
  return s;
}

Series Series::shifted(const Exponent& e) const {
  std::int64_t den = checkedLcm(den_, e.den());
  Series s = rescaled(den);
  s.low_ += e.num() * (den / e.den());
  if (s.order_) s.order_ = *s.order_ + e;
  s.normalize();
  return s;
}

Series Series::substitute(const Gaussian& u, const Exponent& k) const {
  if (k.sign() <= 0) throw Error(ErrorKind::EvaluationError, "substitution exponent must be positive");
  Series s;
  s.den_ = den_ * k.den();
  if (order_) s.order_ = *order_ * k;
  if (c_.empty()) return s;
  std::int64_t knum = k.num();
  s.low_ = low_ * knum;
  s.c_.resize((c_.size() - 1) * static_cast<std::size_t>(knum) + 1);
  bool unit = u.isOne();
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j].isZero()) continue;
    Gaussian coeff = c_[j];
    if (!unit) {
      std::int64_t idx = low_ + static_cast<std::int64_t>(j);
      if (idx % den_ != 0)
        throw Error(ErrorKind::NonIntegralUnitPower,
                    "unit " + u.toString() + " raised to q^" + Exponent(idx, den_).toString());
      coeff *= u.pow(idx / den_);
    }
    s.c_[j * static_cast<std::size_t>(knum)] = std::move(coeff);
  }
  s.normalize();
  return s;
}

Series Series::operator-() const {
  Series s = *this;
  for (auto& x : s.c_) x = -x;
  return s;
}

Series operator+(const Series& a, const Series& b) {
  Series::Order order = minOrder(a.order_, b.order_);
  if (b.c_.empty()) return order ? a.truncated(*order) : a;
  if (a.c_.empty()) return order ? b.truncated(*order) : b;
  std::int64_t den = checkedLcm(a.den_, b.den_);
  Series x = a.rescaled(den), y = b.rescaled(den);
  Series s;
  s.den_ = den;
  s.order_ = order;
  s.low_ = std::min(x.low_, y.low_);
  std::int64_t high = std::max(x.low_ + static_cast<std::int64_t>(x.c_.size()),
                               y.low_ + static_cast<std::int64_t>(y.c_.size()));
  if (order) high = std::min(high, indexLimit(*order, den));
  if (high <= s.low_) {
    s.c_.clear();
    s.normalize();
    return s;
  }
  s.c_.assign(static_cast<std::size_t>(high - s.low_), Gaussian());
  for (const Series* src : {&x, &y}) {
    for (std::size_t k = 0; k < src->c_.size(); ++k) {
      std::int64_t idx = src->low_ + static_cast<std::int64_t>(k);
      if (idx >= high) break;
      if (!src->c_[k].isZero()) s.c_[static_cast<std::size_t>(idx - s.low_)] += src->c_[k];
    }
  }
  s.normalize();
  return s;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
  auto va = a.valuationBound(), vb = b.valuationBound();
  if (!va || !vb) return Series();  // exact zero factor
  Series::Order order;
  if (a.order_) order = *a.order_ + *vb;
  if (b.order_) order = minOrder(order, *b.order_ + *va);
  if (a.c_.empty() || b.c_.empty()) return Series::zero(order);
  std::int64_t den = checkedLcm(a.den_, b.den_);
  Series x = a.rescaled(den), y = b.rescaled(den);
  Series s;
  s.den_ = den;
  s.order_ = order;
  s.low_ = x.low_ + y.low_;
  std::int64_t high = x.low_ + y.low_ + static_cast<std::int64_t>(x.c_.size() + y.c_.size()) - 1;
  if (order) high = std::min(high, indexLimit(*order, den));
  if (high <= s.low_) {
    s.normalize();
    return s;
  }
  std::size_t width = static_cast<std::size_t>(high - s.low_);
  s.c_.assign(width, Gaussian());
  std::vector<std::size_t> ny;
  for (std::size_t k = 0; k < y.c_.size(); ++k)
    if (!y.c_[k].isZero()) ny.push_back(k);
  for (std::size_t i = 0; i < x.c_.size() && i < width; ++i) {
    if (x.c_[i].isZero()) continue;
    for (std::size_t k : ny) {
      std::size_t idx = i + k;
      if (idx >= width) break;
      s.c_[idx].addProduct(x.c_[i], y.c_[k]);
    }
  }
  s.normalize();
  return s;
}

bool operator==(const Series& a, const Series& b) {
  return a.order_ == b.order_ && a.den_ == b.den_ && a.low_ == b.low_ && a.c_ == b.c_;
}

Series Series::pow(std::int64_t e) const {
  if (e < 0) return invert(*this).pow(-e);
  Series result = constant(1);
  Series base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Series Series::timesBinomial(const Gaussian& c, const Exponent& e) const {
  if (c.isZero()) return *this;
  // (1 - c q^e) has valuation min(0, e), leading coefficient 1, -c, or 1-c
  Series::Order order = order_;
  Exponent v = e.sign() < 0 ? e : Exponent(0);
  if (e.isZero()) {
    Gaussian f = Gaussian(1) - c;
    if (f.isZero()) return Series();
    return scaled(f);
  }
  if (order) order = *order + v;
  if (c_.empty()) return zero(order);
  std::int64_t den = checkedLcm(den_, e.den());
  Series x = rescaled(den);
  std::int64_t shift = e.num() * (den / e.den());
  Series s;
  s.den_ = den;
  s.order_ = order;
  s.low_ = std::min(x.low_, x.low_ + shift);
  std::int64_t high = std::max(x.low_, x.low_ + shift) + static_cast<std::int64_t>(x.c_.size());
  if (order) high = std::min(high, indexLimit(*order, den));
  if (high <= s.low_) {
    s.normalize();
    return s;
  }
  s.c_.assign(static_cast<std::size_t>(high - s.low_), Gaussian());
  for (std::size_t k = 0; k < x.c_.size(); ++k) {
    if (x.c_[k].isZero()) continue;
    std::int64_t idx = x.low_ + static_cast<std::int64_t>(k);
    if (idx < high) s.c_[static_cast<std::size_t>(idx - s.low_)] += x.c_[k];
    if (idx + shift < high) s.c_[static_cast<std::size_t>(idx + shift - s.low_)].subProduct(c, x.c_[k]);
  }
  s.normalize();
  return s;
}

Series invertTo(const Series& s, const Series::Order& want) {
  if (s.c_.empty()) throw Error(ErrorKind::ZeroSeries, "cannot invert a series with no known nonzero term");
  Exponent v(s.low_, s.den_);
  Series::Order order = want;
  if (s.order_) order = minOrder(order, *s.order_ - v - v);
  if (!order) {
    if (s.c_.size() == 1) return Series::monomial(s.c_[0].inverse(), -v);
    throw Error(ErrorKind::EvaluationError, "inverse of an exact polynomial needs an order");
  }
  Series r;
  r.den_ = s.den_;
  r.order_ = order;
  r.low_ = -s.low_;
  std::int64_t count = indexLimit(*order, s.den_) - r.low_;
  if (count <= 0) {
    r.normalize();
    return r;
  }
  std::size_t n = static_cast<std::size_t>(count);
  Gaussian inv0 = s.c_[0].inverse();
  std::vector<std::size_t> nz;
  for (std::size_t k = 1; k < s.c_.size() && k < n; ++k)
    if (!s.c_[k].isZero()) nz.push_back(k);
  r.c_.assign(n, Gaussian());
  r.c_[0] = inv0;
  bool unitLead = s.c_[0].isOne();
  for (std::size_t m = 1; m < n; ++m) {
    Gaussian acc;
    for (std::size_t k : nz) {
      if (k > m) break;
      if (!r.c_[m - k].isZero()) acc.addProduct(s.c_[k], r.c_[m - k]);
    }
    if (acc.isZero()) continue;
    r.c_[m] = unitLead ? -acc : -(acc * inv0);
  }
  r.normalize();
  return r;
}

Series invert(const Series& s) { return invertTo(s, std::nullopt); }

Series add(const Series& a, const Series& b) { return a + b; }
Series mul(const Series& a, const Series& b) { return a * b; }

std::string Series::toString() const {
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].isZero()) continue;
    Exponent e(low_ + static_cast<std::int64_t>(k), den_);
    std::string coeff = c_[k].toString();
    bool complexCoeff = !c_[k].isReal() && sgn(c_[k].re()) != 0;
    if (complexCoeff) coeff = "(" + coeff + ")";
    std::string mono;
    if (e.isZero()) {
      mono = coeff;
    } else {
      std::string qpart = e == Exponent(1) ? "q" : "q^" + (e.isInteger() && e.sign() > 0 ? e.toString() : "(" + e.toString() + ")");
      if (c_[k].isOne()) mono = qpart;
      else if (c_[k] == Gaussian(-1)) mono = "-" + qpart;
      else mono = coeff + "*" + qpart;
    }
    if (out.empty()) {
      out = mono;
    } else if (mono[0] == '-') {
      out += " - " + mono.substr(1);
    } else {
      out += " + " + mono;
    }
  }
  if (order_) {
    std::string o = "O(q^" + (order_->isInteger() && order_->sign() >= 0 ? order_->toString() : "(" + order_->toString() + ")") + ")";
    out = out.empty() ? o : out + " + " + o;
  }
  return out.empty() ? "0" : out;
}

}  // namespace qmock
