#include "qmock/numeric/evaluator.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "qmock/dsl/parser.hpp"
#include "qmock/error.hpp"

namespace qmock::numeric {

using dsl::Bound;
using dsl::Node;
using dsl::NodeKind;
using dsl::NodePtr;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// thrown when cancellation ate the working precision; carries the extra bits wanted
class PrecisionShortfall : public Error {
 public:
  PrecisionShortfall(const std::string& what, long extra)
      : Error(ErrorKind::PrecisionExhausted, what), extra_(extra) {}
  long extra() const { return extra_; }

 private:
  long extra_;
};

std::string where(const NodePtr& n) {
  if (n->line == 0) return "";
  return " (line " + std::to_string(n->line) + ", column " + std::to_string(n->column) + ")";
}

// Decides when an infinite sum (or product) can stop. Terms are grouped into blocks; once
// the block maxima shrink geometrically the remaining tail is bounded by the geometric
// series through the latest block.
class TailWatch {
 public:
  TailWatch(double log2eps, int block) : eps_(log2eps), block_(block) {}

  bool push(double log2mag) {
    cur_ = std::max(cur_, log2mag);
    if (++fill_ < block_) return false;
    prev_ = last_;
    last_ = cur_;
    cur_ = kNegInf;
    fill_ = 0;
    if (++blocks_ < 2) return false;
    if (last_ == kNegInf) return prev_ == kNegInf;
    if (!(last_ < prev_)) return false;
    double rho = std::exp2(last_ - prev_);
    double tail = last_ + std::log2(static_cast<double>(block_)) + std::log2(rho / (1.0 - rho));
    return tail <= eps_;
  }

 private:
  double eps_;
  int block_;
  double cur_ = kNegInf, last_ = kNegInf, prev_ = kNegInf;
  int fill_ = 0;
  long blocks_ = 0;
};

struct Env {
  std::vector<std::pair<std::string, long>> idx;
  const NumericBindings* b = nullptr;

  const long* index(const std::string& n) const {
    for (auto it = idx.rbegin(); it != idx.rend(); ++it)
      if (it->first == n) return &it->second;
    if (b) {
      auto it = b->integers.find(n);
      if (it != b->integers.end()) return &it->second;
    }
    return nullptr;
  }
  const Complex* value(const std::string& n) const {
    if (!b) return nullptr;
    auto it = b->values.find(n);
    return it == b->values.end() ? nullptr : &it->second;
  }
  Env with(const std::string& n, long v) const {
    Env e = *this;
    e.idx.emplace_back(n, v);
    return e;
  }
};

const std::map<std::string, NodePtr>& definitionTrees() {
  static const std::map<std::string, NodePtr> trees = [] {
    std::map<std::string, NodePtr> m;
    for (const auto& id : allMockThetas()) m[std::string(id.id)] = dsl::parseExpression(std::string(id.definition));
    return m;
  }();
  return trees;
}

// running value of (a;b)_n for one Pochhammer argument, extended as n grows
struct PochState {
  Complex a, b;
  long n = 0;
  Complex value;
  bool negative = false;
  Complex step;  // b^n, or b^-(n+1) for negative indices
};

// last power computed at a Pow node, so q^(n^2) style terms advance by small multiplications
struct PowState {
  Complex base;
  long e = 0;
  Complex value;
};

bool same(const Complex& a, const Complex& b) { return a.re() == b.re() && a.im() == b.im(); }

class Evaluator {
 public:
  Evaluator(const NumericOptions& o, Complex q)
      : o_(o), q_(std::move(q)), eps_(o.log2Epsilon ? *o.log2Epsilon : -static_cast<double>(o.bits) * 0.75) {}

  Complex eval(const NodePtr& n, const Env& env) {
    switch (n->kind) {
      case NodeKind::Number: return Complex(Real(mpq_class(n->value), o_.bits), Real(o_.bits));
      case NodeKind::Imag: return Complex(0, 1, o_.bits);
      case NodeKind::Q: return q_;
      case NodeKind::Var: {
        if (const long* v = env.index(n->name)) return Complex(Real(mpq_class(*v), o_.bits), Real(o_.bits));
        if (const Complex* c = env.value(n->name)) return *c;
        throw Error(ErrorKind::UnboundVariable, "'" + n->name + "'" + where(n));
      }
      case NodeKind::Neg: return -eval(n->kids[0], env);
      case NodeKind::Add: return eval(n->kids[0], env) + eval(n->kids[1], env);
      case NodeKind::Sub: return eval(n->kids[0], env) - eval(n->kids[1], env);
      case NodeKind::Mul: return eval(n->kids[0], env) * eval(n->kids[1], env);
      case NodeKind::Div: {
        Complex d = eval(n->kids[1], env);
        if (d.isZero()) throw Error(ErrorKind::ZeroFactor, "division by zero" + where(n));
        return eval(n->kids[0], env) / d;
      }
      case NodeKind::Pow: return power(n, env);
      case NodeKind::Poch: return poch(n, env);
      case NodeKind::Sum: return sum(n, env);
      case NodeKind::Prod: return prod(n, env);
      case NodeKind::Call: return call(n, env);
    }
    throw Error(ErrorKind::EvaluationError, "cannot evaluate '" + dsl::print(n) + "'");
  }

 private:
  NumericOptions o_;
  Complex q_;
  double eps_;
  std::map<std::pair<const Node*, int>, PochState> poch_;
  std::map<const Node*, PowState> pow_;

  Complex one() const { return Complex(1, 0, o_.bits); }
  Complex real(long v) const { return Complex(Real(mpq_class(v), o_.bits), Real(o_.bits)); }

  // exact rational value of an exponent or bound expression
  std::optional<mpq_class> rational(const NodePtr& n, const Env& env) {
    switch (n->kind) {
      case NodeKind::Number: return mpq_class(n->value);
      case NodeKind::Var:
        if (const long* v = env.index(n->name)) return mpq_class(*v);
        return std::nullopt;
      case NodeKind::Neg: {
        auto a = rational(n->kids[0], env);
        if (!a) return std::nullopt;
        return mpq_class(-*a);
      }
      case NodeKind::Add:
      case NodeKind::Sub:
      case NodeKind::Mul:
      case NodeKind::Div: {
        auto a = rational(n->kids[0], env);
        auto b = a ? rational(n->kids[1], env) : std::nullopt;
        if (!b) return std::nullopt;
        switch (n->kind) {
          case NodeKind::Add: return mpq_class(*a + *b);
          case NodeKind::Sub: return mpq_class(*a - *b);
          case NodeKind::Mul: return mpq_class(*a * *b);
          default:
            if (sgn(*b) == 0) throw Error(ErrorKind::ZeroFactor, "division by zero" + where(n));
            return mpq_class(*a / *b);
        }
      }
      case NodeKind::Pow: {
        auto a = rational(n->kids[0], env);
        auto e = a ? rational(n->kids[1], env) : std::nullopt;
        if (!e || e->get_den() != 1 || !e->get_num().fits_slong_p()) return std::nullopt;
        long k = e->get_num().get_si();
        if (sgn(*a) == 0) return k < 0 ? std::nullopt : std::optional<mpq_class>(k == 0 ? 1 : 0);
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), a->get_num_mpz_t(), static_cast<unsigned long>(std::labs(k)));
        mpz_pow_ui(den.get_mpz_t(), a->get_den_mpz_t(), static_cast<unsigned long>(std::labs(k)));
        mpq_class r(k >= 0 ? num : den, k >= 0 ? den : num);
        r.canonicalize();
        return r;
      }
      default: return std::nullopt;
    }
  }

  long integer(const NodePtr& n, const Env& env, const char* what) {
    auto v = rational(n, env);
    if (!v || v->get_den() != 1 || !v->get_num().fits_slong_p())
      throw Error(ErrorKind::EvaluationError, std::string(what) + " must be an integer" + where(n));
    return v->get_num().get_si();
  }

  Complex power(const NodePtr& n, const Env& env) {
    auto e = rational(n->kids[1], env);
    if (!e) throw Error(ErrorKind::EvaluationError, "exponent must be rational" + where(n));
    Complex b = eval(n->kids[0], env);
    if (b.isZero()) {
      if (sgn(*e) < 0) throw Error(ErrorKind::ZeroFactor, "zero to a negative power" + where(n));
      return sgn(*e) == 0 ? one() : b;
    }
    if (e->get_den() != 1 || !e->get_num().fits_slong_p()) return b.pow(*e);
    long k = e->get_num().get_si();
    auto it = pow_.find(n.get());
    if (it != pow_.end() && same(it->second.base, b) && k >= it->second.e && k - it->second.e <= 64) {
      PowState& st = it->second;
      if (k > st.e) st.value *= b.pow(k - st.e);
      st.e = k;
      return st.value;
    }
    Complex v = b.pow(k);
    pow_.insert_or_assign(n.get(), PowState{b, k, v});
    return v;
  }

  // ---- sums ------------------------------------------------------------------

  // sum of term(start), term(start+dir), ... until the tail estimate clears epsilon
  Complex series(const std::function<Complex(long)>& term, long start, int dir, const std::string& what) {
    return o_.allowCesaro ? cesaro(term, start, dir, what) : ordinary(term, start, dir, what);
  }

  void checkCancellation(double maxLog2, long count, const std::string& what) {
    double lost = maxLog2 - static_cast<double>(o_.bits) + std::log2(static_cast<double>(count) + 1.0) + 2.0;
    if (lost > eps_)
      throw PrecisionShortfall(what + ": terms of size 2^" + std::to_string(static_cast<long>(maxLog2)) +
                                   " cancel below the working precision",
                               static_cast<long>(std::ceil(lost - eps_)) + 16);
  }

  Complex ordinary(const std::function<Complex(long)>& term, long start, int dir, const std::string& what) {
    TailWatch watch(eps_ - 1.0, o_.block);
    Complex s(o_.bits);
    double maxLog2 = kNegInf;
    for (long k = 0; k < o_.maxTerms; ++k) {
      Complex t = term(start + dir * k);
      double m = t.log2Abs();
      s += t;
      maxLog2 = std::max({maxLog2, m, s.log2Abs()});
      if (watch.push(m)) {
        checkCancellation(maxLog2, k, what);
        return s;
      }
    }
    throw Error(ErrorKind::PrecisionExhausted,
                what + ": tail still above epsilon after " + std::to_string(o_.maxTerms) + " terms");
  }

  // even- and odd-indexed partial sums converge when the pair sums t_n + t_{n+1} do
  Complex cesaro(const std::function<Complex(long)>& term, long start, int dir, const std::string& what) {
    TailWatch watch(eps_ - 1.0, o_.block);
    Complex s(o_.bits), prevS(o_.bits);
    Complex prevT = term(start);
    s = prevT;
    double maxLog2 = prevT.log2Abs();
    for (long k = 1; k < o_.maxTerms; ++k) {
      Complex t = term(start + dir * k);
      Complex pair = prevT + t;
      prevS = s;
      s += t;
      maxLog2 = std::max({maxLog2, t.log2Abs(), s.log2Abs()});
      if (watch.push(pair.log2Abs())) {
        checkCancellation(maxLog2, k, what);
        Complex avg = s + prevS;
        return Complex(avg.re() * Real(0.5, o_.bits), avg.im() * Real(0.5, o_.bits));
      }
      prevT = std::move(t);
    }
    throw Error(ErrorKind::PrecisionExhausted,
                what + ": even/odd partial sums did not settle within " + std::to_string(o_.maxTerms) + " terms");
  }

  Complex sum(const NodePtr& n, const Env& env) {
    const NodePtr& body = n->kids[0];
    auto term = [&](long r) { return eval(body, env.with(n->name, r)); };
    std::string what = "sum over " + n->name + where(n);
    bool loInf = n->lo.kind == Bound::Kind::NegInf, hiInf = n->hi.kind == Bound::Kind::PosInf;
    if (loInf && hiInf) return series(term, 0, 1, what) + series(term, -1, -1, what);
    if (hiInf) return series(term, integer(n->lo.expr, env, "sum bound"), 1, what);
    long hi = integer(n->hi.expr, env, "sum bound");
    if (loInf) return series(term, hi, -1, what);
    long lo = integer(n->lo.expr, env, "sum bound");
    Complex s(o_.bits);
    for (long r = lo; r <= hi; ++r) s += term(r);
    return s;
  }

  // ---- products --------------------------------------------------------------

  Complex infiniteProduct(const std::function<Complex(long)>& x, long start, const std::string& what) {
    TailWatch watch(eps_ - 2.0, o_.block);
    Complex p = one();
    double vanish = -static_cast<double>(o_.bits) + 8.0;
    for (long k = 0; k < o_.maxTerms; ++k) {
      Complex xk = x(start + k);
      Complex f = one() - xk;
      if (f.log2Abs() < vanish) throw Error(ErrorKind::ZeroFactor, what + ": factor " + std::to_string(start + k) + " vanishes");
      p *= f;
      if (watch.push(xk.log2Abs())) return p;
    }
    throw Error(ErrorKind::PrecisionExhausted, what + ": product did not settle within " + std::to_string(o_.maxTerms) + " factors");
  }

  Complex pochInf(const Complex& a, const Complex& b, const std::string& what) {
    if (a.isZero()) return one();
    if (!(b.log2Abs() < 0)) throw Error(ErrorKind::FormalDivergence, what + ": infinite product needs |base| < 1");
    Complex cur = a;
    return infiniteProduct([&](long) {
      Complex r = cur;
      cur *= b;
      return r;
    }, 0, what);
  }

  // (a;b)_n for any integer n, reusing the previous value when n moves forward
  Complex pochFinite(const std::pair<const Node*, int>& key, const Complex& a, const Complex& b, long n) {
    auto it = poch_.find(key);
    bool neg = n < 0;
    long m = neg ? -n : n;
    if (it == poch_.end() || !same(it->second.a, a) || !same(it->second.b, b) || it->second.negative != neg ||
        it->second.n > m) {
      PochState st{a, b, 0, one(), neg, neg ? b.inverse() : one()};
      it = poch_.insert_or_assign(key, std::move(st)).first;
    }
    PochState& st = it->second;
    if (!neg) {
      // factor j is 1 - a b^j
      for (long j = st.n; j < m; ++j) {
        st.value *= one() - a * st.step;
        st.step *= b;
      }
    } else {
      // (a;b)_{-m} = 1 / prod_{j=1..m} (1 - a b^{-j})
      Complex binv = b.inverse();
      for (long j = st.n + 1; j <= m; ++j) {
        Complex f = one() - a * st.step;
        if (f.isZero()) throw Error(ErrorKind::ZeroFactor, "negative-index Pochhammer has a vanishing factor");
        st.value /= f;
        st.step *= binv;
      }
    }
    st.n = m;
    return st.value;
  }

  Complex poch(const NodePtr& n, const Env& env) {
    std::size_t nargs = n->kids.size() - 1;
    Complex b = eval(n->kids.back(), env);
    std::string what = "poch" + where(n);
    Complex p = one();
    if (!n->bound) {
      for (std::size_t k = 0; k < nargs; ++k) p *= pochInf(eval(n->kids[k], env), b, what);
      return p;
    }
    long cnt = integer(n->bound, env, "Pochhammer index");
    for (std::size_t k = 0; k < nargs; ++k)
      p *= pochFinite({n.get(), static_cast<int>(k)}, eval(n->kids[k], env), b, cnt);
    return p;
  }

  Complex prod(const NodePtr& n, const Env& env) {
    const NodePtr& body = n->kids[0];
    std::string what = "product over " + n->name + where(n);
    if (n->lo.kind == Bound::Kind::NegInf) throw Error(ErrorKind::EvaluationError, what + ": products start at a finite index");
    long lo = integer(n->lo.expr, env, "product bound");
    if (n->hi.kind == Bound::Kind::PosInf)
      return infiniteProduct([&](long r) { return one() - eval(body, env.with(n->name, r)); }, lo, what);
    long hi = integer(n->hi.expr, env, "product bound");
    Complex p = one();
    for (long r = lo; r <= hi; ++r) p *= eval(body, env.with(n->name, r));
    return p;
  }

  // ---- named functions -------------------------------------------------------

  // (x, Q/x, Q; Q)_inf
  Complex theta(const Complex& x, const Complex& Q, const std::string& what) {
    return pochInf(x, Q, what) * pochInf(Q / x, Q, what) * pochInf(Q, Q, what);
  }

  Complex call(const NodePtr& n, const Env& env) {
    const std::string& f = n->name;
    const auto& a = n->kids;
    std::string what = f + where(n);
    if (auto id = mockThetaByName(f)) {
      NumericOptions sub = o_;
      if (id->summability == Summability::Cesaro) {
        if (!o_.allowCesaro)
          throw Error(ErrorKind::CesaroNotPermitted, std::string(id->id) + " is only Cesaro summable" + where(n));
      } else {
        sub.allowCesaro = false;
      }
      Evaluator inner(sub, eval(a[0], env));
      return inner.eval(definitionTrees().at(f), Env{});
    }
    auto Qarg = [&](std::size_t k) { return a.size() > k ? eval(a[k], env) : q_; };
    auto qpow = [&](long e) { return q_.pow(e); };
    if (f == "jtp") {
      Complex z = eval(a[0], env), Q = Qarg(1), Q2 = Q * Q;
      return pochInf(z * Q, Q2, what) * pochInf(Q / z, Q2, what) * pochInf(Q2, Q2, what);
    }
    if (f == "j") return theta(eval(a[0], env), eval(a[1], env), what);
    if (f == "J" || f == "Jbar") {
      long i = integer(a[0], env, "J index"), m = integer(a[1], env, "J modulus");
      Complex x = qpow(i);
      return theta(f == "J" ? x : -x, qpow(m), what);
    }
    if (f == "Jm") {
      Complex Q = qpow(integer(a[0], env, "Jm modulus"));
      return pochInf(Q, Q, what);
    }
    if (f == "g3" || f == "g2") {
      Complex x = eval(a[0], env), Q = eval(a[1], env);
      Complex Qx = Q / x;
      std::pair<const Node*, int> kx{n.get(), 0}, kqx{n.get(), 1}, kneg{n.get(), 2};
      Complex negQ = -Q;
      bool two = f == "g2";
      return series([&](long k) {
        Complex den = pochFinite(kx, x, Q, k + 1) * pochFinite(kqx, Qx, Q, k + 1);
        if (den.isZero()) throw Error(ErrorKind::ZeroFactor, what + ": vanishing denominator");
        Complex num = two ? Q.pow(k * (k + 1) / 2) * pochFinite(kneg, negQ, Q, k) : Q.pow(k * k + k);
        return num / den;
      }, 0, 1, what);
    }
    if (f == "m") {
      Complex x = eval(a[0], env), Q = eval(a[1], env), z = eval(a[2], env);
      Complex xz = x * z;
      auto term = [&](long r) {
        Complex den = one() - Q.pow(r - 1) * xz;
        if (den.isZero()) throw Error(ErrorKind::PoleAppellLerch, what);
        Complex t = Q.pow(r * (r - 1) / 2) * z.pow(r) / den;
        return (r % 2 == 0) ? t : -t;
      };
      Complex s = series(term, 0, 1, what) + series(term, -1, -1, what);
      return s / theta(z, Q, what);
    }
    throw Error(ErrorKind::UnknownName, "function '" + f + "'" + where(n));
  }
};

Complex runAdaptive(const NodePtr& ast, const Complex& q, const NumericBindings& env, NumericOptions opts) {
  mpfr_prec_t target = opts.bits;
  for (;;) {
    try {
      Complex qq = q;
      Evaluator ev(opts, qq);
      Complex r = ev.eval(ast, Env{{}, &env});
      return r;
    } catch (const PrecisionShortfall& e) {
      if (!opts.adaptive || opts.bits >= opts.maxBits) throw;
      opts.bits = std::min<mpfr_prec_t>(opts.maxBits, opts.bits + e.extra());
      // epsilon stays tied to the caller's precision
      if (!opts.log2Epsilon) opts.log2Epsilon = -static_cast<double>(target) * 0.75;
    }
  }
}

void requireInsideDisk(const Complex& q) {
  if (!(q.log2Abs() < 0)) throw Error(ErrorKind::EvaluationError, "numeric series evaluation needs |q| < 1");
}

}  // namespace

Complex evaluate(const NodePtr& ast, const Complex& q, const NumericBindings& env, const NumericOptions& opts) {
  return runAdaptive(ast, q, env, opts);
}

Complex evalSeriesNumeric(MockThetaName name, const Complex& q, const NumericOptions& opts) {
  requireInsideDisk(q);
  const MockThetaId& id = mockTheta(name);
  NumericOptions o = opts;
  o.allowCesaro = id.summability == Summability::Cesaro;
  return runAdaptive(definitionTrees().at(std::string(id.id)), q, {}, o);
}

Complex evalSeriesNumeric(const NodePtr& ast, const Complex& q, const NumericOptions& opts) {
  requireInsideDisk(q);
  return runAdaptive(ast, q, {}, opts);
}

Complex evalProductNumeric(const NodePtr& ast, const Complex& q, const NumericOptions& opts) {
  requireInsideDisk(q);
  return runAdaptive(ast, q, {}, opts);
}

Complex evalTruncated(const Series& s, const Complex& q, mpfr_prec_t bits) {
  Complex out(bits);
  Complex qq = q;
  for (const auto& [e, c] : s.terms()) {
    Complex qe = qq.pow(mpq_class(e.num(), e.den()));
    out += Complex(c, bits) * qe;
  }
  return out;
}

}  // namespace qmock::numeric
