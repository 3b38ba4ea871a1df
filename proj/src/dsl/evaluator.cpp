#include "qmock/dsl/evaluator.hpp"

#include <algorithm>

#include "qmock/dsl/parser.hpp"
#include "qmock/error.hpp"
#include "qmock/mocktheta.hpp"
#include "qmock/qproducts.hpp"

namespace qmock::dsl {

namespace {

struct Env {
  std::vector<std::pair<std::string, std::int64_t>> idx;
  const ParamBindings* params = nullptr;

  const std::int64_t* index(const std::string& n) const {
    for (auto it = idx.rbegin(); it != idx.rend(); ++it)
      if (it->first == n) return &it->second;
    return nullptr;
  }
  const Monomial* param(const std::string& n) const {
    if (!params) return nullptr;
    auto it = params->find(n);
    return it == params->end() ? nullptr : &it->second;
  }
  Env with(const std::string& n, std::int64_t v) const {
    Env e = *this;
    e.idx.emplace_back(n, v);
    return e;
  }
};

struct Mono {
  bool zero = false;
  Monomial m;
};

std::string where(const NodePtr& n) {
  if (n->line == 0) return "";
  return " (line " + std::to_string(n->line) + ", column " + std::to_string(n->column) + ")";
}

std::int64_t toInt64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw Error(ErrorKind::Overflow, "integer literal too large");
  return z.get_si();
}

std::optional<Exponent> boundOf(const Lead& l) {
  if (l.isZero()) return std::nullopt;
  if (l.isPole()) throw Error(ErrorKind::PolePochhammer, "summand has a vanishing divisor");
  return l.val;
}

class Evaluator {
 public:
  explicit Evaluator(const EvalOptions& o) : opts_(o) {}

  Series eval(const NodePtr& n, const Env& env, const Exponent& order) {
    if (auto m = monomial(n, env)) {
      if (m->zero) return Series();
      return Series::monomial(m->m.unit, m->m.exponent);
    }
    switch (n->kind) {
      case NodeKind::Add: return (eval(n->kids[0], env, order) + eval(n->kids[1], env, order)).truncated(order);
      case NodeKind::Sub: return (eval(n->kids[0], env, order) - eval(n->kids[1], env, order)).truncated(order);
      case NodeKind::Neg: return -eval(n->kids[0], env, order);
      case NodeKind::Mul:
      case NodeKind::Div:
      case NodeKind::Pow:
      case NodeKind::Poch: return productOf(n, env).evaluate(order);
      case NodeKind::Sum: return evalSum(n, env, order);
      case NodeKind::Prod: return evalProd(n, env, order);
      case NodeKind::Call: return evalCall(n, env, order);
      default: break;
    }
    throw Error(ErrorKind::EvaluationError, "cannot expand '" + print(n) + "'" + where(n));
  }

  Lead lead(const NodePtr& n, const Env& env) {
    if (auto m = monomial(n, env)) return m->zero ? Lead::zero() : Lead::exact(m->m.exponent, m->m.unit);
    switch (n->kind) {
      case NodeKind::Add: return lead(n->kids[0], env) + lead(n->kids[1], env);
      case NodeKind::Sub: return lead(n->kids[0], env) + lead(n->kids[1], env).negated();
      case NodeKind::Neg: return lead(n->kids[0], env).negated();
      case NodeKind::Mul:
      case NodeKind::Div:
      case NodeKind::Pow:
      case NodeKind::Poch: return productOf(n, env).lead();
      case NodeKind::Sum: return leadSum(n, env);
      case NodeKind::Prod:
        if (n->lo.kind == Bound::Kind::Finite && n->hi.kind == Bound::Kind::Finite) return productOf(n, env).lead();
        return probe(n, env, std::nullopt);
      case NodeKind::Call: return probe(n, env, std::nullopt);
      default: break;
    }
    throw Error(ErrorKind::EvaluationError, "no leading term for '" + print(n) + "'");
  }

  Lead exactLead(const NodePtr& n, const Env& env) {
    Lead l = lead(n, env);
    if (l.kind != Lead::Kind::LowerBound) return l;
    return probe(n, env, l.val);
  }

 private:
  EvalOptions opts_;

  std::int64_t scanCap(const Exponent& order) const {
    return std::max<std::int64_t>(256 + 16 * std::max<std::int64_t>(order.ceil(), 0), opts_.sums.window + 1);
  }

  Lead probe(const NodePtr& n, const Env& env, std::optional<Exponent> from) {
    Exponent base = from ? *from : Exponent(0);
    for (int d = 1; d <= opts_.probeLimit; d *= 2) {
      Series s = eval(n, env, base + Exponent(d));
      if (!s.isZero()) return Lead::exact(*s.valuation(), s.leadingCoefficient());
    }
    return Lead::lowerBound(base + Exponent(opts_.probeLimit));
  }

  // ---- scalar views of a node ------------------------------------------------

  std::optional<Gaussian> constant(const NodePtr& n, const Env& env) {
    switch (n->kind) {
      case NodeKind::Number: return Gaussian(mpq_class(n->value));
      case NodeKind::Imag: return Gaussian::i();
      case NodeKind::Var: {
        if (auto v = env.index(n->name)) return Gaussian(static_cast<long>(*v));
        if (auto p = env.param(n->name)) {
          if (p->exponent.isZero()) return p->unit;
          return std::nullopt;
        }
        throw Error(ErrorKind::UnboundVariable, "'" + n->name + "'" + where(n));
      }
      case NodeKind::Neg: {
        auto a = constant(n->kids[0], env);
        if (!a) return std::nullopt;
        return -*a;
      }
      case NodeKind::Add:
      case NodeKind::Sub:
      case NodeKind::Mul:
      case NodeKind::Div: {
        auto a = constant(n->kids[0], env);
        if (!a) return std::nullopt;
        auto b = constant(n->kids[1], env);
        if (!b) return std::nullopt;
        if (n->kind == NodeKind::Add) return *a + *b;
        if (n->kind == NodeKind::Sub) return *a - *b;
        if (n->kind == NodeKind::Mul) return *a * *b;
        if (b->isZero()) throw Error(ErrorKind::ZeroSeries, "division by zero" + where(n));
        return *a / *b;
      }
      case NodeKind::Pow: {
        auto a = constant(n->kids[0], env);
        if (!a) return std::nullopt;
        auto e = indexValue(n->kids[1], env);
        if (!e || !e->isInteger()) return std::nullopt;
        if (a->isZero()) {
          if (e->sign() < 0) throw Error(ErrorKind::ZeroSeries, "zero to a negative power" + where(n));
          return e->isZero() ? Gaussian(1) : Gaussian(0);
        }
        return a->pow(e->num());
      }
      default: return std::nullopt;
    }
  }

  std::optional<Mono> monomial(const NodePtr& n, const Env& env) {
    if (auto c = constant(n, env)) {
      if (c->isZero()) return Mono{true, Monomial()};
      return Mono{false, Monomial(*c, 0)};
    }
    switch (n->kind) {
      case NodeKind::Q: return Mono{false, Monomial::q(1)};
      case NodeKind::Var:
        if (auto p = env.param(n->name)) return Mono{false, *p};
        return std::nullopt;
      case NodeKind::Neg: {
        auto a = monomial(n->kids[0], env);
        if (!a) return std::nullopt;
        if (a->zero) return a;
        return Mono{false, -a->m};
      }
      case NodeKind::Mul:
      case NodeKind::Div: {
        auto a = monomial(n->kids[0], env);
        if (!a) return std::nullopt;
        auto b = monomial(n->kids[1], env);
        if (!b) return std::nullopt;
        if (n->kind == NodeKind::Div && b->zero) throw Error(ErrorKind::ZeroSeries, "division by zero" + where(n));
        if (a->zero || b->zero) return Mono{true, Monomial()};
        return Mono{false, n->kind == NodeKind::Mul ? a->m * b->m : a->m / b->m};
      }
      case NodeKind::Pow: {
        auto a = monomial(n->kids[0], env);
        if (!a) return std::nullopt;
        auto e = indexValue(n->kids[1], env);
        if (!e) return std::nullopt;
        if (a->zero) return Mono{true, Monomial()};
        return Mono{false, a->m.pow(*e)};
      }
      case NodeKind::Add:
      case NodeKind::Sub: {
        auto a = monomial(n->kids[0], env);
        if (!a) return std::nullopt;
        auto b = monomial(n->kids[1], env);
        if (!b) return std::nullopt;
        if (a->zero) return n->kind == NodeKind::Add ? b : (b->zero ? b : std::optional<Mono>(Mono{false, -b->m}));
        if (b->zero) return a;
        if (a->m.exponent != b->m.exponent) return std::nullopt;
        Gaussian u = n->kind == NodeKind::Add ? a->m.unit + b->m.unit : a->m.unit - b->m.unit;
        if (u.isZero()) return Mono{true, Monomial()};
        return Mono{false, Monomial(u, a->m.exponent)};
      }
      default: return std::nullopt;
    }
  }

  std::optional<Exponent> indexValue(const NodePtr& n, const Env& env) {
    switch (n->kind) {
      case NodeKind::Number: return Exponent(toInt64(n->value));
      case NodeKind::Var: {
        if (auto v = env.index(n->name)) return Exponent(*v);
        if (env.param(n->name)) return std::nullopt;
        throw Error(ErrorKind::UnboundVariable, "'" + n->name + "'" + where(n));
      }
      case NodeKind::Neg: {
        auto a = indexValue(n->kids[0], env);
        if (!a) return std::nullopt;
        return -*a;
      }
      case NodeKind::Add:
      case NodeKind::Sub:
      case NodeKind::Mul:
      case NodeKind::Div: {
        auto a = indexValue(n->kids[0], env);
        if (!a) return std::nullopt;
        auto b = indexValue(n->kids[1], env);
        if (!b) return std::nullopt;
        switch (n->kind) {
          case NodeKind::Add: return *a + *b;
          case NodeKind::Sub: return *a - *b;
          case NodeKind::Mul: return *a * *b;
          default:
            if (b->isZero()) throw Error(ErrorKind::EvaluationError, "division by zero in index" + where(n));
            return *a / *b;
        }
      }
      case NodeKind::Pow: {
        auto a = indexValue(n->kids[0], env);
        if (!a) return std::nullopt;
        auto e = indexValue(n->kids[1], env);
        if (!e || !e->isInteger() || e->sign() < 0) return std::nullopt;
        Exponent r(1);
        for (std::int64_t k = 0; k < e->num(); ++k) r *= *a;
        return r;
      }
      default: return std::nullopt;
    }
  }

  std::int64_t integerIndex(const NodePtr& n, const Env& env, const char* what) {
    auto v = indexValue(n, env);
    if (!v || !v->isInteger())
      throw Error(ErrorKind::EvaluationError, std::string(what) + " must be an integer expression" + where(n));
    return v->num();
  }

  Monomial requireMonomial(const NodePtr& n, const Env& env, const char* what) {
    auto m = monomial(n, env);
    if (!m) throw Error(ErrorKind::EvaluationError, std::string(what) + " must be a monomial: '" + print(n) + "'" + where(n));
    if (m->zero) throw Error(ErrorKind::EvaluationError, std::string(what) + " is zero" + where(n));
    return m->m;
  }

  QStep requireStep(const NodePtr& n, const Env& env) {
    Monomial b = requireMonomial(n, env, "base");
    if (!b.unit.isOne() || b.exponent.sign() <= 0)
      throw Error(ErrorKind::EvaluationError, "base must be q^s with s > 0, got " + b.toString() + where(n));
    return QStep(b.exponent);
  }

  // ---- products ---------------------------------------------------------------

  void collect(const NodePtr& n, const Env& env, int power, PochProduct& out, bool& zero) {
    if (auto m = monomial(n, env)) {
      if (m->zero) {
        if (power < 0) throw Error(ErrorKind::ZeroSeries, "division by zero" + where(n));
        zero = true;
        return;
      }
      out.times(m->m.pow(std::int64_t(power)));
      return;
    }
    switch (n->kind) {
      case NodeKind::Neg:
        out.times(Monomial(Gaussian(power % 2 == 0 ? 1 : -1), 0));
        collect(n->kids[0], env, power, out, zero);
        return;
      case NodeKind::Mul:
        collect(n->kids[0], env, power, out, zero);
        collect(n->kids[1], env, power, out, zero);
        return;
      case NodeKind::Div:
        collect(n->kids[0], env, power, out, zero);
        collect(n->kids[1], env, -power, out, zero);
        return;
      case NodeKind::Pow: {
        auto e = indexValue(n->kids[1], env);
        if (!e || !e->isInteger())
          throw Error(ErrorKind::EvaluationError, "non-monomial base needs an integer exponent" + where(n));
        if (e->isZero()) return;
        collect(n->kids[0], env, static_cast<int>(power * e->num()), out, zero);
        return;
      }
      case NodeKind::Poch: {
        QStep step = requireStep(n->kids.back(), env);
        std::optional<std::int64_t> bound;
        if (n->bound) bound = integerIndex(n->bound, env, "Pochhammer index");
        for (std::size_t k = 0; k + 1 < n->kids.size(); ++k) {
          auto a = monomial(n->kids[k], env);
          if (!a) throw Error(ErrorKind::EvaluationError, "Pochhammer argument must be a monomial: '" + print(n->kids[k]) + "'" + where(n));
          if (a->zero) continue;  // (0;q)_n = 1
          if (bound) out.poch(a->m, step, *bound, power);
          else out.pochInfinite(a->m, step, power);
        }
        return;
      }
      case NodeKind::Prod:
        if (n->lo.kind == Bound::Kind::Finite && n->hi.kind == Bound::Kind::Finite) {
          std::int64_t lo = integerIndex(n->lo.expr, env, "product bound");
          std::int64_t hi = integerIndex(n->hi.expr, env, "product bound");
          for (std::int64_t r = lo; r <= hi; ++r) collect(n->kids[0], env.with(n->name, r), power, out, zero);
          return;
        }
        break;
      default: break;
    }
    Lead l = power < 0 ? exactLead(n, env) : lead(n, env);
    if (l.isZero()) {
      if (power < 0) throw Error(ErrorKind::ZeroSeries, "divisor '" + print(n) + "' vanishes" + where(n));
      zero = true;
      return;
    }
    if (power < 0 && !l.isExact())
      throw Error(ErrorKind::ZeroSeries, "divisor '" + print(n) + "' vanished to the probe limit" + where(n));
    Env captured = env;
    out.generic([this, n, captured](const Exponent& ord) { return eval(n, captured, ord); }, l, power);
  }

  struct Product {
    PochProduct p;
    bool zero = false;
    Lead lead() const { return zero ? Lead::zero() : p.lead(); }
    Series evaluate(const Exponent& order) const { return zero ? Series() : p.evaluate(order); }
  };

  Product productOf(const NodePtr& n, const Env& env) {
    Product out;
    collect(n, env, 1, out.p, out.zero);
    return out;
  }

  // ---- sums -------------------------------------------------------------------

  Series direction(const NodePtr& n, const Env& env, std::int64_t start, int dir, const Exponent& order) {
    const NodePtr& body = n->kids[0];
    auto bound = [&](std::int64_t r) { return boundOf(lead(body, env.with(n->name, r))); };
    auto cut = findCutoff(bound, start, dir, order, opts_.sums.window, scanCap(order));
    if (cut) {
      Series total = Series::zero(order);
      for (std::int64_t k = 0; k < cut->count; ++k) {
        const auto& v = cut->bounds[static_cast<std::size_t>(k)];
        if (v && *v < order) total = total + eval(body, env.with(n->name, start + dir * k), order);
      }
      return total.truncated(order);
    }
    if (!opts_.allowCesaro)
      throw Error(ErrorKind::DivergentFamily,
                  "'" + print(n) + "' does not converge formally" + where(n) +
                      "; it needs Cesaro summation on a side flagged for it");
    auto term = [&](std::int64_t k, const Exponent& ord) { return eval(body, env.with(n->name, start + dir * k), ord); };
    return cesaroSum(term, order, opts_.cesaro).value;
  }

  Series evalSum(const NodePtr& n, const Env& env, const Exponent& order) {
    using K = Bound::Kind;
    if (n->lo.kind == K::Finite && n->hi.kind == K::Finite) {
      std::int64_t lo = integerIndex(n->lo.expr, env, "sum bound");
      std::int64_t hi = integerIndex(n->hi.expr, env, "sum bound");
      Series total = Series::zero(order);
      for (std::int64_t r = lo; r <= hi; ++r) total = total + eval(n->kids[0], env.with(n->name, r), order);
      return total.truncated(order);
    }
    if (n->lo.kind == K::Finite && n->hi.kind == K::PosInf)
      return direction(n, env, integerIndex(n->lo.expr, env, "sum bound"), 1, order);
    if (n->lo.kind == K::NegInf && n->hi.kind == K::Finite)
      return direction(n, env, integerIndex(n->hi.expr, env, "sum bound"), -1, order);
    if (n->lo.kind == K::NegInf && n->hi.kind == K::PosInf)
      return (direction(n, env, 0, 1, order) + direction(n, env, -1, -1, order)).truncated(order);
    throw Error(ErrorKind::EvaluationError, "bad sum range" + where(n));
  }

  Lead leadDirection(const NodePtr& n, const Env& env, std::int64_t start, int dir) {
    const NodePtr& body = n->kids[0];
    Lead acc = Lead::zero();
    std::optional<Exponent> prev;
    std::int64_t run = 0;
    std::int64_t cap = 256;
    for (std::int64_t k = 0; k < cap; ++k) {
      Lead l = lead(body, env.with(n->name, start + dir * k));
      if (l.isPole()) throw Error(ErrorKind::PolePochhammer, "summand has a vanishing divisor" + where(n));
      auto v = boundOf(l);
      acc = acc + l;
      bool above = acc.hasVal() && (!v || *v > acc.val);
      bool growing = !v || !prev || *v > *prev;
      run = (above && growing) ? run + 1 : 0;
      if (run >= opts_.sums.window) return acc;
      if (v) prev = v;
    }
    // Cesaro-type family: the partial sums never go below the smallest term seen
    if (acc.hasVal()) return Lead::lowerBound(acc.val);
    return acc;
  }

  Lead leadSum(const NodePtr& n, const Env& env) {
    using K = Bound::Kind;
    if (n->lo.kind == K::Finite && n->hi.kind == K::Finite) {
      std::int64_t lo = integerIndex(n->lo.expr, env, "sum bound");
      std::int64_t hi = integerIndex(n->hi.expr, env, "sum bound");
      Lead acc = Lead::zero();
      for (std::int64_t r = lo; r <= hi; ++r) acc = acc + lead(n->kids[0], env.with(n->name, r));
      return acc;
    }
    Lead acc = Lead::zero();
    if (n->hi.kind == K::PosInf)
      acc = acc + leadDirection(n, env, n->lo.kind == K::Finite ? integerIndex(n->lo.expr, env, "sum bound") : 0, 1);
    if (n->lo.kind == K::NegInf)
      acc = acc + leadDirection(n, env, n->hi.kind == K::Finite ? integerIndex(n->hi.expr, env, "sum bound") : -1, -1);
    return acc;
  }

  Series evalProd(const NodePtr& n, const Env& env, const Exponent& order) {
    if (n->lo.kind == Bound::Kind::Finite && n->hi.kind == Bound::Kind::Finite) return productOf(n, env).evaluate(order);
    if (n->lo.kind != Bound::Kind::Finite || n->hi.kind != Bound::Kind::PosInf)
      throw Error(ErrorKind::EvaluationError, "infinite products run upward from a finite start" + where(n));
    std::int64_t lo = integerIndex(n->lo.expr, env, "product bound");
    Series p = Series::constant(1, order);
    std::int64_t run = 0;
    for (std::int64_t r = lo; r < lo + scanCap(order); ++r) {
      Series f = eval(n->kids[0], env.with(n->name, r), order);
      Series dev = f - Series::constant(1);
      auto v = f.valuationBound();
      if (!v || !v->isZero())
        throw Error(ErrorKind::EvaluationError, "infinite product factors must have valuation 0" + where(n));
      auto dv = dev.valuationBound();
      if (!dv || *dv >= order) {
        if (++run >= opts_.sums.window) return p.truncated(order);
        continue;
      }
      run = 0;
      p = (p * f).truncated(order);
    }
    throw Error(ErrorKind::FormalDivergence, "factors do not approach 1" + where(n));
  }

  // ---- named functions ----------------------------------------------------------

  Series evalCall(const NodePtr& n, const Env& env, const Exponent& order) {
    const std::string& f = n->name;
    const auto& a = n->kids;
    if (auto id = mockThetaByName(f)) {
      if (id->summability == Summability::Cesaro && !opts_.allowCesaro)
        throw Error(ErrorKind::CesaroNotPermitted,
                    std::string(id->id) + " is only Cesaro summable; flag this side for Cesaro summation" + where(n));
      Monomial x = requireMonomial(a[0], env, "mock theta argument");
      return buildAt(id->name, x.unit, x.exponent, order);
    }
    if (f == "jtp") {
      Monomial z = requireMonomial(a[0], env, "jtp argument");
      QStep Q = a.size() > 1 ? requireStep(a[1], env) : QStep(1);
      QStep Q2(Q.scale * Exponent(2));
      PochProduct p;
      p.pochInfinite(z * Q.base(), Q2).pochInfinite(Q.base() / z, Q2).pochInfinite(Q2.base(), Q2);
      return p.evaluate(order);
    }
    if (f == "j") return jBlock(requireMonomial(a[0], env, "j argument"), requireStep(a[1], env), order);
    if (f == "J") return JSub(integerIndex(a[0], env, "J index"), integerIndex(a[1], env, "J modulus"), order);
    if (f == "Jbar") return JBar(integerIndex(a[0], env, "Jbar index"), integerIndex(a[1], env, "Jbar modulus"), order);
    if (f == "Jm") return JM(integerIndex(a[0], env, "Jm modulus"), order);
    if (f == "g2") return gUniversal2(requireMonomial(a[0], env, "g2 argument"), requireStep(a[1], env), order);
    if (f == "g3") return gUniversal3(requireMonomial(a[0], env, "g3 argument"), requireStep(a[1], env), order);
    if (f == "m")
      return appellLerchM(requireMonomial(a[0], env, "m argument"), requireStep(a[1], env),
                          requireMonomial(a[2], env, "m argument"), order);
    throw Error(ErrorKind::UnknownName, "function '" + f + "'" + where(n));
  }
};

void freeVars(const NodePtr& n, std::vector<std::string>& bound, std::set<std::string>& out) {
  if (!n) return;
  if (n->kind == NodeKind::Var) {
    if (std::find(bound.begin(), bound.end(), n->name) == bound.end()) out.insert(n->name);
    return;
  }
  if (n->kind == NodeKind::Sum || n->kind == NodeKind::Prod) {
    freeVars(n->lo.expr, bound, out);
    freeVars(n->hi.expr, bound, out);
    bound.push_back(n->name);
    freeVars(n->kids[0], bound, out);
    bound.pop_back();
    return;
  }
  for (const auto& k : n->kids) freeVars(k, bound, out);
  freeVars(n->bound, bound, out);
}

// infinite sums whose range does not depend on an enclosing index
void collectTopSums(const NodePtr& n, bool nested, std::vector<NodePtr>& out) {
  if (!n) return;
  bool isSum = n->kind == NodeKind::Sum;
  if (isSum && !nested && (n->lo.kind != Bound::Kind::Finite || n->hi.kind != Bound::Kind::Finite)) out.push_back(n);
  bool inner = nested || isSum || n->kind == NodeKind::Prod;
  for (const auto& k : n->kids) collectTopSums(k, inner, out);
}

}  // namespace

Series evaluate(const NodePtr& ast, const Exponent& order, const ParamBindings& params, const EvalOptions& opts) {
  Evaluator ev(opts);
  Env env;
  env.params = &params;
  return ev.eval(ast, env, order).truncated(order);
}

Lead leadingTerm(const NodePtr& ast, const ParamBindings& params, const EvalOptions& opts) {
  Evaluator ev(opts);
  Env env;
  env.params = &params;
  return ev.lead(ast, env);
}

std::set<std::string> freeParameters(const NodePtr& ast) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  freeVars(ast, bound, out);
  return out;
}

ValidityReport checkFormalValidity(const NodePtr& ast, const ParamBindings& params, const EvalOptions& opts) {
  for (const auto& name : freeParameters(ast))
    if (!params.count(name)) return {false, "parameter '" + name + "' has no value"};
  std::vector<NodePtr> sums;
  collectTopSums(ast, false, sums);
  Evaluator ev(opts);
  Env env;
  env.params = &params;
  try {
    for (const auto& s : sums) {
      TermFamily fam;
      fam.valuationBound = [&](std::int64_t r) { return boundOf(ev.lead(s->kids[0], env.with(s->name, r))); };
      bool bilateral = s->lo.kind == Bound::Kind::NegInf && s->hi.kind == Bound::Kind::PosInf;
      if (bilateral) {
        FormalValidity v = checkValidity(fam, opts.sums);
        if (!v.ok && !opts.allowCesaro)
          return {false, "'" + print(s) + "': valuations stop growing in the " +
                             (v.failing == Direction::Positive ? std::string("positive") : std::string("negative")) +
                             " direction near index " + std::to_string(v.witness)};
      }
    }
    evaluate(ast, 3, params, opts);
  } catch (const Error& e) {
    return {false, e.what()};
  }
  return {};
}

}  // namespace qmock::dsl
