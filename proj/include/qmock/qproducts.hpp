#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "qmock/lead.hpp"
#include "qmock/monomial.hpp"
#include "qmock/series.hpp"

namespace qmock {

// leading term of the single factor (1 - a)
Lead binomialLead(const Monomial& a);
// (a; q^s)_n for any integer n; Pole when a negative index hits a vanishing factor
Lead pochLead(const Monomial& a, QStep step, std::int64_t n);
// (a; q^s)_inf; throws FormalDivergence when the product has no formal expansion
Lead pochInfLead(const Monomial& a, QStep step);

// (a; q^s)_n for n >= 0; exact when no order is given. Negative n is routed to pochNeg.
Series pochFinite(const Monomial& a, QStep step, std::int64_t n, std::optional<Exponent> order = std::nullopt);
// (a; q^s)_{-n}, n > 0, through  (-q^s/a)^n q^{s n(n-1)/2} / (q^s/a; q^s)_n
Series pochNeg(const Monomial& a, QStep step, std::int64_t n, const Exponent& order);
// the same value through the quotient  1/(a q^{-sn}; q^s)_n
Series pochNegQuotient(const Monomial& a, QStep step, std::int64_t n, const Exponent& order);
Series pochInf(const Monomial& a, QStep step, const Exponent& order);

// {sum (-z)^n q^{n^2}, (zq, q/z, q^2; q^2)_inf}
std::pair<Series, Series> jacobiTripleProduct(const Monomial& z, const Exponent& order);
Series jacobiTripleProductSum(const Monomial& z, QStep step, const Exponent& order);

// j(x; Q) = (x, Q/x, Q; Q)_inf with Q = q^s
Series jBlock(const Monomial& x, QStep base, const Exponent& order);
Series JSub(std::int64_t a, std::int64_t m, const Exponent& order);   // j(q^a; q^m)
Series JBar(std::int64_t a, std::int64_t m, const Exponent& order);   // j(-q^a; q^m)
Series JM(std::int64_t m, const Exponent& order);                     // (q^m; q^m)_inf

// c q^e * prod (factor)^power with every factor's leading term known up front, so each
// factor can be expanded only as far as the requested order needs.
class PochProduct {
 public:
  using Evaluator = std::function<Series(const Exponent& order)>;

  PochProduct& times(const Monomial& m);
  PochProduct& poch(const Monomial& a, QStep step, std::int64_t n, int power = 1);
  PochProduct& pochInfinite(const Monomial& a, QStep step, int power = 1);
  PochProduct& binomial(const Monomial& a, int power = 1);  // (1 - a)^power
  // lead must be Exact when power < 0
  PochProduct& generic(Evaluator eval, Lead lead, int power = 1);

  Lead lead() const;
  Series evaluate(const Exponent& order) const;

 private:
  enum class Kind { Finite, Infinite, Generic };
  struct Factor {
    Kind kind;
    Monomial a;
    QStep step;
    std::int64_t n = 0;
    int power = 1;
    Evaluator eval;
    Lead lead;  // of the factor itself, before the power
  };
  Monomial coeff_;
  std::vector<Factor> factors_;
};

}  // namespace qmock
