#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "qmock/qproducts.hpp"
#include "qmock/series.hpp"

namespace qmock {

struct TermFamily {
  std::function<Series(std::int64_t r, const Exponent& order)> termAt;
  // lower bound for the valuation of term r; empty when the term vanishes identically
  std::function<std::optional<Exponent>(std::int64_t r)> valuationBound;
};
using BilateralTermFamily = TermFamily;

// builds both callbacks from a per-index product description
TermFamily productFamily(std::function<PochProduct(std::int64_t r)> term);

enum class Direction { None, Positive, Negative };

struct FormalValidity {
  bool ok = true;
  Direction failing = Direction::None;
  std::int64_t witness = 0;  // an index where growth was not observed
};

struct SumOptions {
  std::int64_t horizon = 160;     // indices inspected by checkValidity per direction
  std::int64_t window = 12;       // consecutive growing terms past the order that end a scan
  std::int64_t maxTerms = 20000;  // hard stop for a single direction
};

FormalValidity checkValidity(const TermFamily& f, const SumOptions& opts = {});

struct Cutoff {
  std::int64_t count = 0;                        // terms start, start+dir, ... before the certified tail
  std::vector<std::optional<Exponent>> bounds;   // valuation bounds of those terms
};
// scans valuation bounds until `window` consecutive growing terms sit at or past the order
std::optional<Cutoff> findCutoff(const std::function<std::optional<Exponent>(std::int64_t)>& bound,
                                 std::int64_t start, int dir, const Exponent& order, std::int64_t window,
                                 std::int64_t cap);

// sum over r = start, start+dir, ... ; throws DivergentFamily if the valuations never clear the order
Series sumDirection(const TermFamily& f, std::int64_t start, int dir, const Exponent& order,
                    const SumOptions& opts = {});
Series sumUnilateral(const TermFamily& f, std::int64_t start, const Exponent& order, const SumOptions& opts = {});
Series sumBilateral(const TermFamily& f, const Exponent& order, const SumOptions& opts = {});

// sum_n (a,c;q)_n/(b,d;q)_n z^n over all integers
TermFamily twoPsiTwoFamily(const Monomial& a, const Monomial& b, const Monomial& c, const Monomial& d,
                           const Monomial& z);
Series twoPsiTwo(const Monomial& a, const Monomial& b, const Monomial& c, const Monomial& d, const Monomial& z,
                 const Exponent& order);
// the same sum as (n >= 0 part) + (reflected n >= 1 part with (q/b,q/d)_n/(q/a,q/c)_n (bd/acz)^n)
Series twoPsiTwoSplit(const Monomial& a, const Monomial& b, const Monomial& c, const Monomial& d,
                      const Monomial& z, const Exponent& order);

// very-well-poised 6psi6 sum and its product evaluation
std::pair<Series, Series> sixPsiSix(const Monomial& a, const Monomial& b, const Monomial& c, const Monomial& d,
                                    const Monomial& e, const Exponent& order);

// G(s,t) = 1 + sum_{n>=1} (st)^n q^{n^2}/(sq,tq;q)_n
Series g3Family(const Monomial& s, const Monomial& t, const Exponent& order);
// same summand over all integers
Series g3Star(const Monomial& s, const Monomial& t, const Exponent& order);
// g(x;Q) = sum Q^{n^2+n}/(x,Q/x;Q)_{n+1}
Series gUniversal3(const Monomial& x, QStep base, const Exponent& order);
// {G(x, q/x), (1-x)(1-q/x) g(x;q)}
std::pair<Series, Series> linkCheck(const Monomial& x, const Exponent& order);
// sum over integers w^n q^{n^2}/(y;q)_n
Series g5Star(const Monomial& w, const Monomial& y, const Exponent& order);
// sum over integers (a;q^2)_r z^r q^{r^2}/(b,d;q^2)_r
Series g6(const Monomial& a, const Monomial& b, const Monomial& d, const Monomial& z, const Exponent& order);
// sum over integers (a;q^2)_r z^r q^{r^2}/(b;q^2)_r
Series g8(const Monomial& a, const Monomial& b, const Monomial& z, const Exponent& order);
// m(x,Q,z) = 1/j(z;Q) sum_r (-1)^r Q^{r(r-1)/2} z^r/(1 - Q^{r-1} x z)
Series appellLerchM(const Monomial& x, QStep base, const Monomial& z, const Exponent& order);
// g2(x;Q) = sum Q^{n(n+1)/2} (-Q;Q)_n/((x;Q)_{n+1}(Q/x;Q)_{n+1})
Series gUniversal2(const Monomial& x, QStep base, const Exponent& order);

}  // namespace qmock
