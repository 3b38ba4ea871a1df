#pragma once

#include <map>
#include <optional>
#include <string>

#include "qmock/dsl/ast.hpp"
#include "qmock/mocktheta.hpp"
#include "qmock/numeric/mp.hpp"
#include "qmock/series.hpp"

namespace qmock::numeric {

struct NumericBindings {
  std::map<std::string, Complex> values;
  std::map<std::string, long> integers;  // usable as sum bounds and exponents
};

struct NumericOptions {
  mpfr_prec_t bits = 212;
  // absolute target for every infinite sum tail and relative target for products; 2^-(bits-8) if empty
  std::optional<double> log2Epsilon;
  bool allowCesaro = false;  // infinite sums are averaged over even/odd partial sums
  long maxTerms = 4'000'000;
  int block = 32;  // tail detection looks at maxima over blocks of this many terms
  // retry with more bits when a sum loses too much to cancellation (up to maxBits)
  bool adaptive = false;
  mpfr_prec_t maxBits = 1 << 15;
};

// Value of the expression at q. Finite sums and products accept any q; infinite ones
// stop once the tail estimate is below epsilon and throw PrecisionExhausted otherwise.
Complex evaluate(const dsl::NodePtr& ast, const Complex& q, const NumericBindings& env = {},
                 const NumericOptions& opts = {});

// the defining series of a mock theta function; requires |q| < 1
Complex evalSeriesNumeric(MockThetaName name, const Complex& q, const NumericOptions& opts = {});
Complex evalSeriesNumeric(const dsl::NodePtr& ast, const Complex& q, const NumericOptions& opts = {});
// same as evalSeriesNumeric but named for product-form expressions (theta companions)
Complex evalProductNumeric(const dsl::NodePtr& ast, const Complex& q, const NumericOptions& opts = {});

// sum of the stored terms of a truncated series at q (rational exponents use the principal branch)
Complex evalTruncated(const Series& s, const Complex& q, mpfr_prec_t bits);

}  // namespace qmock::numeric
