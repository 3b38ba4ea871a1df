#pragma once

#include <map>
#include <set>
#include <string>

#include "qmock/bilateral.hpp"
#include "qmock/cesaro.hpp"
#include "qmock/dsl/ast.hpp"
#include "qmock/lead.hpp"
#include "qmock/monomial.hpp"
#include "qmock/series.hpp"

namespace qmock::dsl {

using ParamBindings = std::map<std::string, Monomial>;

struct EvalOptions {
  bool allowCesaro = false;  // lets non-growing infinite sums (and mu6) fall back to Cesaro summation
  SumOptions sums;
  CesaroOptions cesaro;
  int probeLimit = 128;  // how far past a lower bound a divisor is expanded to find its leading term
};

// truncated q-series of the expression to exactly O(q^order)
Series evaluate(const NodePtr& ast, const Exponent& order, const ParamBindings& params = {},
                const EvalOptions& opts = {});

Lead leadingTerm(const NodePtr& ast, const ParamBindings& params = {}, const EvalOptions& opts = {});

// variables that are not bound by an enclosing sum or product
std::set<std::string> freeParameters(const NodePtr& ast);

struct ValidityReport {
  bool ok = true;
  std::string message;
};
// every infinite sum must have growing valuations (or be allowed Cesaro), and the expression must expand
ValidityReport checkFormalValidity(const NodePtr& ast, const ParamBindings& params, const EvalOptions& opts);

}  // namespace qmock::dsl
