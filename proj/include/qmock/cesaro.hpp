#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "qmock/series.hpp"

namespace qmock {

struct CesaroValue {
  Series value;
  std::int64_t stabilizedAt = 0;  // first index from which both parity subsequences were frozen
};

struct CesaroOptions {
  std::optional<std::int64_t> cap;  // default 4 * ceil(order) * denomHint
  int window = 8;                   // consecutive unchanged partial sums required per parity
};

using TermAt = std::function<Series(std::int64_t n, const Exponent& order)>;

// Average of the limits of the even- and odd-indexed partial sums, computed modulo q^order.
CesaroValue cesaroSum(const TermAt& termAt, const Exponent& order, const CesaroOptions& opts = {});

}  // namespace qmock
