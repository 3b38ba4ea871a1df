#include "qmock/cesaro.hpp"

#include <algorithm>

#include "qmock/error.hpp"

namespace qmock {

CesaroValue cesaroSum(const TermAt& termAt, const Exponent& order, const CesaroOptions& opts) {
  Series partial = Series::zero(order);
  Series lastEven, lastOdd;
  int stableEven = -1, stableOdd = -1;  // -1: no previous value of this parity yet
  std::int64_t sinceEven = 0, sinceOdd = 0;
  std::optional<std::int64_t> cap = opts.cap;
  for (std::int64_t n = 0;; ++n) {
    Series t = termAt(n, order);
    if (!cap) {
      std::int64_t hint = std::max<std::int64_t>(1, t.denomHint());
      cap = 4 * std::max<std::int64_t>(1, order.ceil()) * hint + 2 * opts.window;
    }
    partial = (partial + t).truncated(order);
    Series& last = (n % 2 == 0) ? lastEven : lastOdd;
    int& stable = (n % 2 == 0) ? stableEven : stableOdd;
    std::int64_t& since = (n % 2 == 0) ? sinceEven : sinceOdd;
    if (stable >= 0 && partial == last) {
      ++stable;
    } else {
      stable = 0;
      since = n;
    }
    last = partial;
    if (stableEven >= opts.window && stableOdd >= opts.window) {
      Series value = ((lastEven + lastOdd).scaled(Gaussian::fraction(1, 2))).truncated(order);
      return CesaroValue{value, std::max(sinceEven, sinceOdd)};
    }
    if (n >= *cap)
      throw Error(ErrorKind::NoStabilization,
                  "parity partial sums still moving after " + std::to_string(n + 1) + " terms at order " +
                      order.toString());
  }
}

}  // namespace qmock
