#pragma once

#include <cmath>
#include <stdexcept>

namespace dynamo {

struct BisectionResult {
  double root = 0.0;
  double value = 0.0;  // f(root)
  int iterations = 0;
};

/// Plain bisection on [lo, hi] until the bracket is narrower than `width`.
/// Requires f(lo) f(hi) <= 0; throws std::domain_error otherwise. Returns an
/// exact zero as soon as one is hit.
template <class F>
BisectionResult bisect(F&& f, double lo, double hi, double width, int max_iterations = 200) {
  double f_lo = f(lo);
  if (f_lo == 0.0) return {lo, 0.0, 0};
  double f_hi = f(hi);
  if (f_hi == 0.0) return {hi, 0.0, 0};
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw std::domain_error("bisect: root is not bracketed");
  }

  int it = 0;
  while (hi - lo > width && it < max_iterations) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at machine resolution
    const double f_mid = f(mid);
    ++it;
    if (f_mid == 0.0) return {mid, 0.0, it};
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  return std::abs(f_lo) <= std::abs(f_hi) ? BisectionResult{lo, f_lo, it} : BisectionResult{hi, f_hi, it};
}

}  // namespace dynamo
