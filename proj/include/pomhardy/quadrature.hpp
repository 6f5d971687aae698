#pragma once

#include <cmath>

#include "pomhardy/core.hpp"

namespace pomhardy {

/// Quadrature parameters for the continuous condition evaluators: improper
/// integrals are truncated at `truncate` and discretized with `cells`
/// midpoints per integral.
struct QuadOptions {
  double truncate = 100.0;
  int cells = 10000;
};

template <class F>
inline double midpoint_integral(F&& f, double a, double b, int cells) {
  if (!(b > a)) return 0.0;
  double h = (b - a) / cells;
  double sum = 0.0;
  for (int k = 0; k < cells; ++k) {
    double v = f(a + (k + 0.5) * h);
    if (std::isnan(v)) throw ConstructionError("integrand undefined at " + fmt17(a + (k + 0.5) * h));
    sum += v;
  }
  return sum * h;
}

namespace detail {

constexpr double kDivergenceRatio = 0.995;
constexpr int kEdgeCells = 512;

}  // namespace detail

/// Tail divergence test at the outer edge: compares the integrand mass of the
/// last two dyadic blocks [T/4,T/2] and [T/2,T]. A non-decaying profile
/// (ratio >= ~1) marks the untruncated integral divergent; power-law
/// integrands are classified sharply at their convergence boundary.
template <class F>
inline bool dyadic_tail_divergent(F&& f, double T) {
  double inner = midpoint_integral(f, T / 4.0, T / 2.0, detail::kEdgeCells);
  double outer = midpoint_integral(f, T / 2.0, T, detail::kEdgeCells);
  if (inner <= 0.0) return outer > 0.0;
  return outer >= detail::kDivergenceRatio * inner;
}

/// Divergence test at the origin: same device on the two innermost resolvable
/// dyadic blocks of [0, r].
template <class F>
inline bool dyadic_origin_divergent(F&& f, double r) {
  double eps = r * 0x1.0p-21;
  double inner = midpoint_integral(f, eps, 2.0 * eps, detail::kEdgeCells);
  double outer = midpoint_integral(f, 2.0 * eps, 4.0 * eps, detail::kEdgeCells);
  if (outer <= 0.0) return inner > 0.0;
  return inner >= detail::kDivergenceRatio * outer;
}

}  // namespace pomhardy
