#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "pomhardy/core.hpp"
#include "pomhardy/space.hpp"

namespace pomhardy {

/// Per-point values of an operator image; indexed by point id.
using FieldValues = std::vector<double>;

/// The averaging operator: (Sf)(x) = sum_{u <= x} f(u) mu_x({u}).
/// Quotient measures run in O(n) via prefix accumulation along parent chains;
/// explicit measures walk each down-set. Summation order is fixed by id, so
/// results are identical across runs and worker counts.
inline FieldValues apply_hardy(const PomSpace& s, std::span<const double> f) {
  FieldValues out(s.n_points, 0.0);
  if (s.quotient_measure()) {
    std::vector<double> acc(s.n_points, 0.0);
    for (int x : s.topo) {
      double below = s.parent[x] >= 0 ? acc[s.parent[x]] : 0.0;
      acc[x] = below + f[x] * s.mu_weight[x];
      out[x] = acc[x] / s.mu_total[x];
    }
    return out;
  }
  for (int x = 0; x < s.n_points; ++x) {
    double v = 0.0;
    for (int u = x; u >= 0; u = s.parent[u]) v += f[u] * s.mu_atoms[x][s.depth[u]];
    out[x] = v;
  }
  return out;
}

/// Row (axis 1) or column (axis 2) prefix means on a grid.
inline FieldValues apply_partial(const PomSpace& s, std::span<const double> f, int axis) {
  if (s.kind != SpaceKind::VerticalGrid)
    throw UnsupportedSpaceError("partial averaging needs a rectangular grid");
  if (axis != 1 && axis != 2) throw PreconditionError("axis must be 1 or 2");
  FieldValues out(s.n_points, 0.0);
  if (axis == 2) {
    for (int i = 0; i < s.nx; ++i) {
      double acc = 0.0;
      for (int j = 1; j <= s.ny; ++j) {
        int id = (j - 1) * s.nx + i;
        acc += f[id];
        out[id] = acc / j;
      }
    }
  } else {
    for (int j = 0; j < s.ny; ++j) {
      double acc = 0.0;
      for (int i = 1; i <= s.nx; ++i) {
        int id = j * s.nx + (i - 1);
        acc += f[id];
        out[id] = acc / i;
      }
    }
  }
  return out;
}

/// Full quadrant average on a grid, computed as the composition of the two
/// partial averages.
inline FieldValues apply_product_hardy(const PomSpace& s, std::span<const double> f) {
  FieldValues tmp = apply_partial(s, f, 2);
  return apply_partial(s, tmp, 1);
}

/// Per-block prefix mean on a blocked chain (the variable-endpoint operator).
/// Coincides with apply_hardy there, since the operator order stops at block
/// boundaries.
inline FieldValues apply_blocked(const PomSpace& s, std::span<const double> f) {
  if (s.kind != SpaceKind::BlockedChain)
    throw UnsupportedSpaceError("blocked averaging needs a blocked chain");
  return apply_hardy(s, f);
}

/// m-fold column average.
inline FieldValues iterate_s2(const PomSpace& s, std::span<const double> f, int m) {
  if (m < 1) throw PreconditionError("iteration count must be positive");
  FieldValues cur(f.begin(), f.end());
  for (int i = 0; i < m; ++i) cur = apply_partial(s, cur, 2);
  return cur;
}

/// Closed form of the m-fold column average of a staircase indicator with
/// boundary height h: 1 below the boundary, then
/// (h/t) * sum_{j<m} log^j(t/h) / j! above it.
inline double closed_form_s2m(double h, int m, double t) {
  if (m < 1) throw PreconditionError("iteration count must be positive");
  if (h < 0.0) throw PreconditionError("boundary height must be nonnegative");
  if (t <= 0.0) throw PreconditionError("evaluation height must be positive");
  if (t <= h) return 1.0;
  if (h == 0.0) return 0.0;
  double lg = std::log(t / h);
  double term = 1.0;
  double sum = 1.0;
  for (int j = 1; j < m; ++j) {
    term *= lg / j;
    sum += term;
  }
  return (h / t) * sum;
}

// ---------------------------------------------------------------------------
// The chain power inequality: for positive masses m_u on a finite chain,
//   (sum m)^alpha <= C_alpha * sum_u P_u^{alpha-1} m_u
/// with P_u the inclusive prefix sum through u.

struct PowerInequalitySides {
  double lhs;
  double rhs;
  double c_alpha;
};

/// The pinned constant max(1, 2^{alpha-1}).
inline double power_inequality_constant(double alpha) {
  return std::max(1.0, std::pow(2.0, alpha - 1.0));
}

inline PowerInequalitySides chain_power_sides(std::span<const double> masses, double alpha) {
  if (masses.empty()) throw PreconditionError("chain has no atoms");
  double total = 0.0;
  for (double m : masses) {
    if (!(m > 0.0)) throw PreconditionError("chain masses must be positive");
    total += m;
  }
  double rhs = 0.0;
  double prefix = 0.0;
  for (double m : masses) {
    prefix += m;
    rhs += std::pow(prefix, alpha - 1.0) * m;
  }
  return {std::pow(total, alpha), rhs, power_inequality_constant(alpha)};
}

}  // namespace pomhardy
