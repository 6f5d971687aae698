#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "pomhardy/core.hpp"
#include "pomhardy/hardy.hpp"
#include "pomhardy/monotone.hpp"
#include "pomhardy/quadrature.hpp"
#include "pomhardy/space.hpp"
#include "pomhardy/weight.hpp"

namespace pomhardy {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Budgets for the sup-over-ideals searches.
struct SearchBudget {
  long long ideal_cap = 100000;  // exhaustive enumeration below this many ideals
  int samples = 1000;            // random ideals / functions when not exhaustive
  int layers = 3;                // layers per sampled monotone function
  uint64_t seed = 0xB9;
  int workers = 1;
};

/// A measured condition constant: the supremum of a ratio over decreasing
/// sets, the witness attaining it, and how the search ran.
struct ConditionReport {
  double constant = 0.0;
  bool infinite = false;
  bool exact = true;  // enumeration was exhaustive
  DecreasingSet witness;
  long long n_sets_examined = 0;
  std::string note;
};

// ---------------------------------------------------------------------------
// The master ratio over a decreasing set D:
//   [ sum_{x not in D} mu_x(D cap X_x)^p nu({x}) ] / nu(D).
// Zero denominators follow the inequality's logic: 0/0 is 0, otherwise +inf.

inline double condition_ratio(const PomSpace& s, double p, const DecreasingSet& d) {
  if (!(p > 0.0)) throw PreconditionError("exponent must be positive");
  if (!is_decreasing_set(s, d))
    throw PreconditionError("set is not decreasing for its designated order");
  std::vector<char> in(s.n_points, 0);
  for (int m : d.members) in[m] = 1;
  double num = 0.0, den = 0.0;
  for (int x = 0; x < s.n_points; ++x) {
    if (in[x]) {
      den += s.nu[x];
      continue;
    }
    double mass = s.mu_downset_mass(x, in);
    if (mass > 0.0) num += std::pow(mass, p) * s.nu[x];
  }
  if (den > 0.0) return num / den;
  return num > 0.0 ? kInf : 0.0;
}

namespace detail {

inline bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Sup of ratio_fn over decreasing sets for the weaker order: exhaustive when
/// the ideal count fits the cap, otherwise over random samples. Ties pick the
/// lexicographically smallest witness, so results do not depend on worker
/// count or sampling internals.
template <class RatioFn>
inline ConditionReport sup_over_ideals(const PomSpace& s, const SearchBudget& budget,
                                       RatioFn&& ratio_fn) {
  ConditionReport rep;
  rep.witness.order = OrderTag::Prec;
  auto consider = [&](const std::vector<int>& members) {
    double r = ratio_fn(members);
    ++rep.n_sets_examined;
    bool better = r > rep.constant ||
                  (r == rep.constant && !rep.witness.members.empty() &&
                   lex_less(members, rep.witness.members));
    if (rep.n_sets_examined == 1 || better) {
      rep.constant = r;
      rep.witness.members = members;
    }
  };
  try {
    for_each_decreasing_set(s, OrderTag::Prec, budget.ideal_cap, consider);
    rep.exact = true;
  } catch (const IdealOverflow&) {
    rep = ConditionReport{};
    rep.witness.order = OrderTag::Prec;
    rep.exact = false;
    rep.note = "ideal count exceeds cap; sampled search";
    // the indicator sweeps in the norm search derive their stream the same
    // way, so sampled condition and norm records examine the same sets
    Rng rng(budget.seed ^ 0x1D1Au);
    for (int t = 0; t < budget.samples; ++t) {
      DecreasingSet d = random_decreasing_set(s, rng);
      consider(d.members);
    }
  }
  rep.infinite = std::isinf(rep.constant);
  return rep;
}

/// All prefix ratios of a quotient chain in one quadratic pass.
inline ConditionReport chain_condition_constant(const PomSpace& s, double p) {
  ConditionReport rep;
  rep.witness.order = OrderTag::Prec;
  int n = s.n_points;
  std::vector<double> nu_prefix(n + 1, 0.0);
  for (int i = 0; i < n; ++i) nu_prefix[i + 1] = nu_prefix[i] + s.nu[i];
  for (int k = 1; k <= n; ++k) {
    double num = 0.0;
    double pk = s.mu_total[k - 1];
    for (int x = k; x < n; ++x) num += std::pow(pk / s.mu_total[x], p) * s.nu[x];
    double den = nu_prefix[k];
    double r = den > 0.0 ? num / den : (num > 0.0 ? kInf : 0.0);
    ++rep.n_sets_examined;
    if (k == 1 || r > rep.constant) {
      rep.constant = r;
      rep.witness.members.resize(k);
      for (int i = 0; i < k; ++i) rep.witness.members[i] = i;
    }
  }
  rep.infinite = std::isinf(rep.constant);
  return rep;
}

}  // namespace detail

/// Supremum of condition_ratio over all decreasing sets of the weaker order.
inline ConditionReport condition_constant(const PomSpace& s, double p,
                                          const SearchBudget& budget = {}) {
  if (!(p > 0.0)) throw PreconditionError("exponent must be positive");
  if (s.kind == SpaceKind::Chain && s.quotient_measure())
    return detail::chain_condition_constant(s, p);
  return detail::sup_over_ideals(s, budget, [&](const std::vector<int>& members) {
    DecreasingSet d{members, OrderTag::Prec};
    return condition_ratio(s, p, d);
  });
}

// ---------------------------------------------------------------------------
// Half-line weight condition (continuous, truncated quadrature):
//   ratio(r) = int_r^T (r/x)^p u(x) dx / int_0^r u(x) dx,
// with divergence detection at both domain edges.

struct BpOptions {
  QuadOptions quad;
  std::vector<double> r_grid;  // defaults to a geometric grid when empty
};

inline std::vector<double> default_r_grid(double truncate, int points = 24) {
  std::vector<double> r(points);
  double lo = truncate * 1e-3, hi = truncate * 0.5;
  for (int i = 0; i < points; ++i)
    r[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
  return r;
}

struct BpReport {
  double constant = 0.0;
  bool infinite = false;
  std::string flag;  // which divergence fired
  std::vector<std::pair<double, double>> per_r;
};

namespace detail {

/// Shared evaluator; log_power > 0 inserts log^m(x/r)/m! into the tail
/// integrand (used by the exponent self-improvement search). Classification
/// flags are only meaningful for log_power == 0.
inline BpReport bp_report_impl(const WeightSpec& u, double p, const BpOptions& opt,
                               int log_power, bool classify) {
  if (!(p > 0.0)) throw PreconditionError("exponent must be positive");
  BpReport rep;
  const double T = opt.quad.truncate;
  std::vector<double> grid = opt.r_grid.empty() ? default_r_grid(T) : opt.r_grid;

  if (classify) {
    auto tail_integrand = [&](double x) { return u.eval(x) / std::pow(x, p); };
    if (dyadic_tail_divergent(tail_integrand, T)) {
      rep.infinite = true;
      rep.constant = kInf;
      rep.flag = "tail-divergent";
      return rep;
    }
    if (dyadic_origin_divergent([&](double x) { return u.eval(x); },
                                *std::min_element(grid.begin(), grid.end()))) {
      rep.infinite = true;
      rep.constant = kInf;
      rep.flag = "origin-divergent";
      return rep;
    }
  }

  double log_factorial = 0.0;
  for (int j = 2; j <= log_power; ++j) log_factorial += std::log(static_cast<double>(j));
  for (double r : grid) {
    double num = midpoint_integral(
        [&](double x) {
          double v = std::pow(r / x, p) * u.eval(x);
          if (log_power > 0)
            v *= std::exp(log_power * std::log(std::log(x / r)) - log_factorial);
          return v;
        },
        r, T, opt.quad.cells);
    double den = midpoint_integral([&](double x) { return u.eval(x); }, 0.0, r, opt.quad.cells);
    double ratio = den > 0.0 ? num / den : (num > 0.0 ? kInf : 0.0);
    rep.per_r.emplace_back(r, ratio);
    if (ratio > rep.constant) rep.constant = ratio;
  }
  rep.infinite = std::isinf(rep.constant);
  if (rep.infinite && rep.flag.empty()) rep.flag = "zero-prefix-mass";
  return rep;
}

}  // namespace detail

inline BpReport bp_chain_constant(const WeightSpec& u, double p, const BpOptions& opt = {}) {
  return detail::bp_report_impl(u, p, opt, 0, true);
}

// ---------------------------------------------------------------------------
// Specialized ratios

/// Tree form of the condition: sum over x outside D of (|best ancestor in
/// D| / |x|)^p nu(x), against nu(D). Vertices outside D whose geodesic misses
/// D contribute nothing.
inline double tree_condition_ratio(const PomSpace& s, double p, const DecreasingSet& d) {
  if (s.prec_kind != PrecKind::SameAsLeq && d.order == OrderTag::Prec)
    throw PreconditionError("tree condition expects the operator order");
  if (!is_decreasing_set(s, d.members, OrderTag::Leq))
    throw PreconditionError("set is not decreasing in the tree");
  std::vector<char> in(s.n_points, 0);
  for (int m : d.members) in[m] = 1;
  double num = 0.0, den = 0.0;
  for (int x = 0; x < s.n_points; ++x) {
    if (in[x]) {
      den += s.nu[x];
      continue;
    }
    int best = -1;
    for (int u = x; u >= 0; u = s.parent[u])
      if (in[u]) {
        best = u;
        break;
      }
    if (best < 0) continue;
    double frac = static_cast<double>(s.depth[best] + 1) / (s.depth[x] + 1);
    num += std::pow(frac, p) * s.nu[x];
  }
  if (den > 0.0) return num / den;
  return num > 0.0 ? kInf : 0.0;
}

enum class GridConditionMode { Vertical, Full, Horizontal };

/// Grid forms of the condition for a componentwise-decreasing set: the
/// vertical mode uses the column slice |D_x| against t, the full mode the
/// rectangle area |D cap [0,x]x[0,y]| against xy, and the horizontal mode is
/// the transpose of the vertical one.
inline double grid_condition_ratio(const PomSpace& s, double p, const DecreasingSet& d,
                                   GridConditionMode mode) {
  if (s.kind != SpaceKind::VerticalGrid)
    throw UnsupportedSpaceError("grid condition needs a rectangular grid");
  if (!is_decreasing_set(s, d.members, OrderTag::Prec))
    throw PreconditionError("set is not decreasing on each variable");
  std::vector<char> in(s.n_points, 0);
  for (int m : d.members) in[m] = 1;

  std::vector<int> col_count(s.nx, 0), row_count(s.ny, 0);
  std::vector<int> rect_count;
  for (int m : d.members) {
    ++col_count[s.ca[m] - 1];
    ++row_count[s.cb[m] - 1];
  }
  if (mode == GridConditionMode::Full) {
    rect_count.assign(s.n_points, 0);
    for (int j = 1; j <= s.ny; ++j)
      for (int i = 1; i <= s.nx; ++i) {
        int id = (j - 1) * s.nx + (i - 1);
        int above = j > 1 ? rect_count[id - s.nx] : 0;
        int left = i > 1 ? rect_count[id - 1] : 0;
        int diag = (i > 1 && j > 1) ? rect_count[id - s.nx - 1] : 0;
        rect_count[id] = above + left - diag + (in[id] ? 1 : 0);
      }
  }

  double num = 0.0, den = 0.0;
  for (int x = 0; x < s.n_points; ++x) {
    if (in[x]) {
      den += s.nu[x];
      continue;
    }
    int i = s.ca[x], j = s.cb[x];
    double frac = 0.0;
    switch (mode) {
      case GridConditionMode::Vertical:
        frac = static_cast<double>(col_count[i - 1]) / j;
        break;
      case GridConditionMode::Horizontal:
        frac = static_cast<double>(row_count[j - 1]) / i;
        break;
      case GridConditionMode::Full:
        frac = static_cast<double>(rect_count[x]) / (static_cast<double>(i) * j);
        break;
    }
    if (frac > 0.0) num += std::pow(frac, p) * s.nu[x];
  }
  if (den > 0.0) return num / den;
  return num > 0.0 ? kInf : 0.0;
}

/// Supremum of a grid-condition mode over all componentwise ideals.
inline ConditionReport grid_condition_constant(const PomSpace& s, double p,
                                               GridConditionMode mode,
                                               const SearchBudget& budget = {}) {
  return detail::sup_over_ideals(s, budget, [&](const std::vector<int>& members) {
    DecreasingSet d{members, OrderTag::Prec};
    return grid_condition_ratio(s, p, d, mode);
  });
}

// ---------------------------------------------------------------------------
// Blocked-order conditions (continuous, per-unit-block quadrature)

struct BlockedSides {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio() const { return rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? kInf : 0.0); }
};

namespace detail {

inline double blocked_tail(const WeightSpec& u, double p, int block, double a, int cells) {
  if (a <= 0.0 || a >= 1.0) return 0.0;
  return midpoint_integral([&](double t) { return std::pow(a / t, p) * u.eval(block + t); }, a,
                           1.0, cells);
}

inline double blocked_prefix(const WeightSpec& u, int block, double a, int cells) {
  if (a <= 0.0) return 0.0;
  return midpoint_integral([&](double t) { return u.eval(block + t); }, 0.0, a, cells);
}

}  // namespace detail

/// Sequence form for the per-block and componentwise blocked orders:
///   lhs = sum_b int_{a_b}^1 (a_b/t)^p u(b+t) dt,
///   rhs = sum_b int_0^{a_b} u(b+t) dt.
/// The componentwise variant admits only weakly decreasing sequences.
inline BlockedSides blocked_condition(const WeightSpec& u, double p, BlockedVariant variant,
                                      std::span<const double> a_seq, int cells = 256) {
  if (variant == BlockedVariant::Prec3)
    throw PreconditionError("the position-order variant takes a single (block, a) pair");
  for (size_t b = 0; b < a_seq.size(); ++b) {
    if (a_seq[b] < 0.0 || a_seq[b] > 1.0)
      throw PreconditionError("sequence entry " + std::to_string(b) + " = " + fmt17(a_seq[b]) +
                              " outside [0,1]");
    if (variant == BlockedVariant::Prec2 && b > 0 && a_seq[b] > a_seq[b - 1])
      throw PreconditionError("variant prec2 requires a weakly decreasing sequence; entry " +
                              std::to_string(b) + " increases");
  }
  BlockedSides sides;
  for (size_t b = 0; b < a_seq.size(); ++b) {
    sides.lhs += detail::blocked_tail(u, p, static_cast<int>(b), a_seq[b], cells);
    sides.rhs += detail::blocked_prefix(u, static_cast<int>(b), a_seq[b], cells);
  }
  return sides;
}

/// Single-block form for the position order:
///   lhs = int_a^1 (a/t)^p u(n+t) dt,  rhs = int_0^{n+a} u(t) dt.
inline BlockedSides blocked_condition_single(const WeightSpec& u, double p, int block, double a,
                                             int cells = 256) {
  if (block < 0) throw PreconditionError("block index must be nonnegative");
  if (a < 0.0 || a > 1.0) throw PreconditionError("threshold a outside [0,1]");
  BlockedSides sides;
  sides.lhs = detail::blocked_tail(u, p, block, a, cells);
  for (int b = 0; b < block; ++b) sides.rhs += detail::blocked_prefix(u, b, 1.0, cells);
  sides.rhs += detail::blocked_prefix(u, block, a, cells);
  return sides;
}

/// Embeds a single-block pair into the decreasing-sequence class: full blocks
/// before it, a at the block, empty after. Evaluating the sequence form on
/// this reproduces the single-block sides exactly.
inline std::vector<double> blocked_embedding_sequence(int n_blocks, int block, double a) {
  std::vector<double> seq(n_blocks, 0.0);
  for (int b = 0; b < block && b < n_blocks; ++b) seq[b] = 1.0;
  if (block < n_blocks) seq[block] = a;
  return seq;
}

struct BlockedConstantReport {
  double constant = 0.0;
  bool infinite = false;
  std::vector<double> witness_seq;  // for the position order: {block, a}
  long long n_examined = 0;
};

/// Best ratio over a deterministic candidate pool. The pools nest: the
/// position-order grid embeds into the decreasing-sequence pool, which is
/// contained in the unconstrained pool, matching the strength ordering of the
/// three variants.
inline BlockedConstantReport blocked_condition_constant(const WeightSpec& u, double p,
                                                        BlockedVariant variant, int n_blocks,
                                                        int n_samples = 200,
                                                        uint64_t seed = 0xB9, int cells = 256) {
  BlockedConstantReport rep;
  auto consider = [&](const std::vector<double>& seq, const BlockedSides& sides) {
    ++rep.n_examined;
    double r = sides.ratio();
    if (r > rep.constant || rep.n_examined == 1) {
      rep.constant = r;
      rep.witness_seq = seq;
    }
  };

  const int a_steps = 20;
  if (variant == BlockedVariant::Prec3) {
    for (int b = 0; b < n_blocks; ++b)
      for (int k = 0; k <= a_steps; ++k) {
        double a = static_cast<double>(k) / a_steps;
        consider({static_cast<double>(b), a}, blocked_condition_single(u, p, b, a, cells));
      }
  } else {
    for (int b = 0; b < n_blocks; ++b)
      for (int k = 0; k <= a_steps; ++k) {
        double a = static_cast<double>(k) / a_steps;
        auto seq = blocked_embedding_sequence(n_blocks, b, a);
        consider(seq, blocked_condition(u, p, variant, seq, cells));
      }
    Rng rng(seed);
    for (int t = 0; t < n_samples; ++t) {
      std::vector<double> seq(n_blocks);
      for (double& a : seq) a = rng.uniform();
      std::vector<double> sorted = seq;
      std::sort(sorted.rbegin(), sorted.rend());
      // every decreasing candidate is admissible for the unconstrained
      // variant too, keeping the candidate pools nested like the classes
      if (variant == BlockedVariant::Prec1)
        consider(seq, blocked_condition(u, p, variant, seq, cells));
      consider(sorted, blocked_condition(u, p, variant, sorted, cells));
    }
  }
  rep.infinite = std::isinf(rep.constant);
  return rep;
}

// ---------------------------------------------------------------------------
// Product-weight rectangle condition (two factors), via the exact three-term
// expansion of the rectangle integral:
//   lhs = A1 a2^p T2 + A2 a1^p T1 + (a1 a2)^p T1 T2,   rhs = A1 A2,
// with A_j the prefix integral of u_j and T_j its p-tail integral.

struct ProductRectReport {
  double lhs = 0.0, rhs = 0.0, ratio = 0.0;
  bool infinite = false;
  std::array<bool, 2> factor_infinite{false, false};
  std::array<double, 2> factor_prefix{0.0, 0.0};
  std::array<double, 2> factor_tail{0.0, 0.0};
  std::array<double, 2> factor_ratio{0.0, 0.0};  // a^p T / A per factor
};

inline ProductRectReport product_rectangle_condition(const WeightSpec& u1, const WeightSpec& u2,
                                                     double p, double a1, double a2,
                                                     const QuadOptions& quad = {}) {
  if (!(p > 0.0)) throw PreconditionError("exponent must be positive");
  if (!(a1 > 0.0) || !(a2 > 0.0)) throw PreconditionError("rectangle corners must be positive");
  ProductRectReport rep;
  const WeightSpec* u[2] = {&u1, &u2};
  double a[2] = {a1, a2};
  for (int j = 0; j < 2; ++j) {
    auto tail_integrand = [&](double x) { return u[j]->eval(x) / std::pow(x, p); };
    if (dyadic_tail_divergent(tail_integrand, quad.truncate)) rep.factor_infinite[j] = true;
    if (dyadic_origin_divergent([&](double x) { return u[j]->eval(x); }, a[j]))
      rep.factor_infinite[j] = true;
    rep.factor_prefix[j] =
        midpoint_integral([&](double x) { return u[j]->eval(x); }, 0.0, a[j], quad.cells);
    rep.factor_tail[j] = midpoint_integral(tail_integrand, a[j], quad.truncate, quad.cells);
    rep.factor_ratio[j] = rep.factor_prefix[j] > 0.0
                              ? std::pow(a[j], p) * rep.factor_tail[j] / rep.factor_prefix[j]
                              : kInf;
  }
  rep.infinite = rep.factor_infinite[0] || rep.factor_infinite[1];
  rep.lhs = rep.factor_prefix[0] * std::pow(a[1], p) * rep.factor_tail[1] +
            rep.factor_prefix[1] * std::pow(a[0], p) * rep.factor_tail[0] +
            std::pow(a[0] * a[1], p) * rep.factor_tail[0] * rep.factor_tail[1];
  rep.rhs = rep.factor_prefix[0] * rep.factor_prefix[1];
  rep.ratio = rep.infinite ? kInf : (rep.rhs > 0.0 ? rep.lhs / rep.rhs : (rep.lhs > 0.0 ? kInf : 0.0));
  return rep;
}

// ---------------------------------------------------------------------------
// The endpoint norm at exponent one: sup over decreasing sets of
//   || S chi_D ||_{L1(nu)} / nu(D),
// with the full quadrant average on grids and the space's own operator
// elsewhere.

inline ConditionReport b1_norm(const PomSpace& s, const SearchBudget& budget = {}) {
  auto ratio_of = [&](const std::vector<int>& members) {
    std::vector<double> f(s.n_points, 0.0);
    double den = 0.0;
    for (int m : members) {
      f[m] = 1.0;
      den += s.nu[m];
    }
    FieldValues img =
        s.kind == SpaceKind::VerticalGrid ? apply_product_hardy(s, f) : apply_hardy(s, f);
    double num = 0.0;
    for (int x = 0; x < s.n_points; ++x) num += img[x] * s.nu[x];
    if (den > 0.0) return num / den;
    return num > 0.0 ? kInf : 0.0;
  };
  return detail::sup_over_ideals(s, budget, ratio_of);
}

// ---------------------------------------------------------------------------
// Exponent self-improvement: a weight whose condition constant is finite at p
// stays finite at p - eps.

struct PepsReport {
  double eps_proof = 0.0;     // 1/sigma from the constructive route
  double eps_star = 0.0;      // empirical boundary from bisection
  double c_measured = 0.0;    // iterated condition constant sup_m C_m^{1/m}
  double sigma = 0.0;
  int m_max = 0;
  bool star_at_floor = false;  // finite all the way down to exponent ~0
};

/// The constructive route bounds the iterated tail integrals with powers of a
/// constant; sigma = max(that constant, 1/p) + tolerance and eps = 1/sigma.
/// The m-th iterate inserts log^{m-1}(x/r)/(m-1)! into the tail, so the
/// measured constant is sup over m of the m-th sup-ratio's m-th root.
/// The empirical boundary bisects the smallest exponent with a finite
/// constant.
inline PepsReport p_eps_search(const WeightSpec& u, double p, const BpOptions& opt = {},
                               double tolerance = 0.1, int m_max = 8) {
  PepsReport rep;
  rep.m_max = m_max;

  BpReport base = bp_chain_constant(u, p, opt);
  if (base.infinite)
    throw PreconditionError("condition constant is infinite at exponent " + fmt17(p));

  rep.c_measured = base.constant;
  for (int m = 2; m <= m_max; ++m) {
    BpReport rm = detail::bp_report_impl(u, p, opt, m - 1, false);
    rep.c_measured = std::max(rep.c_measured, std::pow(rm.constant, 1.0 / m));
  }
  rep.sigma = std::max(rep.c_measured, 1.0 / p) + tolerance;
  rep.eps_proof = 1.0 / rep.sigma;

  double q_lo = std::min(1e-4, p / 2.0);
  double q_hi = p;
  auto finite_at = [&](double q) { return !bp_chain_constant(u, q, opt).infinite; };
  if (finite_at(q_lo)) {
    rep.star_at_floor = true;
    rep.eps_star = p - q_lo;
    return rep;
  }
  while (q_hi - q_lo > 0.005) {
    double mid = 0.5 * (q_lo + q_hi);
    if (finite_at(mid))
      q_hi = mid;
    else
      q_lo = mid;
  }
  rep.eps_star = p - 0.5 * (q_lo + q_hi);
  return rep;
}

}  // namespace pomhardy
