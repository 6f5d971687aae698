#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "pomhardy/core.hpp"
#include "pomhardy/space.hpp"

namespace pomhardy {

enum class OrderTag { Leq, Prec };

/// An order ideal: downward closed under the tagged order. Members are kept
/// sorted by id.
struct DecreasingSet {
  std::vector<int> members;
  OrderTag order = OrderTag::Prec;
};

/// A nonnegative function that is decreasing for the tagged order.
struct MonotoneFunction {
  std::vector<double> values;
  OrderTag order = OrderTag::Prec;
};

inline bool order_le(const PomSpace& s, OrderTag tag, int u, int x) {
  return tag == OrderTag::Leq ? s.leq(u, x) : s.prec(u, x);
}

namespace detail {

/// Immediate predecessors under the tagged order; closure against these
/// suffices for downward-closure and monotonicity checks.
inline const std::vector<int>* cover_preds(const PomSpace& s, OrderTag tag, int x,
                                           std::vector<int>& scratch) {
  if (tag == OrderTag::Prec) return &s.prec_preds[x];
  scratch.clear();
  if (s.parent[x] >= 0) scratch.push_back(s.parent[x]);
  return &scratch;
}

}  // namespace detail

inline bool is_decreasing_set(const PomSpace& s, std::span<const int> members, OrderTag tag) {
  std::vector<char> in(s.n_points, 0);
  for (int m : members) {
    if (m < 0 || m >= s.n_points) throw PreconditionError("unknown point id " + std::to_string(m));
    in[m] = 1;
  }
  std::vector<int> scratch;
  for (int m : members)
    for (int u : *detail::cover_preds(s, tag, m, scratch))
      if (!in[u]) return false;
  return true;
}

inline bool is_decreasing_set(const PomSpace& s, const DecreasingSet& d) {
  return is_decreasing_set(s, d.members, d.order);
}

/// rel_tol absorbs rounding between mathematically equal values reached by
/// different accumulation paths (prefix means of a constant run, say); leave
/// it at zero when values were built exactly.
inline bool is_decreasing_function(const PomSpace& s, std::span<const double> values,
                                   bool use_prec, double rel_tol = 0.0) {
  std::vector<int> scratch;
  OrderTag tag = use_prec ? OrderTag::Prec : OrderTag::Leq;
  for (int x = 0; x < s.n_points; ++x)
    for (int u : *detail::cover_preds(s, tag, x, scratch)) {
      double slack = rel_tol * std::max(std::fabs(values[u]), std::fabs(values[x]));
      if (values[u] < values[x] - slack) return false;
    }
  return true;
}

inline bool is_decreasing_function(const PomSpace& s, const MonotoneFunction& f) {
  return is_decreasing_function(s, f.values, f.order == OrderTag::Prec);
}

// ---------------------------------------------------------------------------
// Enumeration
//
// Point ids form a linear extension of both orders for every constructor, so
// extending an ideal only by ids larger than the last added element yields
// each nonempty ideal exactly once, in lexicographic order of the sorted
// member lists.

template <class Fn>
inline long long for_each_decreasing_set(const PomSpace& s, OrderTag tag, long long cap,
                                         Fn&& fn) {
  std::vector<char> in(s.n_points, 0);
  std::vector<int> members;
  std::vector<int> scratch;
  long long count = 0;

  auto can_add = [&](int e) {
    for (int u : *detail::cover_preds(s, tag, e, scratch))
      if (!in[u]) return false;
    return true;
  };

  auto rec = [&](auto&& self, int min_id) -> void {
    for (int e = min_id; e < s.n_points; ++e) {
      if (in[e] || !can_add(e)) continue;
      in[e] = 1;
      members.push_back(e);
      if (++count > cap) throw IdealOverflow(cap);
      fn(const_cast<const std::vector<int>&>(members));
      self(self, e + 1);
      members.pop_back();
      in[e] = 0;
    }
  };
  rec(rec, 0);
  return count;
}

inline long long count_decreasing_sets(const PomSpace& s, OrderTag tag, long long cap) {
  return for_each_decreasing_set(s, tag, cap, [](const std::vector<int>&) {});
}

inline std::vector<DecreasingSet> list_decreasing_sets(const PomSpace& s, OrderTag tag,
                                                       long long cap) {
  std::vector<DecreasingSet> out;
  for_each_decreasing_set(s, tag, cap,
                          [&](const std::vector<int>& m) { out.push_back({m, tag}); });
  return out;
}

// ---------------------------------------------------------------------------
// Random ideals
//
// Grids and the componentwise blocked order sample a column-height profile
// (weakly decreasing heights); the profile distribution is weighted by the
// number of completions, so it is close to uniform over staircases but is
// used only for lower-bound searches. Total orders sample a uniform prefix.
// Everything else uses the prefix-maximum threshold device.

namespace detail {

inline double log_binomial(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

/// Weakly decreasing heights h[0] >= ... >= h[cols-1], 0 <= h < = rows,
/// weighted by lattice-path completions.
inline std::vector<int> random_profile(int cols, int rows, Rng& rng) {
  std::vector<int> h(cols, 0);
  int bound = rows;
  for (int i = 0; i < cols; ++i) {
    int rem = cols - 1 - i;
    // choose h[i] in [0, bound] with weight C(rem + h[i], h[i])
    double total = 0.0;
    std::vector<double> wgt(bound + 1);
    for (int v = 0; v <= bound; ++v) {
      wgt[v] = std::exp(log_binomial(rem + v, v));
      total += wgt[v];
    }
    double u = rng.uniform() * total;
    int pick = bound;
    double acc = 0.0;
    for (int v = 0; v <= bound; ++v) {
      acc += wgt[v];
      if (u < acc) {
        pick = v;
        break;
      }
    }
    h[i] = pick;
    bound = pick;
  }
  return h;
}

inline DecreasingSet profile_ideal_grid(const PomSpace& s, const std::vector<int>& heights,
                                        OrderTag tag) {
  DecreasingSet d;
  d.order = tag;
  for (int j = 1; j <= s.ny; ++j)
    for (int i = 1; i <= s.nx; ++i)
      if (j <= heights[i - 1]) d.members.push_back((j - 1) * s.nx + (i - 1));
  std::sort(d.members.begin(), d.members.end());
  return d;
}

inline DecreasingSet profile_ideal_blocked(const PomSpace& s, const std::vector<int>& lens,
                                           OrderTag tag) {
  DecreasingSet d;
  d.order = tag;
  for (int b = 0; b < s.nx; ++b)
    for (int k = 1; k <= lens[b]; ++k) d.members.push_back(b * s.ny + (k - 1));
  std::sort(d.members.begin(), d.members.end());
  return d;
}

}  // namespace detail

/// A random nonempty decreasing set for the operator order: prefix-maximum
/// threshold along parent links.
inline DecreasingSet random_decreasing_set_leq(const PomSpace& s, Rng& rng) {
  for (;;) {
    std::vector<double> g(s.n_points);
    for (int i = 0; i < s.n_points; ++i) g[i] = rng.uniform();
    for (int x : s.topo)
      if (s.parent[x] >= 0) g[x] = std::max(g[x], g[s.parent[x]]);
    double t = rng.uniform();
    DecreasingSet d;
    d.order = OrderTag::Leq;
    for (int i = 0; i < s.n_points; ++i)
      if (g[i] <= t) d.members.push_back(i);
    if (!d.members.empty()) return d;
  }
}

/// A random nonempty decreasing set for the space's weaker order.
inline DecreasingSet random_decreasing_set(const PomSpace& s, Rng& rng) {
  switch (s.prec_kind) {
    case PrecKind::PositionOrder: {
      int k = static_cast<int>(rng.uniform_int(1, s.n_points));
      DecreasingSet d;
      d.order = OrderTag::Prec;
      d.members.resize(k);
      for (int i = 0; i < k; ++i) d.members[i] = i;
      return d;
    }
    case PrecKind::Componentwise: {
      for (;;) {
        std::vector<int> prof = detail::random_profile(s.nx, s.ny, rng);
        bool empty = std::all_of(prof.begin(), prof.end(), [](int v) { return v == 0; });
        if (empty) continue;
        if (s.kind == SpaceKind::BlockedChain)
          return detail::profile_ideal_blocked(s, prof, OrderTag::Prec);
        return detail::profile_ideal_grid(s, prof, OrderTag::Prec);
      }
    }
    case PrecKind::SameAsLeq:
      if (s.kind == SpaceKind::Chain) {
        int k = static_cast<int>(rng.uniform_int(1, s.n_points));
        DecreasingSet d;
        d.order = OrderTag::Prec;
        d.members.resize(k);
        for (int i = 0; i < k; ++i) d.members[i] = i;
        return d;
      }
      if (s.kind == SpaceKind::BlockedChain) {
        // independent per-block prefixes
        for (;;) {
          std::vector<int> lens(s.nx);
          bool any = false;
          for (int b = 0; b < s.nx; ++b) {
            lens[b] = static_cast<int>(rng.uniform_int(0, s.ny));
            any |= lens[b] > 0;
          }
          if (any) return detail::profile_ideal_blocked(s, lens, OrderTag::Prec);
        }
      }
      [[fallthrough]];
    case PrecKind::Explicit: {
      // prefix-maximum threshold: g is increasing along the order, so a
      // sublevel set of g is an ideal.
      for (;;) {
        std::vector<double> g(s.n_points);
        for (int i = 0; i < s.n_points; ++i) g[i] = rng.uniform();
        for (int x : s.topo)
          for (int u : s.prec_preds[x]) g[x] = std::max(g[x], g[u]);
        double t = rng.uniform();
        DecreasingSet d;
        d.order = OrderTag::Prec;
        for (int i = 0; i < s.n_points; ++i)
          if (g[i] <= t) d.members.push_back(i);
        if (!d.members.empty()) return d;
      }
    }
  }
  throw UnsupportedSpaceError("random_decreasing_set: unhandled space");
}

/// Random positive combination of decreasing-set indicators; decreasing by
/// construction and reproducible for a fixed seed.
inline MonotoneFunction random_decreasing_function(const PomSpace& s, OrderTag tag,
                                                   int n_layers, uint64_t seed) {
  if (n_layers < 1) throw PreconditionError("need at least one layer");
  Rng rng(seed);
  MonotoneFunction f;
  f.order = tag;
  f.values.assign(s.n_points, 0.0);
  for (int l = 0; l < n_layers; ++l) {
    DecreasingSet d = tag == OrderTag::Prec ? random_decreasing_set(s, rng)
                                            : random_decreasing_set_leq(s, rng);
    double c = rng.uniform(0.1, 1.1);
    for (int m : d.members) f.values[m] += c;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Layer cake

struct Layer {
  double threshold;
  DecreasingSet set;
};

/// Level sets {f > t} at the sorted distinct positive values of f. Each level
/// set is decreasing, and the stack reconstructs f exactly.
inline std::vector<Layer> layer_cake(const PomSpace& s, const MonotoneFunction& f) {
  std::vector<double> levels;
  for (double v : f.values)
    if (v > 0.0) levels.push_back(v);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<Layer> out;
  double prev = 0.0;
  for (double t : levels) {
    Layer l;
    l.threshold = t;
    l.set.order = f.order;
    for (int i = 0; i < s.n_points; ++i)
      if (f.values[i] > prev) l.set.members.push_back(i);
    if (!is_decreasing_set(s, l.set))
      throw PreconditionError("level set at threshold " + fmt17(t) + " is not decreasing");
    out.push_back(std::move(l));
    prev = t;
  }
  return out;
}

/// Evaluates the layer-cake sum. Level sets are nested, so writing each
/// layer's threshold over its members leaves every point at its own stored
/// value; the telescoping sum is reproduced without rounding.
inline std::vector<double> reconstruct_layers(int n_points, std::span<const Layer> layers) {
  std::vector<double> v(n_points, 0.0);
  for (const Layer& l : layers)
    for (int m : l.set.members) v[m] = l.threshold;
  return v;
}

// ---------------------------------------------------------------------------
// Grid profile serialization

/// Column heights of a grid ideal (the discrete staircase boundary).
inline std::vector<int> ideal_to_profile(const PomSpace& s, std::span<const int> members) {
  if (s.kind != SpaceKind::VerticalGrid && s.kind != SpaceKind::BlockedChain)
    throw UnsupportedSpaceError("profiles only exist on grids and blocked chains");
  int cols = s.nx;
  std::vector<int> h(cols, 0);
  for (int m : members) h[s.ca[m] - 1] = std::max(h[s.ca[m] - 1], s.cb[m]);
  return h;
}

inline DecreasingSet profile_to_ideal(const PomSpace& s, std::span<const int> heights,
                                      OrderTag tag) {
  if (static_cast<int>(heights.size()) != s.nx)
    throw PreconditionError("profile length does not match column count");
  std::vector<int> prof(heights.begin(), heights.end());
  if (s.kind == SpaceKind::VerticalGrid) return detail::profile_ideal_grid(s, prof, tag);
  if (s.kind == SpaceKind::BlockedChain) return detail::profile_ideal_blocked(s, prof, tag);
  throw UnsupportedSpaceError("profiles only exist on grids and blocked chains");
}

}  // namespace pomhardy
