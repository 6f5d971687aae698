#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "pomhardy/core.hpp"
#include "pomhardy/weight.hpp"

namespace pomhardy {

enum class SpaceKind { Chain, VerticalGrid, Tree, BlockedChain, Custom };

/// How the weaker order is evaluated for a pair of points.
enum class PrecKind {
  SameAsLeq,      // the weaker order coincides with the operator order
  Componentwise,  // (ca,cb) <= (ca,cb) componentwise (grids; blocked offset order)
  PositionOrder,  // total order by point id (ids are sorted by position)
  Explicit        // stored reachability bitsets (hand-built spaces)
};

enum class BlockedVariant { Prec1 = 1, Prec2 = 2, Prec3 = 3 };

/// A finite measure-family space: a ground set with an operator order whose
/// down-sets are chains (stored as parent links), a per-point normalized
/// measure over each down-set, a weaker order for monotonicity, and a weight
/// measure nu on the whole set.
///
/// Spaces are immutable after construction; every member function is a pure
/// read and safe to call concurrently.
struct PomSpace {
  SpaceKind kind = SpaceKind::Custom;
  int n_points = 0;

  // Geometry. nx/ny are grid columns/rows or blocked blocks/cells-per-block.
  int nx = 0, ny = 0;
  double hx = 0.0, hy = 0.0;

  std::vector<int> parent;  // immediate predecessor in the operator order, -1 if minimal
  std::vector<int> depth;   // parent-chain length; |X_x| = depth[x]+1
  std::vector<int> topo;    // ids in a linear extension (parents first)
  std::vector<int> ca, cb;  // integer coordinates (1-based; cb=0 on 1-D spaces)
  std::vector<double> px, py;  // positions backing weight evaluation

  // Measure family. Either the quotient form (a global atom weight, with
  // mu_x = restriction to X_x normalized by mu_total[x]), or explicit per-pair
  // atoms indexed by the member's chain depth.
  std::vector<double> mu_weight;
  std::vector<double> mu_total;
  std::vector<std::vector<double>> mu_atoms;

  std::vector<double> nu;

  PrecKind prec_kind = PrecKind::SameAsLeq;
  std::vector<std::vector<int>> prec_preds;       // immediate weaker-order predecessors
  std::vector<std::vector<uint64_t>> prec_bits;   // Explicit: row x has bit u iff u prec x

  bool quotient_measure() const { return !mu_weight.empty(); }

  bool leq(int u, int x) const {
    if (u == x) return true;
    if (depth[u] >= depth[x]) return false;
    int a = x;
    while (depth[a] > depth[u]) a = parent[a];
    return a == u;
  }

  bool prec(int u, int x) const {
    switch (prec_kind) {
      case PrecKind::SameAsLeq:
        return leq(u, x);
      case PrecKind::Componentwise:
        return ca[u] <= ca[x] && cb[u] <= cb[x];
      case PrecKind::PositionOrder:
        return u <= x;
      case PrecKind::Explicit:
        return (prec_bits[x][static_cast<size_t>(u) >> 6] >> (u & 63)) & 1u;
    }
    return false;
  }

  /// mu_x({u}); requires u <= x.
  double mu_atom(int x, int u) const {
    if (quotient_measure()) return mu_weight[u] / mu_total[x];
    return mu_atoms[x][depth[u]];
  }

  /// mu_x(X_u) for u <= x.
  double mu_downset_total(int x, int u) const {
    if (quotient_measure()) return mu_total[u] / mu_total[x];
    double s = 0.0;
    for (int d = 0; d <= depth[u]; ++d) s += mu_atoms[x][d];
    return s;
  }

  /// mu_x(D cap X_x) where in_set marks D by id.
  double mu_downset_mass(int x, std::span<const char> in_set) const {
    double s = 0.0;
    if (quotient_measure()) {
      for (int u = x; u >= 0; u = parent[u])
        if (in_set[u]) s += mu_weight[u];
      return s / mu_total[x];
    }
    for (int u = x; u >= 0; u = parent[u])
      if (in_set[u]) s += mu_atoms[x][depth[u]];
    return s;
  }

  int ancestor_at_depth(int x, int d) const {
    int a = x;
    while (depth[a] > d) a = parent[a];
    return a;
  }

  template <class F>
  void for_downset(int x, F&& f) const {
    for (int u = x; u >= 0; u = parent[u]) f(u);
  }

  double nu_of(std::span<const int> members) const {
    double s = 0.0;
    for (int m : members) s += nu[m];
    return s;
  }

  double nu_total() const { return std::accumulate(nu.begin(), nu.end(), 0.0); }
};

namespace detail {

inline double weight_at(const WeightSpec& w, double x, double y, bool two_d,
                        int id, const char* what) {
  double v = two_d ? w.eval2(x, y) : w.eval(x);
  if (std::isnan(v))
    throw ConstructionError(std::string(what) + " atom " + std::to_string(id) +
                            " at position " + fmt17(x) + (two_d ? "," + fmt17(y) : "") +
                            ": weight undefined");
  if (v < 0.0)
    throw ConstructionError(std::string(what) + " atom " + std::to_string(id) +
                            " at position " + fmt17(x) + (two_d ? "," + fmt17(y) : "") +
                            ": weight is negative (" + fmt17(v) + ")");
  return v;
}

inline void finish_quotient_measure(PomSpace& s) {
  s.mu_total.assign(s.n_points, 0.0);
  for (int id : s.topo) {
    double below = s.parent[id] >= 0 ? s.mu_total[s.parent[id]] : 0.0;
    s.mu_total[id] = below + s.mu_weight[id];
  }
}

}  // namespace detail

/// Uniform discretization of the half-line with the usual total order.
/// Atoms sit at k*h for k=1..n with h = domain_scale/n; the down-set measure
/// is uniform, and nu gets weight(k*h)*h.
inline PomSpace build_chain(int n_atoms, const WeightSpec& w, double domain_scale = 1.0) {
  if (n_atoms < 1) throw ConstructionError("chain needs at least one atom");
  if (domain_scale <= 0) throw ConstructionError("chain domain scale must be positive");
  PomSpace s;
  s.kind = SpaceKind::Chain;
  s.n_points = n_atoms;
  s.nx = n_atoms;
  s.hx = domain_scale / n_atoms;
  s.parent.resize(n_atoms);
  s.depth.resize(n_atoms);
  s.topo.resize(n_atoms);
  s.ca.resize(n_atoms);
  s.cb.assign(n_atoms, 0);
  s.px.resize(n_atoms);
  s.py.assign(n_atoms, 0.0);
  s.mu_weight.assign(n_atoms, 1.0);
  s.nu.resize(n_atoms);
  s.prec_kind = PrecKind::SameAsLeq;
  s.prec_preds.resize(n_atoms);
  for (int k = 0; k < n_atoms; ++k) {
    s.parent[k] = k - 1;
    s.depth[k] = k;
    s.topo[k] = k;
    s.ca[k] = k + 1;
    s.px[k] = (k + 1) * s.hx;
    s.nu[k] = detail::weight_at(w, s.px[k], 0, false, k, "chain") * s.hx;
    if (k > 0) s.prec_preds[k] = {k - 1};
  }
  detail::finish_quotient_measure(s);
  return s;
}

/// Quadrant grid with the vertical operator order (cells compare only within
/// a column) and the componentwise weaker order. The down-set measure is the
/// uniform column-prefix mean.
inline PomSpace build_vertical_grid(int nx, int ny, const WeightSpec& w,
                                    double scale_x = 1.0, double scale_y = 1.0) {
  if (nx < 1 || ny < 1) throw ConstructionError("grid needs positive dimensions");
  PomSpace s;
  s.kind = SpaceKind::VerticalGrid;
  s.n_points = nx * ny;
  s.nx = nx;
  s.ny = ny;
  s.hx = scale_x / nx;
  s.hy = scale_y / ny;
  int n = s.n_points;
  s.parent.resize(n);
  s.depth.resize(n);
  s.topo.resize(n);
  s.ca.resize(n);
  s.cb.resize(n);
  s.px.resize(n);
  s.py.resize(n);
  s.mu_weight.assign(n, 1.0);
  s.nu.resize(n);
  s.prec_kind = PrecKind::Componentwise;
  s.prec_preds.resize(n);
  for (int j = 1; j <= ny; ++j) {
    for (int i = 1; i <= nx; ++i) {
      int id = (j - 1) * nx + (i - 1);
      s.topo[id] = id;
      s.ca[id] = i;
      s.cb[id] = j;
      s.px[id] = i * s.hx;
      s.py[id] = j * s.hy;
      s.parent[id] = j > 1 ? id - nx : -1;
      s.depth[id] = j - 1;
      s.nu[id] = detail::weight_at(w, s.px[id], s.py[id], true, id, "grid") * s.hx * s.hy;
      if (i > 1) s.prec_preds[id].push_back(id - 1);
      if (j > 1) s.prec_preds[id].push_back(id - nx);
    }
  }
  detail::finish_quotient_measure(s);
  return s;
}

/// Rooted tree with the geodesic order; the down-set measure is counting
/// measure normalized by the geodesic length. Vertices are relabeled so that
/// parents precede children.
inline PomSpace build_tree(const std::vector<int>& parent_of,
                           const std::vector<double>& nu_masses) {
  int n = static_cast<int>(parent_of.size());
  if (n < 1) throw ConstructionError("tree needs at least one vertex");
  if (static_cast<int>(nu_masses.size()) != n)
    throw ConstructionError("tree nu mass list does not match vertex count");
  int root = -1;
  for (int v = 0; v < n; ++v) {
    if (parent_of[v] < 0 || parent_of[v] == v) {
      if (root >= 0)
        throw ConstructionError("tree has multiple roots (" + std::to_string(root) +
                                " and " + std::to_string(v) + ")");
      root = v;
    } else if (parent_of[v] >= n) {
      throw ConstructionError("tree parent out of range for vertex " + std::to_string(v));
    }
  }
  if (root < 0) throw ConstructionError("tree has no root");

  // BFS relabel; also detects cycles (unreached vertices).
  std::vector<int> order;
  order.reserve(n);
  std::vector<std::vector<int>> children(n);
  for (int v = 0; v < n; ++v)
    if (v != root && parent_of[v] >= 0 && parent_of[v] != v) children[parent_of[v]].push_back(v);
  order.push_back(root);
  for (size_t head = 0; head < order.size(); ++head)
    for (int c : children[order[head]]) order.push_back(c);
  if (static_cast<int>(order.size()) != n)
    throw ConstructionError("tree parent map contains a cycle");

  std::vector<int> new_id(n);
  for (int i = 0; i < n; ++i) new_id[order[i]] = i;

  PomSpace s;
  s.kind = SpaceKind::Tree;
  s.n_points = n;
  s.parent.resize(n);
  s.depth.resize(n);
  s.topo.resize(n);
  s.ca.resize(n);
  s.cb.assign(n, 0);
  s.px.resize(n);
  s.py.assign(n, 0.0);
  s.mu_weight.assign(n, 1.0);
  s.nu.resize(n);
  s.prec_kind = PrecKind::SameAsLeq;
  s.prec_preds.resize(n);
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    s.topo[i] = i;
    s.parent[i] = v == root ? -1 : new_id[parent_of[v]];
    s.depth[i] = v == root ? 0 : s.depth[s.parent[i]] + 1;
    s.ca[i] = s.depth[i] + 1;  // geodesic length |x|
    s.px[i] = s.ca[i];
    if (nu_masses[v] < 0 || std::isnan(nu_masses[v]))
      throw ConstructionError("tree atom " + std::to_string(v) + ": weight is negative or undefined");
    s.nu[i] = nu_masses[v];
    if (s.parent[i] >= 0) s.prec_preds[i] = {s.parent[i]};
  }
  detail::finish_quotient_measure(s);
  return s;
}

/// Tree constructor taking a weight evaluated at the geodesic length |x|.
inline PomSpace build_tree(const std::vector<int>& parent_of, const WeightSpec& w) {
  int n = static_cast<int>(parent_of.size());
  std::vector<double> masses(n, 0.0);
  // evaluate after relabeling would be identical; |x| only depends on depth
  std::vector<int> dep(n, -1);
  for (int v = 0; v < n; ++v) {
    int steps = 0, a = v;
    while (parent_of[a] >= 0 && parent_of[a] != a) {
      a = parent_of[a];
      if (++steps > n) throw ConstructionError("tree parent map contains a cycle");
    }
    dep[v] = steps;
  }
  for (int v = 0; v < n; ++v) {
    double x = dep[v] + 1;
    masses[v] = detail::weight_at(w, x, 0, false, v, "tree");
  }
  return build_tree(parent_of, masses);
}

/// Unit blocks (b, b+1) each split into `cells_per_block` cells; the operator
/// order compares only within a block, giving the variable-endpoint averaging
/// operator. The variant selects the weaker order: per-block only, the
/// (block, offset) componentwise order, or the full position order.
inline PomSpace build_blocked_chain(int n_blocks, int cells_per_block, BlockedVariant variant,
                                    const WeightSpec& w) {
  if (n_blocks < 1 || cells_per_block < 1)
    throw ConstructionError("blocked chain needs positive block and cell counts");
  PomSpace s;
  s.kind = SpaceKind::BlockedChain;
  s.n_points = n_blocks * cells_per_block;
  s.nx = n_blocks;
  s.ny = cells_per_block;
  s.hx = 1.0;
  s.hy = 1.0 / cells_per_block;
  int n = s.n_points;
  s.parent.resize(n);
  s.depth.resize(n);
  s.topo.resize(n);
  s.ca.resize(n);
  s.cb.resize(n);
  s.px.resize(n);
  s.py.assign(n, 0.0);
  s.mu_weight.assign(n, 1.0);
  s.nu.resize(n);
  switch (variant) {
    case BlockedVariant::Prec1: s.prec_kind = PrecKind::SameAsLeq; break;
    case BlockedVariant::Prec2: s.prec_kind = PrecKind::Componentwise; break;
    case BlockedVariant::Prec3: s.prec_kind = PrecKind::PositionOrder; break;
  }
  s.prec_preds.resize(n);
  for (int b = 0; b < n_blocks; ++b) {
    for (int k = 1; k <= cells_per_block; ++k) {
      int id = b * cells_per_block + (k - 1);
      s.topo[id] = id;
      s.ca[id] = b + 1;
      s.cb[id] = k;
      s.px[id] = b + k * s.hy;
      s.parent[id] = k > 1 ? id - 1 : -1;
      s.depth[id] = k - 1;
      s.nu[id] = detail::weight_at(w, s.px[id], 0, false, id, "blocked chain") * s.hy;
      switch (variant) {
        case BlockedVariant::Prec1:
          if (k > 1) s.prec_preds[id].push_back(id - 1);
          break;
        case BlockedVariant::Prec2:
          if (k > 1) s.prec_preds[id].push_back(id - 1);
          if (b > 0) s.prec_preds[id].push_back(id - cells_per_block);
          break;
        case BlockedVariant::Prec3:
          if (id > 0) s.prec_preds[id].push_back(id - 1);
          break;
      }
    }
  }
  detail::finish_quotient_measure(s);
  return s;
}

/// Builds a space from an explicit order relation and a global measure, with
/// mu_x = mu / mu(X_x). The operator order must have totally ordered
/// down-sets; the weaker order is the transitive closure of prec_pairs
/// together with the operator order, and must be a partial order.
inline PomSpace build_from_measure(int n,
                                   const std::vector<std::pair<int, int>>& leq_pairs,
                                   const std::vector<std::pair<int, int>>& prec_pairs,
                                   const std::vector<double>& mu_global,
                                   const std::vector<double>& nu_masses) {
  if (n < 1) throw ConstructionError("space needs at least one point");
  if (static_cast<int>(mu_global.size()) != n || static_cast<int>(nu_masses.size()) != n)
    throw ConstructionError("mu/nu mass lists do not match the point count");
  for (int i = 0; i < n; ++i)
    if (!(mu_global[i] > 0.0))
      throw ConstructionError("global measure must be positive; atom " + std::to_string(i) +
                              " has mass " + fmt17(mu_global[i]));

  size_t words = (static_cast<size_t>(n) + 63) / 64;
  auto closure = [&](const std::vector<std::pair<int, int>>& pairs,
                     const std::vector<std::vector<uint64_t>>* seed) {
    std::vector<std::vector<uint64_t>> le(n, std::vector<uint64_t>(words, 0));
    for (int i = 0; i < n; ++i) le[i][static_cast<size_t>(i) >> 6] |= 1ull << (i & 63);
    if (seed)
      for (int i = 0; i < n; ++i)
        for (size_t k = 0; k < words; ++k) le[i][k] |= (*seed)[i][k];
    for (auto [u, x] : pairs) {
      if (u < 0 || u >= n || x < 0 || x >= n)
        throw ConstructionError("order pair (" + std::to_string(u) + "," + std::to_string(x) +
                                ") out of range");
      le[x][static_cast<size_t>(u) >> 6] |= 1ull << (u & 63);
    }
    // Warshall over bitset rows: u<=v and v<=x imply u<=x.
    for (int x = 0; x < n; ++x) {
      bool grew = true;
      while (grew) {
        grew = false;
        for (int v = 0; v < n; ++v) {
          if (v == x) continue;
          if ((le[x][static_cast<size_t>(v) >> 6] >> (v & 63)) & 1u) {
            for (size_t k = 0; k < words; ++k) {
              uint64_t before = le[x][k];
              le[x][k] |= le[v][k];
              grew |= le[x][k] != before;
            }
          }
        }
      }
    }
    return le;
  };

  auto leq_bits = closure(leq_pairs, nullptr);
  auto test = [&](const std::vector<std::vector<uint64_t>>& bits, int u, int x) {
    return ((bits[x][static_cast<size_t>(u) >> 6] >> (u & 63)) & 1u) != 0;
  };
  for (int u = 0; u < n; ++u)
    for (int x = u + 1; x < n; ++x)
      if (test(leq_bits, u, x) && test(leq_bits, x, u))
        throw AxiomViolationError("operator order is not antisymmetric: points " +
                                  std::to_string(u) + " and " + std::to_string(x));

  // Totally ordered down-sets, and the immediate predecessor of each point.
  std::vector<int> dep(n, 0), par(n, -1);
  for (int x = 0; x < n; ++x) {
    std::vector<int> preds;
    for (int u = 0; u < n; ++u)
      if (u != x && test(leq_bits, u, x)) preds.push_back(u);
    for (size_t a = 0; a < preds.size(); ++a)
      for (size_t b = a + 1; b < preds.size(); ++b)
        if (!test(leq_bits, preds[a], preds[b]) && !test(leq_bits, preds[b], preds[a]))
          throw AxiomViolationError("down-set of point " + std::to_string(x) +
                                    " is not totally ordered: witnesses " +
                                    std::to_string(preds[a]) + " and " + std::to_string(preds[b]));
    dep[x] = static_cast<int>(preds.size());
    for (int u : preds) {
      bool immediate = true;
      for (int v : preds)
        if (v != u && test(leq_bits, u, v)) { immediate = false; break; }
      if (immediate) par[x] = u;  // the maximal strict predecessor
    }
  }

  auto prec_bits = closure(prec_pairs, &leq_bits);
  for (int u = 0; u < n; ++u)
    for (int x = u + 1; x < n; ++x)
      if (test(prec_bits, u, x) && test(prec_bits, x, u))
        throw AxiomViolationError("weaker order is not antisymmetric: points " +
                                  std::to_string(u) + " and " + std::to_string(x));

  PomSpace s;
  s.kind = SpaceKind::Custom;
  s.n_points = n;
  s.parent = par;
  s.depth = dep;
  s.topo.resize(n);
  std::iota(s.topo.begin(), s.topo.end(), 0);
  std::stable_sort(s.topo.begin(), s.topo.end(), [&](int a, int b) { return dep[a] < dep[b]; });
  s.ca.resize(n);
  std::iota(s.ca.begin(), s.ca.end(), 1);
  s.cb.assign(n, 0);
  s.px.resize(n);
  for (int i = 0; i < n; ++i) s.px[i] = i + 1;
  s.py.assign(n, 0.0);
  s.mu_weight = mu_global;
  s.nu = nu_masses;
  s.prec_kind = PrecKind::Explicit;
  s.prec_bits = std::move(prec_bits);
  s.prec_preds.resize(n);
  for (int x = 0; x < n; ++x) {
    for (int u = 0; u < n; ++u) {
      if (u == x || !test(s.prec_bits, u, x)) continue;
      bool covered = true;
      for (int v = 0; v < n; ++v) {
        if (v == u || v == x) continue;
        if (test(s.prec_bits, u, v) && test(s.prec_bits, v, x)) { covered = false; break; }
      }
      if (covered) s.prec_preds[x].push_back(u);
    }
  }
  detail::finish_quotient_measure(s);
  return s;
}

/// Copy with a replaced weight measure.
inline PomSpace with_nu(const PomSpace& base, std::vector<double> nu_masses) {
  if (static_cast<int>(nu_masses.size()) != base.n_points)
    throw ConstructionError("nu mass list does not match the point count");
  PomSpace s = base;
  s.nu = std::move(nu_masses);
  return s;
}

/// Copy with the measure family expanded to explicit per-pair atoms. Used to
/// hand-build defective measures in tests and to exercise the generic paths.
inline PomSpace with_explicit_atoms(const PomSpace& base) {
  PomSpace s = base;
  s.mu_atoms.assign(s.n_points, {});
  for (int x = 0; x < s.n_points; ++x) {
    s.mu_atoms[x].assign(s.depth[x] + 1, 0.0);
    for (int u = x; u >= 0; u = s.parent[u]) s.mu_atoms[x][s.depth[u]] = base.mu_atom(x, u);
  }
  s.mu_weight.clear();
  s.mu_total.clear();
  return s;
}

// ---------------------------------------------------------------------------
// Axiom validation

struct AxiomCheckResult {
  std::string axiom;
  bool pass = true;
  double worst = 0.0;               // largest violation magnitude seen
  std::array<int, 3> witness{-1, -1, -1};
  long long n_checked = 0;
};

struct AxiomReport {
  double tolerance = 1e-12;
  std::vector<AxiomCheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  double worst_violation() const {
    double w = 0.0;
    for (const auto& c : checks) w = std::max(w, c.worst);
    return w;
  }
  const AxiomCheckResult* find(std::string_view name) const {
    for (const auto& c : checks)
      if (c.axiom == name) return &c;
    return nullptr;
  }
};

struct ValidateOptions {
  double tolerance = 1e-12;
  long long triple_budget = 200000;  // axiom-4 triples checked when not exhaustive
  int monotonicity_samples = 24;     // sampled indicators for the output-order check
  uint64_t seed = 0x5EED;
};

namespace detail {

inline double rel_err(double a, double b) {
  double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
  return std::fabs(a - b) / scale;
}

}  // namespace detail

// validate_axioms lives in validate.hpp; it needs the enumeration and
// operator headers for the sampled output-monotonicity check.

// ---------------------------------------------------------------------------
// Canonical text dump (diffable golden format)

inline const char* space_kind_name(SpaceKind k) {
  switch (k) {
    case SpaceKind::Chain: return "chain";
    case SpaceKind::VerticalGrid: return "vertical-grid";
    case SpaceKind::Tree: return "tree";
    case SpaceKind::BlockedChain: return "blocked-chain";
    case SpaceKind::Custom: return "custom";
  }
  return "?";
}

inline const char* prec_kind_name(PrecKind k) {
  switch (k) {
    case PrecKind::SameAsLeq: return "same-as-leq";
    case PrecKind::Componentwise: return "componentwise";
    case PrecKind::PositionOrder: return "position-order";
    case PrecKind::Explicit: return "explicit";
  }
  return "?";
}

inline void dump_space(const PomSpace& s, std::ostream& os) {
  os << "pomspace 1\n";
  os << "kind " << space_kind_name(s.kind) << "\n";
  os << "points " << s.n_points << "\n";
  os << "dims " << s.nx << " " << s.ny << "\n";
  os << "steps " << fmt17(s.hx) << " " << fmt17(s.hy) << "\n";
  os << "prec " << prec_kind_name(s.prec_kind) << "\n";
  for (int i = 0; i < s.n_points; ++i) {
    os << "point " << i << " coord " << s.ca[i] << "," << s.cb[i] << " pos " << fmt17(s.px[i])
       << "," << fmt17(s.py[i]) << " parent " << s.parent[i] << " nu " << fmt17(s.nu[i]) << "\n";
  }
  if (s.quotient_measure()) {
    os << "mu quotient\n";
    for (int i = 0; i < s.n_points; ++i) os << "atom " << i << " " << fmt17(s.mu_weight[i]) << "\n";
  } else {
    os << "mu explicit\n";
    for (int x = 0; x < s.n_points; ++x)
      for (int u = x; u >= 0; u = s.parent[u])
        os << "atom " << x << " " << u << " " << fmt17(s.mu_atoms[x][s.depth[u]]) << "\n";
  }
  if (s.prec_kind == PrecKind::Explicit) {
    for (int x = 0; x < s.n_points; ++x) {
      os << "prec-preds " << x;
      for (int u : s.prec_preds[x]) os << " " << u;
      os << "\n";
    }
  }
}

}  // namespace pomhardy
