#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "pomhardy/core.hpp"
#include "pomhardy/hardy.hpp"
#include "pomhardy/monotone.hpp"
#include "pomhardy/space.hpp"

namespace pomhardy {

/// Checks every structural requirement on a space against its stored data:
/// chain down-sets, normalization, the measure-family consistency identity,
/// the order-containment condition, that the weaker order is a partial order,
/// and (sampled) that averaging preserves weaker-order monotonicity.
/// Failures are reported, not thrown.
inline AxiomReport validate_axioms(const PomSpace& s, const ValidateOptions& opt = {}) {
  AxiomReport rep;
  rep.tolerance = std::min(opt.tolerance, 1e-12);
  const double tol = rep.tolerance;
  Rng rng(opt.seed);

  {
    AxiomCheckResult c{"axiom1_total_down_sets"};
    for (int x = 0; x < s.n_points && c.pass; ++x) {
      int steps = 0;
      for (int u = x; u >= 0; u = s.parent[u]) {
        ++steps;
        if (steps > s.n_points) break;
      }
      ++c.n_checked;
      if (steps != s.depth[x] + 1) {
        c.pass = false;
        c.worst = 1.0;
        c.witness = {x, -1, -1};
      }
    }
    rep.checks.push_back(std::move(c));
  }

  // Finite spaces make every decreasing set measurable; recorded for
  // completeness.
  rep.checks.push_back({"axiom2_measurability", true, 0.0, {-1, -1, -1}, 1});

  // Each down-set has total mass one.
  {
    AxiomCheckResult c{"axiom3_normalization"};
    for (int x = 0; x < s.n_points; ++x) {
      double total = 0.0;
      for (int u = x; u >= 0; u = s.parent[u]) total += s.mu_atom(x, u);
      double err = std::fabs(total - 1.0);
      ++c.n_checked;
      if (err > c.worst) {
        c.worst = err;
        c.witness = {x, -1, -1};
      }
    }
    c.pass = c.worst <= tol;
    rep.checks.push_back(std::move(c));
  }

  // mu_x({y}) = mu_x(X_u) * mu_u({y}) for y <= u <= x. Exhaustive on small
  // spaces (the threshold covers every space with up to 200 points even in
  // chain form), budgeted random triples on large ones.
  {
    AxiomCheckResult c{"axiom4_consistency"};
    const long long exhaustive_limit = std::max<long long>(opt.triple_budget * 8, 2700000);
    long long exhaustive_cost = 0;
    bool exhaustive = true;
    for (int x = 0; x < s.n_points; ++x) {
      long long d = s.depth[x] + 1;
      exhaustive_cost += d * d;
      if (exhaustive_cost > exhaustive_limit) {
        exhaustive = false;
        break;
      }
    }
    auto check_triple = [&](int x, int u, int y) {
      double lhs = s.mu_atom(x, y);
      double rhs = s.mu_downset_total(x, u) * s.mu_atom(u, y);
      double err = detail::rel_err(lhs, rhs);
      ++c.n_checked;
      if (err > c.worst) {
        c.worst = err;
        c.witness = {x, u, y};
      }
    };
    if (exhaustive) {
      for (int x = 0; x < s.n_points; ++x)
        for (int u = x; u >= 0; u = s.parent[u])
          for (int y = u; y >= 0; y = s.parent[y]) check_triple(x, u, y);
    } else {
      for (long long t = 0; t < opt.triple_budget; ++t) {
        int x = static_cast<int>(rng.uniform_int(0, s.n_points - 1));
        int u = s.ancestor_at_depth(x, static_cast<int>(rng.uniform_int(0, s.depth[x])));
        int y = s.ancestor_at_depth(u, static_cast<int>(rng.uniform_int(0, s.depth[u])));
        check_triple(x, u, y);
      }
    }
    c.pass = c.worst <= tol;
    rep.checks.push_back(std::move(c));
  }

  // u <= x implies u prec x. Checking covering pairs suffices: the weaker
  // order's transitivity (checked below) lifts it to every pair.
  {
    AxiomCheckResult c{"order1_leq_implies_prec"};
    for (int x = 0; x < s.n_points && c.pass; ++x) {
      if (s.parent[x] < 0) continue;
      ++c.n_checked;
      if (!s.prec(s.parent[x], x)) {
        c.pass = false;
        c.worst = 1.0;
        c.witness = {x, s.parent[x], -1};
      }
    }
    rep.checks.push_back(std::move(c));
  }

  // Sampled antisymmetry and transitivity of the weaker order.
  {
    AxiomCheckResult c{"prec_partial_order"};
    long long trials = std::min<long long>(opt.triple_budget, 4LL * s.n_points + 1024);
    for (long long t = 0; t < trials && c.pass; ++t) {
      int a = static_cast<int>(rng.uniform_int(0, s.n_points - 1));
      int b = static_cast<int>(rng.uniform_int(0, s.n_points - 1));
      int d = static_cast<int>(rng.uniform_int(0, s.n_points - 1));
      ++c.n_checked;
      if (a != b && s.prec(a, b) && s.prec(b, a)) {
        c.pass = false;
        c.witness = {a, b, -1};
        c.worst = 1.0;
      } else if (s.prec(a, b) && s.prec(b, d) && !s.prec(a, d)) {
        c.pass = false;
        c.witness = {a, b, d};
        c.worst = 1.0;
      }
    }
    rep.checks.push_back(std::move(c));
  }

  // Averaging a decreasing indicator yields a decreasing output (sampled).
  {
    AxiomCheckResult c{"order2_hardy_preserves_prec"};
    for (int t = 0; t < opt.monotonicity_samples; ++t) {
      DecreasingSet d = random_decreasing_set(s, rng);
      std::vector<double> f(s.n_points, 0.0);
      for (int m : d.members) f[m] = 1.0;
      FieldValues out = apply_hardy(s, f);
      ++c.n_checked;
      if (!is_decreasing_function(s, out, true, 1e-12)) {
        c.pass = false;
        c.worst = 1.0;
        c.witness = {d.members.empty() ? -1 : d.members.front(), -1, -1};
        break;
      }
    }
    rep.checks.push_back(std::move(c));
  }

  return rep;
}

}  // namespace pomhardy
