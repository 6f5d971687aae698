#include <cmath>
#include <vector>

#include "doctest.h"
#include "pomhardy/verify.hpp"

using namespace pomhardy;

TEST_CASE("cone norm on a singleton is one") {
  PomSpace c1 = build_chain(1, WeightSpec::constant(1.0));
  NormEstimate est = cone_norm_bounds(c1, 2.0);
  CHECK(est.lower == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(est.upper_finite);
  CHECK(est.lower <= est.upper);
}

TEST_CASE("cone norm on the flat four-chain at exponent one") {
  PomSpace c4 = build_chain(4, WeightSpec::constant(1.0));
  SearchBudget b;
  b.samples = 500;
  NormEstimate est = cone_norm_bounds(c4, 1.0, b);
  CHECK(est.lower == doctest::Approx(25.0 / 12.0).epsilon(1e-10));
  // witness reproduces its ratio
  double fn = lp_norm(c4, est.witness.values, 1.0);
  double sn = lp_norm(c4, apply_hardy(c4, est.witness.values), 1.0);
  CHECK(sn / fn == doctest::Approx(est.lower).epsilon(1e-10));
  // upper bound at exponent one is exactly the norm here
  CHECK(est.upper == doctest::Approx(25.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("norm identity for indicators") {
  // ||S chi_D||_p^p = nu(D) (1 + ratio(D))
  PomSpace g = build_vertical_grid(3, 2, WeightSpec::constant(1.0));
  for_each_decreasing_set(g, OrderTag::Prec, 1000, [&](const std::vector<int>& m) {
    std::vector<double> f(g.n_points, 0.0);
    double nu_d = 0;
    for (int id : m) {
      f[id] = 1.0;
      nu_d += g.nu[id];
    }
    for (double p : {0.5, 1.0, 2.0}) {
      double lhs = std::pow(lp_norm(g, apply_hardy(g, f), p), p);
      double ratio = condition_ratio(g, p, DecreasingSet{m, OrderTag::Prec});
      CHECK(lhs == doctest::Approx(nu_d * (1.0 + ratio)).epsilon(1e-12));
    }
  });
}

TEST_CASE("lower never exceeds upper when upper is finite") {
  std::vector<PomSpace> spaces;
  spaces.push_back(build_chain(6, WeightSpec::power(0.5)));
  spaces.push_back(build_vertical_grid(3, 3, WeightSpec::constant(1.0)));
  spaces.push_back(build_tree({-1, 0, 0, 1, 1, 2, 2}, WeightSpec::constant(1.0)));
  spaces.push_back(build_blocked_chain(2, 3, BlockedVariant::Prec2, WeightSpec::constant(1.0)));
  SearchBudget b;
  b.samples = 200;
  for (const auto& s : spaces)
    for (double p : {1.0, 2.0, 3.0}) {
      NormEstimate est = cone_norm_bounds(s, p, b);
      REQUIRE(est.upper_finite);
      CHECK(est.lower <= est.upper * (1.0 + 1e-12));
      CHECK(est.lower >= 1.0 - 1e-12);  // the full space is an indicator
    }
}

TEST_CASE("boundedness oracle passes on small built-ins") {
  SearchBudget b;
  b.samples = 300;
  std::vector<PomSpace> spaces;
  spaces.push_back(build_chain(5, WeightSpec::constant(1.0)));
  spaces.push_back(build_vertical_grid(3, 3, WeightSpec::constant(1.0)));
  spaces.push_back(build_tree({-1, 0, 0, 1, 1, 2, 2}, WeightSpec::constant(1.0)));
  spaces.push_back(build_blocked_chain(2, 3, BlockedVariant::Prec3, WeightSpec::constant(1.0)));
  for (const auto& s : spaces)
    for (double p : {0.5, 1.0, 2.0}) {
      EquivalenceReport rep = check_boundedness_equivalence(s, p, b);
      INFO(rep.subject);
      CHECK(rep.all_pass());
    }
}

TEST_CASE("defective measures fail the oracle with a witness") {
  PomSpace s = with_explicit_atoms(build_chain(3, WeightSpec::constant(1.0)));
  s.mu_atoms[2] = {0.8, 0.1, 0.1};  // breaks the family consistency
  EquivalenceReport rep = check_boundedness_equivalence(s, 2.0);
  CHECK_FALSE(rep.all_pass());
  bool found = false;
  for (const auto& r : rep.records)
    if (r.claim == "axioms" && !r.pass) {
      found = true;
      CHECK_FALSE(r.witness.empty());
    }
  CHECK(found);
}

TEST_CASE("grid equivalence oracle on flat and random weights") {
  SearchBudget b;
  b.samples = 150;
  PomSpace flat = build_vertical_grid(3, 3, WeightSpec::constant(1.0));
  for (double p : {1.0, 2.0}) CHECK(check_grid_equivalence(flat, p, b).all_pass());

  Rng rng(99);
  std::vector<double> nu(flat.n_points);
  for (double& v : nu) v = rng.log_uniform(3.0);
  PomSpace random_nu = with_nu(flat, nu);
  for (double p : {1.0, 2.0}) CHECK(check_grid_equivalence(random_nu, p, b).all_pass());
}

TEST_CASE("grid partial conditions factorize for product weights") {
  WeightSpec w = WeightSpec::product(WeightSpec::power(0.25), WeightSpec::power(-0.25));
  PomSpace g = build_vertical_grid(4, 3, w);
  EquivalenceReport rep = check_grid_equivalence(g, 1.0, {}, &w);
  CHECK(rep.all_pass());
  bool saw_factorization = false;
  for (const auto& r : rep.records)
    if (r.claim == "partial conditions factorize per axis") saw_factorization = r.pass;
  CHECK(saw_factorization);
}

TEST_CASE("product-weight factorization oracle") {
  EquivalenceReport flat = check_product_weight_factorization(WeightSpec::power(0.0),
                                                              WeightSpec::power(0.0), 2.0);
  CHECK(flat.all_pass());
  EquivalenceReport neg = check_product_weight_factorization(WeightSpec::power(-0.5),
                                                             WeightSpec::power(-0.5), 1.0);
  CHECK(neg.all_pass());
  EquivalenceReport div = check_product_weight_factorization(WeightSpec::power(1.5),
                                                             WeightSpec::power(0.0), 2.0);
  CHECK(div.all_pass());  // divergence is classified, and flagged as such
  bool flagged = false;
  for (const auto& r : div.records)
    if (r.claim == "divergent factor flagged") flagged = r.pass;
  CHECK(flagged);
}

TEST_CASE("power inequality sweep stays below its constants") {
  LemmaSweepOptions opt;
  opt.trials = 400;
  LemmaSweepReport rep = lemma_sweep(opt);
  CHECK(rep.all_pass());
  for (const auto& row : rep.rows) {
    if (row.alpha == 1.0) CHECK(row.worst_ratio == doctest::Approx(1.0).epsilon(1e-12));
    if (row.alpha <= 1.0) CHECK(row.worst_ratio <= 1.0 + 1e-12);
    if (row.alpha == 2.0) {
      CHECK(row.worst_ratio <= 2.0);
      CHECK(row.worst_ratio >= 1.0);
    }
  }
}

TEST_CASE("sweep results are reproducible and worker-count invariant") {
  LemmaSweepOptions a;
  a.trials = 300;
  LemmaSweepOptions b = a;
  b.workers = 4;
  LemmaSweepReport ra = lemma_sweep(a), rb = lemma_sweep(b), rc = lemma_sweep(a);
  REQUIRE(ra.rows.size() == rb.rows.size());
  for (size_t i = 0; i < ra.rows.size(); ++i) {
    CHECK(ra.rows[i].worst_ratio == rb.rows[i].worst_ratio);
    CHECK(ra.rows[i].worst_ratio == rc.rows[i].worst_ratio);
    CHECK(ra.rows[i].violations == rb.rows[i].violations);
  }
}

TEST_CASE("degenerate one-column grids collapse to the chain case") {
  WeightSpec w = WeightSpec::product(WeightSpec::constant(1.0), WeightSpec::power(0.5));
  PomSpace g = build_vertical_grid(1, 5, w);
  for (double p : {1.0, 2.0}) {
    EquivalenceReport rep = check_grid_equivalence(g, p, {}, &w);
    CHECK(rep.all_pass());
    double grid_c = grid_condition_constant(g, p, GridConditionMode::Vertical).constant;
    double chain_c = condition_constant(build_chain(5, w.factors[1]), p).constant;
    CHECK(grid_c == doctest::Approx(chain_c).epsilon(1e-12));
  }
}

TEST_CASE("full-operator bounds bracket the norm on grids") {
  Rng rng(4242);
  for (int trial = 0; trial < 6; ++trial) {
    PomSpace g = build_vertical_grid(3, 4, WeightSpec::constant(1.0));
    std::vector<double> nu(g.n_points);
    for (double& v : nu) v = rng.log_uniform(3.0);
    PomSpace gr = with_nu(g, nu);
    for (double p : {1.0, 2.0}) {
      NormEstimate est = cone_norm_bounds(gr, p, {}, OperatorKind::ProductGrid);
      REQUIRE(est.upper_finite);
      CHECK(est.lower <= est.upper * (1.0 + 1e-12));
      CHECK(est.lower >= 1.0 - 1e-12);
    }
  }
}

TEST_CASE("sampled-mode oracle stays coherent past the enumeration cap") {
  // ideal count far above the cap forces the sampled path for both the norm
  // sweep and the necessity record; shared sampling keeps them consistent
  PomSpace g = build_vertical_grid(10, 10, WeightSpec::constant(1.0));
  Rng rng(314);
  std::vector<double> nu(g.n_points);
  for (double& v : nu) v = rng.log_uniform(3.0);
  PomSpace gr = with_nu(g, nu);
  SearchBudget b;
  b.ideal_cap = 200;
  b.samples = 150;
  for (double p : {1.0, 2.0}) {
    EquivalenceReport rep = check_boundedness_equivalence(gr, p, b);
    INFO(rep.subject);
    CHECK(rep.all_pass());
    bool sampled = false;
    for (const auto& r : rep.records)
      if (r.oracle == "sampled decreasing sets") sampled = true;
    CHECK(sampled);
    NormEstimate est = cone_norm_bounds(gr, p, b);
    CHECK_FALSE(est.upper_certified);
    CHECK(est.lower <= est.upper * (1.0 + 1e-12));
  }
}

TEST_CASE("geodesic constants never exceed the tree constant") {
  Rng rng(0x9E0);
  for (int trial = 0; trial < 12; ++trial) {
    int n = 6 + static_cast<int>(rng.uniform_int(0, 8));
    std::vector<int> parent(n);
    parent[0] = -1;
    for (int v = 1; v < n; ++v) parent[v] = static_cast<int>(rng.uniform_int(0, v - 1));
    std::vector<double> nu(n);
    for (double& v : nu) v = rng.log_uniform(3.0);
    PomSpace t = with_nu(build_tree(parent, WeightSpec::constant(1.0)), nu);
    for (double p : {1.0, 2.0}) {
      GeodesicHarnessReport rep = tree_geodesic_harness(t, p);
      CHECK(rep.bounded);
      CHECK(rep.n_geodesics >= 1);
      CHECK(rep.gap_ratio >= 1.0 - 1e-12);
    }
  }
  // a path has exactly one geodesic and no gap
  PomSpace path = build_tree({-1, 0, 1, 2, 3}, WeightSpec::constant(1.0));
  GeodesicHarnessReport rep = tree_geodesic_harness(path, 1.0);
  CHECK(rep.n_geodesics == 1);
  CHECK(rep.geodesic_sup == doctest::Approx(rep.tree_constant).epsilon(1e-12));
}
