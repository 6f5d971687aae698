#include <cmath>
#include <vector>

#include "doctest.h"
#include "pomhardy/conditions.hpp"
#include "pomhardy/hardy.hpp"
#include "pomhardy/monotone.hpp"
#include "pomhardy/space.hpp"

using namespace pomhardy;

namespace {

// Independent direct-summation oracle for the master ratio.
double ratio_oracle(const PomSpace& s, double p, const std::vector<int>& members) {
  std::vector<char> in(s.n_points, 0);
  for (int m : members) in[m] = 1;
  double num = 0, den = 0;
  for (int x = 0; x < s.n_points; ++x) {
    if (in[x]) {
      den += s.nu[x];
      continue;
    }
    double mass = 0;
    for (int u = 0; u < s.n_points; ++u)
      if (in[u] && s.leq(u, x)) mass += s.mu_atom(x, u);
    if (mass > 0) num += std::pow(mass, p) * s.nu[x];
  }
  return den > 0 ? num / den : (num > 0 ? kInf : 0.0);
}

}  // namespace

TEST_CASE("master ratio oracle values") {
  PomSpace c = build_chain(4, WeightSpec::constant(1.0));
  DecreasingSet d{{0, 1}, OrderTag::Prec};
  CHECK(condition_ratio(c, 1.0, d) == doctest::Approx(7.0 / 12.0).epsilon(1e-14));
  CHECK(condition_ratio(c, 1.0, d) ==
        doctest::Approx(ratio_oracle(c, 1.0, d.members)).epsilon(1e-14));

  DecreasingSet whole{{0, 1, 2, 3}, OrderTag::Prec};
  CHECK(condition_ratio(c, 2.0, whole) == 0.0);

  DecreasingSet bad{{1, 2}, OrderTag::Prec};
  CHECK_THROWS_AS(condition_ratio(c, 1.0, bad), PreconditionError);
  CHECK_THROWS_AS(condition_ratio(c, 0.0, whole), PreconditionError);
}

TEST_CASE("inside-the-set mass integrates to the set weight") {
  // For x in a decreasing D the down-set is swallowed whole, so the inside
  // share of the norm identity equals nu(D).
  for (const PomSpace& s : {build_vertical_grid(3, 3, WeightSpec::constant(1.0)),
                            build_tree({-1, 0, 0, 1, 1}, WeightSpec::constant(1.0)),
                            build_chain(6, WeightSpec::power(0.5))}) {
    for_each_decreasing_set(s, OrderTag::Prec, 1000, [&](const std::vector<int>& m) {
      std::vector<char> in(s.n_points, 0);
      double den = 0;
      for (int x : m) {
        in[x] = 1;
        den += s.nu[x];
      }
      double inside = 0;
      for (int x : m) inside += std::pow(s.mu_downset_mass(x, in), 2.0) * s.nu[x];
      CHECK(inside == doctest::Approx(den).epsilon(1e-12));
    });
  }
}

TEST_CASE("condition constant on chains") {
  PomSpace c1 = build_chain(1, WeightSpec::constant(1.0));
  CHECK(condition_constant(c1, 1.0).constant == 0.0);

  PomSpace c4 = build_chain(4, WeightSpec::constant(1.0));
  ConditionReport rep = condition_constant(c4, 1.0);
  CHECK(rep.constant == doctest::Approx(13.0 / 12.0).epsilon(1e-14));
  CHECK(rep.exact);
  CHECK(rep.witness.members == std::vector<int>{0});
  CHECK(rep.n_sets_examined == 4);
  // witness reproduces the constant
  CHECK(condition_ratio(c4, 1.0, rep.witness) == doctest::Approx(rep.constant).epsilon(1e-12));

  // the chain fast path agrees with the generic enumeration path
  PomSpace grid1 = build_vertical_grid(
      1, 7, WeightSpec::product(WeightSpec::constant(1.0), WeightSpec::power(0.3)));
  PomSpace chain7 = build_chain(7, WeightSpec::power(0.3));
  for (double p : {0.5, 1.0, 2.0})
    CHECK(condition_constant(chain7, p).constant ==
          doctest::Approx(condition_constant(grid1, p).constant).epsilon(1e-12));
}

TEST_CASE("condition constant on the square grid") {
  PomSpace g = build_vertical_grid(2, 2, WeightSpec::constant(1.0));
  ConditionReport rep = condition_constant(g, 1.0);
  CHECK(rep.constant == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rep.exact);
  CHECK(rep.n_sets_examined == 5);
  CHECK(rep.witness.members == std::vector<int>{0});
  // brute-force oracle over the five ideals
  double best = 0;
  for_each_decreasing_set(g, OrderTag::Prec, 100, [&](const std::vector<int>& m) {
    best = std::max(best, ratio_oracle(g, 1.0, m));
  });
  CHECK(rep.constant == doctest::Approx(best).epsilon(1e-14));
}

TEST_CASE("sampled fallback reports inexactness") {
  PomSpace g = build_vertical_grid(12, 12, WeightSpec::constant(1.0));
  SearchBudget b;
  b.ideal_cap = 50;
  b.samples = 64;
  ConditionReport rep = condition_constant(g, 1.0, b);
  CHECK_FALSE(rep.exact);
  CHECK(rep.n_sets_examined == 64);
  CHECK(rep.constant > 0.0);
}

TEST_CASE("ratio is non-increasing in the exponent") {
  PomSpace g = build_vertical_grid(3, 3, WeightSpec::constant(1.0));
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    DecreasingSet d = random_decreasing_set(g, rng);
    double prev = kInf;
    for (double p : {0.5, 1.0, 1.5, 2.0, 3.0}) {
      double r = condition_ratio(g, p, d);
      CHECK(r <= prev * (1.0 + 1e-12));
      prev = r;
    }
  }
  // hence constants are ordered too
  CHECK(condition_constant(g, 2.0).constant <= condition_constant(g, 1.0).constant + 1e-12);
}

TEST_CASE("half-line condition: flat weight") {
  BpReport rep = bp_chain_constant(WeightSpec::constant(1.0), 2.0);
  CHECK_FALSE(rep.infinite);
  CHECK(rep.constant == doctest::Approx(1.0).epsilon(0.05));

  BpReport harmonic = bp_chain_constant(WeightSpec::constant(1.0), 1.0);
  CHECK(harmonic.infinite);
  CHECK(harmonic.flag == "tail-divergent");
}

TEST_CASE("half-line condition classifies power weights") {
  for (double p : {1.5, 2.0, 3.0}) {
    for (double beta : {-1.5, -0.5, 0.0, p - 1.5, p - 0.5}) {
      BpReport rep = bp_chain_constant(WeightSpec::power(beta), p);
      bool want_finite = beta > -1.0 && beta < p - 1.0;
      CHECK(rep.infinite == !want_finite);
      if (want_finite) {
        // closed form (beta+1)/(p-beta-1), up to truncation
        double closed = (beta + 1.0) / (p - beta - 1.0);
        CHECK(rep.constant == doctest::Approx(closed).epsilon(0.05));
      }
    }
  }
}

TEST_CASE("tree condition") {
  PomSpace t = build_tree({-1, 0, 0}, std::vector<double>{1, 1, 1});
  DecreasingSet root_only{{0}, OrderTag::Leq};
  CHECK(tree_condition_ratio(t, 1.0, root_only) == doctest::Approx(1.0));
  DecreasingSet whole{{0, 1, 2}, OrderTag::Leq};
  CHECK(tree_condition_ratio(t, 1.0, whole) == 0.0);
  CHECK_THROWS_AS(tree_condition_ratio(t, 1.0, DecreasingSet{{1}, OrderTag::Leq}),
                  PreconditionError);

  // a path is a chain: the tree form coincides with the master ratio
  PomSpace path = build_tree({-1, 0, 1, 2}, WeightSpec::constant(1.0));
  for_each_decreasing_set(path, OrderTag::Prec, 100, [&](const std::vector<int>& m) {
    DecreasingSet d{m, OrderTag::Leq};
    for (double p : {0.5, 1.0, 2.0})
      CHECK(tree_condition_ratio(path, p, d) ==
            doctest::Approx(condition_ratio(path, p, DecreasingSet{m, OrderTag::Prec}))
                .epsilon(1e-12));
  });
}

TEST_CASE("tree condition equals the master ratio on every small-tree ideal") {
  PomSpace t = build_tree({-1, 0, 0, 1, 1, 2, 2, 3, 4}, WeightSpec::power(0.5));
  for_each_decreasing_set(t, OrderTag::Prec, 10000, [&](const std::vector<int>& m) {
    DecreasingSet d{m, OrderTag::Leq};
    CHECK(tree_condition_ratio(t, 2.0, d) ==
          doctest::Approx(condition_ratio(t, 2.0, DecreasingSet{m, OrderTag::Prec}))
              .epsilon(1e-12));
  });
}

TEST_CASE("grid condition modes") {
  PomSpace g = build_vertical_grid(2, 2, WeightSpec::constant(1.0));
  DecreasingSet corner{{0}, OrderTag::Prec};
  CHECK(grid_condition_ratio(g, 1.0, corner, GridConditionMode::Full) ==
        doctest::Approx(5.0 / 4.0).epsilon(1e-14));
  CHECK(grid_condition_ratio(g, 2.0, corner, GridConditionMode::Full) ==
        doctest::Approx(9.0 / 16.0).epsilon(1e-14));

  DecreasingSet whole{{0, 1, 2, 3}, OrderTag::Prec};
  CHECK(grid_condition_ratio(g, 1.0, whole, GridConditionMode::Full) == 0.0);
  CHECK(grid_condition_ratio(g, 1.0, whole, GridConditionMode::Vertical) == 0.0);

  PomSpace c = build_chain(3, WeightSpec::constant(1.0));
  CHECK_THROWS_AS(grid_condition_ratio(c, 1.0, corner, GridConditionMode::Full),
                  UnsupportedSpaceError);
}

TEST_CASE("vertical mode specializes the master ratio; full dominates it") {
  PomSpace g = build_vertical_grid(3, 3, WeightSpec::constant(1.0));
  Rng rng(9);
  std::vector<double> nu(g.n_points);
  for (double& v : nu) v = rng.log_uniform(2.0);
  PomSpace gr = with_nu(g, nu);
  for_each_decreasing_set(gr, OrderTag::Prec, 1000, [&](const std::vector<int>& m) {
    DecreasingSet d{m, OrderTag::Prec};
    for (double p : {0.5, 1.0, 2.0}) {
      double vert = grid_condition_ratio(gr, p, d, GridConditionMode::Vertical);
      CHECK(vert == doctest::Approx(condition_ratio(gr, p, d)).epsilon(1e-12));
      CHECK(grid_condition_ratio(gr, p, d, GridConditionMode::Full) >= vert * (1.0 - 1e-12));
    }
  });
}

TEST_CASE("horizontal mode transposes the vertical one") {
  PomSpace g = build_vertical_grid(3, 2, WeightSpec::constant(1.0));
  Rng rng(31);
  std::vector<double> nu(g.n_points);
  for (double& v : nu) v = rng.log_uniform(2.0);
  PomSpace gr = with_nu(g, nu);
  for_each_decreasing_set(gr, OrderTag::Prec, 1000, [&](const std::vector<int>& m) {
    // transpose the ideal and the grid
    PomSpace tr = build_vertical_grid(2, 3, WeightSpec::constant(1.0));
    std::vector<double> tnu(6);
    for (int j = 1; j <= 2; ++j)
      for (int i = 1; i <= 3; ++i) tnu[(i - 1) * 2 + (j - 1)] = nu[(j - 1) * 3 + (i - 1)];
    PomSpace trn = with_nu(tr, tnu);
    std::vector<int> tm;
    for (int id : m) {
      int i = gr.ca[id], j = gr.cb[id];
      tm.push_back((i - 1) * 2 + (j - 1));
    }
    std::sort(tm.begin(), tm.end());
    DecreasingSet d{m, OrderTag::Prec}, td{tm, OrderTag::Prec};
    CHECK(grid_condition_ratio(gr, 1.5, d, GridConditionMode::Horizontal) ==
          doctest::Approx(grid_condition_ratio(trn, 1.5, td, GridConditionMode::Vertical))
              .epsilon(1e-12));
  });
}

TEST_CASE("blocked condition sides") {
  WeightSpec flat = WeightSpec::constant(1.0);
  std::vector<double> all_one{1.0, 1.0};
  BlockedSides s1 = blocked_condition(flat, 1.0, BlockedVariant::Prec1, all_one);
  CHECK(s1.lhs == 0.0);

  std::vector<double> all_zero{0.0, 0.0};
  BlockedSides s0 = blocked_condition(flat, 1.0, BlockedVariant::Prec1, all_zero);
  CHECK(s0.lhs == 0.0);
  CHECK(s0.rhs == 0.0);

  BlockedSides s3 = blocked_condition_single(flat, 1.0, 0, 0.5, 4096);
  CHECK(s3.lhs == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-4));
  CHECK(s3.rhs == doctest::Approx(0.5).epsilon(1e-9));

  std::vector<double> increasing{0.2, 0.8};
  CHECK_THROWS_AS(blocked_condition(flat, 1.0, BlockedVariant::Prec2, increasing),
                  PreconditionError);
  CHECK_THROWS_AS(blocked_condition(flat, 1.0, BlockedVariant::Prec1, std::vector<double>{1.5}),
                  PreconditionError);
}

TEST_CASE("single-block embedding reproduces the sequence evaluator exactly") {
  WeightSpec w = WeightSpec::table({{0.0, 2.0}, {0.7, 0.5}, {1.3, 1.75}, {2.6, 0.25}});
  for (double p : {0.5, 1.0, 2.0}) {
    for (int n = 0; n < 3; ++n) {
      for (double a : {0.0, 0.25, 0.5, 1.0}) {
        BlockedSides single = blocked_condition_single(w, p, n, a);
        std::vector<double> seq = blocked_embedding_sequence(3, n, a);
        BlockedSides embedded = blocked_condition(w, p, BlockedVariant::Prec2, seq);
        CHECK(single.lhs == embedded.lhs);  // bitwise: same quadrature calls
        CHECK(single.rhs == embedded.rhs);
      }
    }
  }
}

TEST_CASE("blocked constants are ordered by variant strength") {
  Rng rng(123);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<std::pair<double, double>> steps;
    double pos = 0.0;
    for (int k = 0; k < 6; ++k) {
      steps.emplace_back(pos, rng.log_uniform(2.0));
      pos += rng.uniform(0.1, 0.5);
    }
    WeightSpec w = WeightSpec::table(steps);
    for (double p : {1.0, 2.0}) {
      auto c1 = blocked_condition_constant(w, p, BlockedVariant::Prec1, 2, 40, trial);
      auto c2 = blocked_condition_constant(w, p, BlockedVariant::Prec2, 2, 40, trial);
      auto c3 = blocked_condition_constant(w, p, BlockedVariant::Prec3, 2, 40, trial);
      CHECK(c1.constant >= c2.constant * (1.0 - 1e-12));
      CHECK(c2.constant >= c3.constant * (1.0 - 1e-12));
    }
  }
}

TEST_CASE("prefix-mean domination of the blocked endpoint mean") {
  // a (x - floor(a)) / x >= a - floor(a) for x >= a, on a mesh
  for (double a = 0.05; a < 10.0; a += 0.173) {
    double fa = std::floor(a);
    for (double x = a; x < a + 30.0; x += 0.311)
      CHECK(a * (x - fa) / x >= (a - fa) * (1.0 - 1e-12));
  }
}

TEST_CASE("product rectangle condition") {
  ProductRectReport flat = product_rectangle_condition(WeightSpec::power(0.0),
                                                       WeightSpec::power(0.0), 2.0, 1.0, 1.0);
  CHECK_FALSE(flat.infinite);
  CHECK(flat.ratio == doctest::Approx(3.0).epsilon(0.02));

  ProductRectReport div = product_rectangle_condition(WeightSpec::power(1.5),
                                                      WeightSpec::power(0.0), 2.0, 1.0, 1.0);
  CHECK(div.infinite);
  CHECK(div.factor_infinite[0]);
  CHECK_FALSE(div.factor_infinite[1]);

  // pushing the corner to the truncation empties the tails
  ProductRectReport tail = product_rectangle_condition(WeightSpec::power(0.0),
                                                       WeightSpec::power(0.0), 2.0, 99.0, 99.0);
  CHECK(tail.lhs < 0.05 * tail.rhs);
}

TEST_CASE("endpoint norm at exponent one") {
  PomSpace c2 = build_chain(2, WeightSpec::constant(1.0));
  ConditionReport rep = b1_norm(c2);
  CHECK(rep.constant == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(rep.witness.members == std::vector<int>{0});

  PomSpace g = build_vertical_grid(2, 2, WeightSpec::constant(1.0));
  ConditionReport grep = b1_norm(g);
  CHECK(grep.constant == doctest::Approx(2.25).epsilon(1e-14));
  // independent oracle: direct rectangle-count sums over all five ideals
  double best = 0;
  for_each_decreasing_set(g, OrderTag::Prec, 100, [&](const std::vector<int>& m) {
    std::vector<char> in(4, 0);
    double den = 0;
    for (int id : m) {
      in[id] = 1;
      den += g.nu[id];
    }
    double num = 0;
    for (int j = 1; j <= 2; ++j)
      for (int i = 1; i <= 2; ++i) {
        int cnt = 0;
        for (int jj = 1; jj <= j; ++jj)
          for (int ii = 1; ii <= i; ++ii) cnt += in[(jj - 1) * 2 + (ii - 1)];
        num += (static_cast<double>(cnt) / (i * j)) * g.nu[(j - 1) * 2 + (i - 1)];
      }
    best = std::max(best, num / den);
  });
  CHECK(grep.constant == doctest::Approx(best).epsilon(1e-13));

  // the full space always realizes ratio one
  for (const PomSpace& s : {build_chain(5, WeightSpec::power(0.5)),
                            build_vertical_grid(3, 2, WeightSpec::constant(1.0))})
    CHECK(b1_norm(s).constant >= 1.0 - 1e-12);
}

TEST_CASE("exponent self-improvement") {
  for (double beta : {-0.5, 0.0, 0.5}) {
    PepsReport rep = p_eps_search(WeightSpec::power(beta), 2.0);
    double target = 2.0 - 1.0 - beta;
    CHECK(rep.eps_star == doctest::Approx(target).epsilon(0.035));
    CHECK(rep.eps_proof > 0.0);
    CHECK(rep.eps_proof <= rep.eps_star);
    CHECK(rep.sigma == std::max(rep.c_measured, 0.5) + 0.1);
    CHECK(rep.eps_proof == 1.0 / rep.sigma);
  }
  CHECK_THROWS_AS(p_eps_search(WeightSpec::power(1.5), 2.0), PreconditionError);
}

TEST_CASE("self-improvement sigma floor engages for small constants") {
  // far from the membership boundary the measured constant drops below 1/p
  // and the floor drives the constructive exponent
  PepsReport rep = p_eps_search(WeightSpec::power(-0.9), 5.0);
  CHECK(rep.c_measured < 1.0 / 5.0);
  CHECK(rep.sigma == doctest::Approx(1.0 / 5.0 + 0.1).epsilon(1e-12));
  CHECK(rep.eps_proof == doctest::Approx(1.0 / (0.2 + 0.1)).epsilon(1e-12));
  CHECK(rep.eps_star == doctest::Approx(5.0 - 0.1).epsilon(0.02));
  CHECK(rep.eps_proof <= rep.eps_star);
}

TEST_CASE("half-line constants are monotone in the exponent") {
  std::vector<WeightSpec> weights{WeightSpec::power(0.25), WeightSpec::constant(2.0),
                                  WeightSpec::table({{0.0, 1.0}, {2.0, 0.3}, {30.0, 2.5}})};
  for (const WeightSpec& w : weights) {
    double prev = kInf;
    bool prev_finite = false;
    for (double p : {1.3, 1.6, 2.0, 3.0, 4.0}) {
      BpReport rep = bp_chain_constant(w, p);
      if (prev_finite) {
        REQUIRE_FALSE(rep.infinite);  // membership only improves with p
        CHECK(rep.constant <= prev * (1.0 + 1e-12));
      }
      if (!rep.infinite) {
        prev = rep.constant;
        prev_finite = true;
      }
    }
    CHECK(prev_finite);
  }
}

TEST_CASE("compactly supported weights have finite tails at every exponent") {
  WeightSpec w = WeightSpec::table({{0.0, 1.0}, {3.0, 0.0}});
  for (double p : {0.5, 1.0, 2.0}) {
    BpReport rep = bp_chain_constant(w, p);
    CHECK_FALSE(rep.infinite);
    CHECK(rep.constant > 0.0);
  }
}
