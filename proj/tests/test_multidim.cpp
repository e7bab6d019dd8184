#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "persuasion/arbitrary.hpp"
#include "persuasion/mixed_threshold.hpp"
#include "persuasion/multidim.hpp"
#include "persuasion/standard.hpp"

using namespace persuasion;

namespace {

double high_mass(const FiniteScheme& s) {
  double best = 0.0;
  // The high atom is the one whose posterior sits highest on the top cell.
  const SchemeAtom* hi = &s.atoms()[0];
  for (const auto& a : s.atoms()) {
    if (a.posterior[a.posterior.size() - 1] >
        hi->posterior[hi->posterior.size() - 1]) {
      hi = &a;
    }
  }
  best = hi->weight;
  return best;
}

}  // namespace

TEST_CASE("grid indexing and validation") {
  const auto g = GridInstance::product({2, 3}, {{0.5, 0.5}, {0.2, 0.3, 0.5}},
                                       std::vector<double>(6, 0.0));
  CHECK(g.size() == 6);
  CHECK(g.index({1, 2}) == 5);
  CHECK(g.coords(4) == std::vector<std::size_t>{1, 1});
  CHECK(g.prior()[5] == doctest::Approx(0.25));
  CHECK_THROWS_AS(GridInstance::product({2}, {{0.5, 0.5}, {1.0}}, {0, 0}),
                  InstanceError);
  CHECK_THROWS_AS(GridInstance::product({2}, {{0.0, 1.0}}, {0, 0}),
                  InstanceError);
  CHECK_THROWS_AS(GridInstance::joint({2, 2}, {0.5, 0.5}, {0, 0}),
                  InstanceError);
  const auto j = GridInstance::joint({2, 2}, {0.1, 0.2, 0.3, 0.4}, {0, 0, 0, 0});
  CHECK_FALSE(j.is_product());
  CHECK_THROWS_AS(median_knapsack_scheme(j), InstanceError);
}

TEST_CASE("is_monotone") {
  CHECK(is_monotone({2, 2}, std::vector<double>{0, 1, 1, 2}));
  CHECK_FALSE(is_monotone({2, 2}, std::vector<double>{0, 1, -1, 2}));
  CHECK_FALSE(is_monotone({2, 2}, std::vector<double>{0, 3, 1, 2}));
  CHECK(is_monotone({3}, std::vector<double>{-1, -1, 5}));
}

TEST_CASE("median scheme, one dimension") {
  const auto g =
      GridInstance::product({2}, {{0.5, 0.5}}, std::vector<double>{-1, 1});
  const FiniteScheme s = median_knapsack_scheme(g);
  const FiniteScheme t =
      threshold_to_finite({0.5, StateOrdering::identity(g.prior())}, g.prior());
  REQUIRE(s.size() == t.size());
  for (std::size_t a = 0; a < s.size(); ++a) {
    CHECK(s.atoms()[a].weight == doctest::Approx(t.atoms()[a].weight));
    CHECK(s.atoms()[a].posterior[0] ==
          doctest::Approx(t.atoms()[a].posterior[0]));
  }
}

TEST_CASE("median scheme, uniform 3x3") {
  const std::vector<double> third(3, 1.0 / 3.0);
  const auto g = GridInstance::product({3, 3}, {third, third},
                                       std::vector<double>(9, 0.0));
  const auto high = median_high_masses(g);
  // Level 1 (0-based) straddles the median: half of it lies above 1/2.
  const double f = 1.0 / 6.0, w = 1.0 / 3.0;
  const std::vector<double> expect{0, 0, 0, 0, f * f, f * w, 0, w * f, w * w};
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(high[i] == doctest::Approx(expect[i]).epsilon(1e-14));
  }
  const FiniteScheme s = median_knapsack_scheme(g);
  REQUIRE(s.size() == 2);
  CHECK(high_mass(s) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("median scheme: high mass 2^-k and plausibility") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 1 + rng() % 3;
    std::vector<std::size_t> dims(k);
    for (auto& d : dims) d = 1 + rng() % 5;
    const auto marg = sample_product_marginals(dims, rng());
    const auto g = GridInstance::product(
        dims, marg, std::vector<double>(grid_size(dims), 0.0));
    const auto high = median_high_masses(g);
    double total = 0.0;
    for (double h : high) total += h;
    CHECK(total == doctest::Approx(std::ldexp(1.0, -int(k))).epsilon(1e-12));
    const FiniteScheme s = median_knapsack_scheme(g);
    const auto mean = s.mean();
    for (std::size_t i = 0; i < mean.size(); ++i) {
      CHECK(std::abs(mean[i] - g.prior()[i]) <= 1e-9);
    }
  }
}

TEST_CASE("md_regret_bound_check examples") {
  const std::vector<double> third(3, 1.0 / 3.0);
  const auto zero = GridInstance::product({3, 3}, {third, third},
                                          std::vector<double>(9, 0.0));
  const auto c0 = md_regret_bound_check(zero);
  CHECK(c0.regret == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(c0.bound == 0.75);

  // +1 on the cells touching the median box, -M elsewhere.
  const double big = 1e6;
  std::vector<double> u(9, -big);
  for (std::size_t i : {4u, 5u, 7u, 8u}) u[i] = 1.0;
  REQUIRE(is_monotone({3, 3}, u));
  const auto inst = zero.with_utility(u);
  CHECK(sender_utility(median_knapsack_scheme(inst), inst.utility()) ==
        doctest::Approx(0.25));
  const auto c = md_regret_bound_check(inst);
  CHECK(c.regret == doctest::Approx(4.0 / 9.0 - 0.25).epsilon(1e-5));
  CHECK(c.holds);
}

TEST_CASE("Proposition 4 bound is attained") {
  // Prior mean zero, so u* = 1; the low posterior turns negative.
  for (std::size_t k = 1; k <= 3; ++k) {
    std::vector<std::size_t> dims(k, 2);
    const std::size_t n = grid_size(dims);
    std::vector<double> u(n, -1.0);
    u.back() = static_cast<double>(n - 1);
    const auto g = GridInstance::product(
        dims, std::vector<std::vector<double>>(k, {0.5, 0.5}), u);
    REQUIRE(is_monotone(dims, u));
    const auto c = md_regret_bound_check(g);
    CHECK(c.regret == doctest::Approx(c.bound).epsilon(1e-12));
    CHECK(c.regret >= c.bound - 0.1);
    CHECK(c.holds);
  }
}

TEST_CASE("Proposition 4 on random monotone 3x3 instances") {
  const auto r = md_sweep({3, 3}, 4, 250, 5);
  CHECK(r.instances == 1000);
  CHECK(r.violations == 0);
  CHECK(r.max_regret <= 0.75 + 1e-9);
  const auto r3 = md_sweep({2, 3, 2}, 5, 60, 9);
  CHECK(r3.violations == 0);
  CHECK(r3.bound == 0.875);
}

TEST_CASE("flattened knapsack vs vertex enumeration") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::vector<std::size_t> dims{3, 3};
    const auto g = GridInstance::product(
        dims, sample_product_marginals(dims, rng()),
        sample_monotone_utility(dims, rng()));
    std::vector<double> mu(g.prior().probs().begin(),
                           g.prior().probs().end());
    std::vector<double> u(g.utility().values().begin(),
                          g.utility().values().end());
    CHECK(optimal_knapsack(g.prior(), g.utility()).optimal_utility ==
          doctest::Approx(oracle::best_adoption_mass(mu, u)).epsilon(1e-6));
  }
}

TEST_CASE("monotone utility generator") {
  const std::vector<double> zeros(3, 0.0);
  CHECK(monotone_utility_from_increments({3}, zeros, 0.0) == zeros);
  const std::vector<double> ones(3, 1.0);
  CHECK(monotone_utility_from_increments({3}, ones, 2.0) ==
        std::vector<double>{-1, 0, 1});
  // 2-D prefix sums of all-ones give (i+1)(j+1).
  const auto p = monotone_utility_from_increments(
      {2, 3}, std::vector<double>(6, 1.0), 0.0);
  CHECK(p == std::vector<double>{1, 2, 3, 2, 4, 6});
  int signs = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto u = sample_monotone_utility({3, 3}, seed);
    CHECK(is_monotone({3, 3}, u));
    if (u.front() < 0.0 && u.back() > 0.0) ++signs;
  }
  CHECK(signs > 500);
  CHECK(sample_monotone_utility({3, 3}, 7) == sample_monotone_utility({3, 3}, 7));
}

TEST_CASE("antidiagonal embedding") {
  const auto e2 = antidiagonal_embedding(2, 0.01);
  CHECK(e2.grid.prior()[e2.grid.index({0, 1})] == doctest::Approx(0.495));
  CHECK(e2.grid.prior()[e2.grid.index({1, 0})] == doctest::Approx(0.495));
  CHECK(e2.grid.prior()[0] == doctest::Approx(0.005));
  CHECK_FALSE(e2.grid.is_product());
  CHECK_THROWS_AS(antidiagonal_embedding(1, 0.1), InstanceError);
  CHECK_THROWS_AS(antidiagonal_embedding(3, 0.0), InstanceError);

  // Every utility from {-1, 0, 1} on the diagonal embeds monotonically.
  const std::size_t m = 3;
  for (int code = 0; code < 27; ++code) {
    std::vector<double> diag(m);
    for (std::size_t r = 0, c = code; r < m; ++r, c /= 3) {
      diag[r] = static_cast<double>(c % 3) - 1.0;
    }
    const auto u = embed_antidiagonal_utility(m, diag);
    CHECK(is_monotone({m, m}, u));
    const auto emb = antidiagonal_embedding(m, 0.05);
    for (std::size_t r = 0; r < m; ++r) CHECK(u[emb.diagonal[r]] == diag[r]);
  }
}

TEST_CASE("antidiagonal embedding carries the 4-state lower bound") {
  const std::size_t m = 4;
  const auto emb = antidiagonal_embedding(m, 1e-6);
  const auto gnb = GoodNormalBadInstance::from_permutation(
      emb.diagonal_prior, {0, 1, 2, 3});
  const auto diag_u = gnb.utility();
  std::vector<double> d(diag_u.values().begin(), diag_u.values().end());
  const auto u = embed_antidiagonal_utility(m, d);
  REQUIRE(is_monotone({m, m}, u));
  const auto g = emb.grid.with_utility(u);
  const double grid_star = optimal_knapsack(g.prior(), g.utility()).optimal_utility;
  const double diag_star =
      optimal_knapsack(emb.diagonal_prior, diag_u).optimal_utility;
  CHECK(diag_star >= 1.0 - 2.0 / 4.0 - 1e-12);
  CHECK(grid_star == doctest::Approx(diag_star).epsilon(1e-3));
}
