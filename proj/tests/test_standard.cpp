#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "persuasion/mixed_threshold.hpp"
#include "persuasion/standard.hpp"

using namespace persuasion;

namespace {

std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> p(n);
  double s = 0.0;
  for (auto& x : p) s += (x = uniform01(rng) + 1e-3);
  for (auto& x : p) x /= s;
  return p;
}

std::vector<double> random_utility(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> u(n);
  for (auto& x : u) {
    x = std::exponential_distribution<double>(1.0)(rng);
    if (uniform01(rng) < 0.5) x = -x;
  }
  return u;
}

}  // namespace

TEST_CASE("optimal_knapsack: worked examples") {
  const Prior mu({0.2, 0.3, 0.5});
  const auto sol = optimal_knapsack(mu, ReceiverUtility({-2.0, -2.0, 1.0}));
  CHECK(sol.threshold_x == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(sol.optimal_utility == doctest::Approx(0.75).epsilon(1e-14));

  CHECK(optimal_knapsack(mu, ReceiverUtility({0.0, 1.0, 3.0})).optimal_utility ==
        1.0);
  CHECK(optimal_knapsack(mu, ReceiverUtility({-1.0, -1.0, -0.1}))
            .optimal_utility == 0.0);

  // Marginal state is added until the pooled expectation hits zero.
  const auto pinned =
      optimal_knapsack(mu, ReceiverUtility({-0.5, -0.5, 0.0}));
  CHECK(pinned.optimal_utility == doctest::Approx(0.5));
}

TEST_CASE("optimal_knapsack agrees with vertex enumeration") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const auto p = random_simplex(rng, n);
    const auto u = random_utility(rng, n);
    const auto sol = optimal_knapsack(Prior(p), ReceiverUtility(u));
    CHECK(sol.optimal_utility ==
          doctest::Approx(oracle::best_adoption_mass(p, u)).epsilon(1e-9));
    // The optimal scheme achieves the value.
    const FiniteScheme s = optimal_scheme(sol, Prior(p));
    CHECK(is_bayes_plausible(s, Prior(p)));
    CHECK(sender_utility(s, ReceiverUtility(u), 1e-12) ==
          doctest::Approx(sol.optimal_utility).epsilon(1e-9));
  }
}

TEST_CASE("binary instances: knapsack matches a posterior grid search") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_simplex(rng, 2);
    const auto u = random_utility(rng, 2);
    const ReceiverUtility ru(u);
    // Two posteriors a <= mu_1 <= b on a 1e-3 grid of the first coordinate.
    double best = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double a = i / 1000.0;
      if (a > p[0]) break;
      const bool adopt_a = a * u[0] + (1 - a) * u[1] >= 0.0;
      for (int j = 1000; j >= 0; --j) {
        const double b = j / 1000.0;
        if (b < p[0]) break;
        const bool adopt_b = b * u[0] + (1 - b) * u[1] >= 0.0;
        const double wb = b > a ? (p[0] - a) / (b - a) : 1.0;
        best = std::max(best, (adopt_a ? 1 - wb : 0.0) + (adopt_b ? wb : 0.0));
      }
    }
    const double v = optimal_knapsack(Prior(p), ru).optimal_utility;
    CHECK(v >= best - 1e-12);
    CHECK(v <= best + 5e-3);
  }
}

TEST_CASE("knapsack: equal utilities and monotonicity") {
  const Prior mu({0.25, 0.25, 0.5});
  const auto a = optimal_knapsack(mu, ReceiverUtility({-1.0, -1.0, 0.25}));
  CHECK(a.optimal_utility == doctest::Approx(0.625));
  CHECK(a.ordering.order()[2] == 2);
  CHECK(a.ordering.order()[1] == 0);  // lower index pooled first among ties

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const Prior p(random_simplex(rng, n));
    auto u = random_utility(rng, n);
    const double before = optimal_knapsack(p, ReceiverUtility(u)).optimal_utility;
    u[trial % n] += uniform01(rng);
    CHECK(optimal_knapsack(p, ReceiverUtility(u)).optimal_utility >=
          before - 1e-12);
  }
}

TEST_CASE("Fact 1: high signal adopts exactly above the knapsack threshold") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const Prior mu(random_simplex(rng, n));
    const ReceiverUtility u(random_utility(rng, n));
    const auto sol = optimal_knapsack(mu, u);
    if (sol.optimal_utility == 0.0 || sol.threshold_x == 0.0) continue;
    for (double y : {sol.threshold_x + 1e-6, 0.5 * (1 + sol.threshold_x)}) {
      const auto s = threshold_to_finite({y, sol.ordering}, mu);
      CHECK(adopts(s.atoms().back().posterior, u));
    }
    const double below = sol.threshold_x * (1 - 1e-6);
    if (below > 0.0) {
      const auto s = threshold_to_finite({below, sol.ordering}, mu);
      INFO("x=", sol.threshold_x, " n=", n, " e=", expected_adopt_utility(s.atoms().back().posterior.probs(), u));
      CHECK_FALSE(adopts(s.atoms().back().posterior, u));
    }
  }
}

TEST_CASE("concavify_at") {
  const double mu0 = 0.6;
  const PiecewiseLinear f({{0.0, 1.0, 1.0}, {mu0, 1.0 - mu0, 0.0},
                           {1.0, 0.0, 0.0}});
  const Concavification c = concavify_at(f, mu0);
  CHECK(c.value == doctest::Approx(1.0 - mu0));
  CHECK(c.lo == 0.0);
  CHECK(c.hi == 1.0);

  const PiecewiseLinear concave({{0.0, 0.0, 0.0}, {0.5, 1.0, 1.0},
                                 {1.0, 0.2, 0.2}});
  const Concavification cc = concavify_at(concave, 0.3);
  CHECK(cc.value == doctest::Approx(concave(0.3)));
  const Concavification vertex = concavify_at(concave, 0.5);
  CHECK(vertex.lo == vertex.hi);

  // Chord from (1 - mu_n e, 1) to (1, 0) for mu_n < 1/e.
  const double mun = 0.2, e = std::exp(1.0);
  const double knee = 1 - mun * e;
  const PiecewiseLinear g({{0.0, 1.0, 1.0}, {knee, 1.0, 1.0},
                           {1 - mun, mun / (mun * e), 0.0}, {1.0, 0.0, 0.0}});
  for (double q0 : {knee + 0.01, 0.7, 1 - mun}) {
    const Concavification r = concavify_at(g, q0);
    CHECK(r.value == doctest::Approx((1 - q0) / (mun * e)).epsilon(1e-12));
    // Dense-grid upper envelope: best chord between grid points around q0.
    double best = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double a = q0 * i / 400.0;
      for (int j = 0; j <= 400; ++j) {
        const double b = q0 + (1 - q0) * j / 400.0;
        const double v = b > a ? g(a) + (g(b) - g(a)) * (q0 - a) / (b - a)
                               : g(q0);
        best = std::max(best, v);
      }
    }
    CHECK(r.value >= best - 1e-12);
    CHECK(r.value <= best + 1e-3);
  }
}

TEST_CASE("concave envelope majorizes and is concave") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Knot> knots{{0.0, 0.0, uniform01(rng)}};
    double x = 0.0;
    while (true) {
      x += 0.05 + 0.2 * uniform01(rng);
      if (x >= 1.0) break;
      knots.push_back({x, uniform01(rng), uniform01(rng)});
    }
    knots.push_back({1.0, uniform01(rng), 0.0});
    const PiecewiseLinear f(knots);
    const PiecewiseLinear env = concave_envelope(f);
    for (int i = 0; i <= 200; ++i) {
      const double q = i / 200.0;
      CHECK(env(q) >= f(q) - 1e-12);
      CHECK(concavify_at(f, q).value == doctest::Approx(env(q)));
    }
    for (int k = 0; k < 50; ++k) {
      const double a = uniform01(rng), b = uniform01(rng);
      CHECK(env(0.5 * (a + b)) >= 0.5 * (env(a) + env(b)) - 1e-9);
    }
  }
}
