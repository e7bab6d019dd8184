#include <cmath>
#include <random>

#include "doctest.h"
#include "persuasion/approx.hpp"
#include "persuasion/matrix_game.hpp"
#include "persuasion/monotone_regret.hpp"

using namespace persuasion;

namespace {

// Value of a 2x2 zero-sum game (row maximizes), by checking for a saddle
// point and otherwise using the equalizing mixed strategies.
double value_2x2(double a, double b, double c, double d) {
  const double maximin = std::max(std::min(a, b), std::min(c, d));
  const double minimax = std::min(std::max(a, c), std::max(b, d));
  if (maximin == minimax) return maximin;
  return (a * d - b * c) / (a + d - b - c);
}

}  // namespace

TEST_CASE("discretize") {
  const MatrixGame g = discretize(g_payoff, 0.0, 0.5, 2);
  CHECK(g.entry(0, 0) == 0.0);
  CHECK(g.entry(0, 1) == 0.5);
  CHECK(g.entry(1, 0) == 0.5);
  CHECK(g.entry(1, 1) == 0.0);

  const MatrixGame h = discretize(h_payoff, 0.0, 0.5, 2);
  CHECK(h.entry(0, 0) == 1.0);
  CHECK(h.entry(0, 1) == 0.5);
  CHECK(h.entry(1, 0) == 0.0);
  CHECK(h.entry(1, 1) == 1.0);

  const MatrixGame big = discretize(g_payoff, 0.0, 1.0, 2001);
  CHECK(big.rows() == 2001);
  CHECK(big.cols() == 2001);
  CHECK(big.min_entry() >= -1.0);
  CHECK(big.max_entry() <= 1.0);
  CHECK_THROWS_AS(discretize(g_payoff, 0.0, 1.0, 1), InstanceError);
}

TEST_CASE("structured kernel operator agrees with the dense matrix") {
  const auto grid = uniform_grid(0.0, 0.6, 57);
  std::mt19937_64 rng(4);
  for (double sign : {1.0, -1.0}) {
    for (bool ratio : {false, true}) {
      const ThresholdKernelGame op(ratio ? ratio_kernel() : regret_kernel(),
                                   grid, grid, sign);
      const auto f = ratio ? h_payoff : g_payoff;
      const MatrixGame dense = discretize(
          [&](double x, double y) { return sign * f(x, y); }, 0.0, 0.6, 57);
      double lo = 1e9, hi = -1e9;
      for (std::size_t i = 0; i < 57; ++i) {
        for (std::size_t j = 0; j < 57; ++j) {
          CHECK(op.entry(i, j) == doctest::Approx(dense.entry(i, j)));
          lo = std::min(lo, dense.entry(i, j));
          hi = std::max(hi, dense.entry(i, j));
        }
      }
      CHECK(op.min_entry() == doctest::Approx(lo));
      CHECK(op.max_entry() == doctest::Approx(hi));
      std::vector<double> v(57), a(57), b(57);
      for (auto& z : v) z = uniform01(rng);
      op.row_payoffs(v, a);
      dense.row_payoffs(v, b);
      for (int i = 0; i < 57; ++i) CHECK(a[i] == doctest::Approx(b[i]));
      op.col_payoffs(v, a);
      dense.col_payoffs(v, b);
      for (int i = 0; i < 57; ++i) CHECK(a[i] == doctest::Approx(b[i]));
    }
  }
}

TEST_CASE("small games with known values") {
  const double eps = 1e-3;
  const GameReport pennies =
      solve_matrix_game(MatrixGame({{1.0, -1.0}, {-1.0, 1.0}}), {eps});
  CHECK(pennies.converged);
  CHECK(std::abs(pennies.value_estimate) <= eps);

  const GameReport r =
      solve_matrix_game(MatrixGame({{0.0, 0.5}, {0.5, 0.0}}), {eps});
  CHECK(std::abs(r.value_estimate - 0.25) <= eps);

  // Soundness: the exact value lies between the certified best responses.
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    double e[4];
    for (double& z : e) z = 2 * uniform01(rng) - 1;
    const GameReport rep =
        solve_matrix_game(MatrixGame({{e[0], e[1]}, {e[2], e[3]}}), {1e-3});
    const double v = value_2x2(e[0], e[1], e[2], e[3]);
    CHECK(rep.duality_gap >= 0.0);
    CHECK(rep.row_best_response - rep.col_best_response ==
          doctest::Approx(rep.duality_gap));
    CHECK(v >= rep.col_best_response - 1e-12);
    CHECK(v <= rep.row_best_response + 1e-12);
    CHECK(rep.value_estimate >= rep.col_best_response - 1e-12);
    CHECK(rep.value_estimate <= rep.row_best_response + 1e-12);
  }
  CHECK_THROWS_AS(MatrixGame({{1.0, NAN}}), InstanceError);
  CHECK_THROWS_AS(solve_matrix_game(MatrixGame(std::vector<std::vector<double>>{{1.0}}), {0.0}), InstanceError);
}

TEST_CASE("report carries the gap when the budget runs out") {
  const GameReport rep = solve_matrix_game(
      MatrixGame({{3.0, -1.0}, {-2.0, 1.0}}), {1e-9, 10, 16});
  CHECK_FALSE(rep.converged);
  CHECK(rep.iterations == 10);
  CHECK(rep.duality_gap >= 0.0);
}

TEST_CASE("discretized threshold games approach the analytic values") {
  for (KernelId k : {KernelId::kRegret, KernelId::kRatio}) {
    for (double alpha : {0.25, 0.5}) {
      const LemmaReport a = verify_lemma(k, alpha, 101, 4e-3);
      const LemmaReport b = verify_lemma(k, alpha, 202, 4e-3);
      CHECK(a.game.converged);
      CHECK(b.game.converged);
      CHECK(std::abs(a.value - b.value) <= 10.0 / 101);
      CHECK(a.abs_error < 0.02);
      CHECK(b.abs_error < 0.02);
    }
  }
}

TEST_CASE("solver's adversary marginal has the atom at zero") {
  for (double alpha : {std::exp(-1.0), 0.5, 0.7}) {
    const LemmaReport r = verify_lemma(KernelId::kRegret, alpha, 201, 1e-3);
    CHECK(r.game.row_strategy[0] >= alpha - 0.05);
  }
}
