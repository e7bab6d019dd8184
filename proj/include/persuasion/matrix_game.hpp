#pragma once

// Finite zero-sum games as a numerical cross-check of the continuum threshold
// games. The row player maximizes. Solved by multiplicative-weights
// self-play, which certifies its own duality gap.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "persuasion/threshold_kernel.hpp"

namespace persuasion {

class PayoffOperator {
 public:
  virtual ~PayoffOperator() = default;
  virtual std::size_t rows() const = 0;
  virtual std::size_t cols() const = 0;
  virtual double entry(std::size_t i, std::size_t j) const = 0;
  /// out[i] = sum_j A(i,j) y[j]
  virtual void row_payoffs(std::span<const double> y,
                           std::span<double> out) const = 0;
  /// out[j] = sum_i x[i] A(i,j)
  virtual void col_payoffs(std::span<const double> x,
                           std::span<double> out) const = 0;
  virtual double min_entry() const = 0;
  virtual double max_entry() const = 0;
};

class MatrixGame : public PayoffOperator {
 public:
  /// Row-major payoff matrix.
  MatrixGame(std::size_t rows, std::size_t cols, std::vector<double> payoff);
  explicit MatrixGame(const std::vector<std::vector<double>>& payoff);

  std::size_t rows() const override { return rows_; }
  std::size_t cols() const override { return cols_; }
  double entry(std::size_t i, std::size_t j) const override {
    return a_[i * cols_ + j];
  }
  void row_payoffs(std::span<const double> y,
                   std::span<double> out) const override;
  void col_payoffs(std::span<const double> x,
                   std::span<double> out) const override;
  double min_entry() const override { return lo_; }
  double max_entry() const override { return hi_; }

 private:
  std::size_t rows_, cols_;
  std::vector<double> a_;
  double lo_, hi_;
};

/// A(i,j) = sign * K(x_i, y_j) for a threshold kernel on sorted grids,
/// applied in O(rows + cols) per product by prefix sums over the indicator.
class ThresholdKernelGame : public PayoffOperator {
 public:
  ThresholdKernelGame(const ThresholdKernel& k, std::vector<double> xs,
                      std::vector<double> ys, double sign = 1.0);

  std::size_t rows() const override { return xs_.size(); }
  std::size_t cols() const override { return ys_.size(); }
  double entry(std::size_t i, std::size_t j) const override;
  void row_payoffs(std::span<const double> y,
                   std::span<double> out) const override;
  void col_payoffs(std::span<const double> x,
                   std::span<double> out) const override;
  double min_entry() const override { return lo_; }
  double max_entry() const override { return hi_; }

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }

 private:
  std::vector<double> xs_, ys_;
  std::vector<double> r_, s_, t_;
  // first_[i]: first column j with ys[j] >= xs[i].
  std::vector<std::size_t> first_;
  double lo_, hi_;
};

/// m equally spaced points covering [lo, hi], endpoints included.
std::vector<double> uniform_grid(double lo, double hi, std::size_t m);

/// Dense matrix with entry (i,j) = kernel(x_i, y_j) on a uniform grid over
/// [lo, hi] for both players.
MatrixGame discretize(const std::function<double(double, double)>& kernel,
                      double lo, double hi, std::size_t m);

struct GameReport {
  double value_estimate = 0.0;
  double duality_gap = 0.0;
  /// max_i (A y_bar)_i and min_j (x_bar A)_j.
  double row_best_response = 0.0;
  double col_best_response = 0.0;
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
  std::int64_t iterations = 0;
  bool converged = false;
};

struct SolverOptions {
  double eps = 1e-3;
  std::int64_t max_iters = 2'000'000;
  /// Iterations between duality-gap evaluations.
  int check_every = 16;
};

/// Multiplicative-weights self-play with step sqrt(8 ln m / t) on payoffs
/// rescaled to [0,1]; reports averaged strategies.
GameReport solve_matrix_game(const PayoffOperator& game,
                             const SolverOptions& options = {});

enum class KernelId { kRegret, kRatio };

struct LemmaReport {
  KernelId kernel;
  double alpha;
  std::size_t m;
  GameReport game;
  /// Game value in the kernel's own orientation (h is reported as h, not -h).
  double value;
  double analytic;
  double abs_error;
  /// Total variation between the solver's marginals and the analytic
  /// equilibrium strategies, both binned on `bins` equal cells.
  double tv_x;
  double tv_y;
  int bins;
  double seconds;
};

LemmaReport verify_lemma(KernelId kernel, double alpha, std::size_t m,
                         double eps, std::int64_t max_iters = 2'000'000,
                         int bins = 20);

std::string kernel_name(KernelId k);

}  // namespace persuasion
