#pragma once

// Multidimensional states: a grid of k attributes with per-attribute quality
// levels and a utility that is monotone in every attribute.

#include <cstdint>
#include <optional>
#include <vector>

#include "persuasion/core.hpp"

namespace persuasion {

/// Row-major grid (last dimension varies fastest).
class GridInstance {
 public:
  /// Product prior from one marginal per dimension.
  static GridInstance product(std::vector<std::size_t> dims,
                              std::vector<std::vector<double>> marginals,
                              std::vector<double> utility);
  /// General joint prior over the grid.
  static GridInstance joint(std::vector<std::size_t> dims,
                            std::vector<double> joint,
                            std::vector<double> utility);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t size() const { return prior_.size(); }
  bool is_product() const { return marginals_.has_value(); }
  const std::vector<std::vector<double>>& marginals() const;
  const Prior& prior() const { return prior_; }
  const ReceiverUtility& utility() const { return utility_; }

  GridInstance with_utility(std::vector<double> utility) const;

  std::size_t index(const std::vector<std::size_t>& coords) const;
  std::vector<std::size_t> coords(std::size_t index) const;

 private:
  GridInstance(std::vector<std::size_t> dims,
               std::optional<std::vector<std::vector<double>>> marginals,
               Prior prior, ReceiverUtility utility);
  std::vector<std::size_t> dims_;
  std::optional<std::vector<std::vector<double>>> marginals_;
  Prior prior_;
  ReceiverUtility utility_;
};

std::size_t grid_size(const std::vector<std::size_t>& dims);

/// u(p) <= u(p + e_j) for every cell p and dimension j.
bool is_monotone(const std::vector<std::size_t>& dims,
                 std::span<const double> utility);

/// Binary scheme revealing whether every coordinate of the continuous state
/// is in the upper half of its marginal. Requires a product prior.
FiniteScheme median_knapsack_scheme(const GridInstance& inst);
/// Mass of the high signal under the median scheme, per grid cell.
std::vector<double> median_high_masses(const GridInstance& inst);

struct MdRegretCheck {
  double regret;
  double bound;  // 1 - 2^-k
  bool holds;
};
MdRegretCheck md_regret_bound_check(const GridInstance& inst);

struct AntidiagonalEmbedding {
  GridInstance grid;  // utility zero until filled in
  /// Grid index of anti-diagonal state r (coordinates (r, m-1-r)).
  std::vector<std::size_t> diagonal;
  /// Prior of the induced m-state instance on the anti-diagonal.
  Prior diagonal_prior;
};

/// Two-dimensional m x m grid with mass 1 - eps spread evenly on the
/// anti-diagonal i + j = m - 1 (0-based) and eps on the rest.
AntidiagonalEmbedding antidiagonal_embedding(std::size_t m, double eps);
/// Grid utility carrying `diag` on the anti-diagonal, min(diag) below it and
/// max(diag) above it. Always monotone.
std::vector<double> embed_antidiagonal_utility(std::size_t m,
                                               std::span<const double> diag);

/// Prefix sums (in every dimension) of nonnegative increments, minus an
/// offset.
std::vector<double> monotone_utility_from_increments(
    const std::vector<std::size_t>& dims, std::span<const double> increments,
    double offset);
/// Random monotone utility: increments are 0 or Exp(1) with equal
/// probability, offset uniform on [0, max prefix sum].
std::vector<double> sample_monotone_utility(const std::vector<std::size_t>& dims,
                                            std::uint64_t seed);
/// Random product prior with strictly positive marginals.
std::vector<std::vector<double>> sample_product_marginals(
    const std::vector<std::size_t>& dims, std::uint64_t seed);

struct MdSweepResult {
  double max_regret;
  double bound;
  std::size_t instances;
  std::size_t violations;
};
/// Regret of the median scheme over random product priors and random
/// monotone utilities.
MdSweepResult md_sweep(const std::vector<std::size_t>& dims, int priors,
                       int utilities, std::uint64_t seed);

}  // namespace persuasion
