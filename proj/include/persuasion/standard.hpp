#pragma once

// Persuasion with a known receiver utility: the greedy fractional knapsack
// and one-dimensional concavification.

#include <utility>
#include <vector>

#include "persuasion/core.hpp"

namespace persuasion {

struct KnapsackSolution {
  /// Optimal threshold on the real-valued state; states above it are pooled.
  double threshold_x;
  /// Ascending-utility ordering the threshold refers to.
  StateOrdering ordering;
  /// 1 - threshold_x: probability of adoption under the optimal scheme.
  double optimal_utility;
};

/// Pools states in descending utility order while the pooled expectation
/// stays nonnegative; the marginal state is split fractionally.
KnapsackSolution optimal_knapsack(const Prior& mu, const ReceiverUtility& u);

/// The optimal two-signal threshold scheme for a known utility.
FiniteScheme optimal_scheme(const KnapsackSolution& sol, const Prior& mu);

struct Knot {
  double x;
  double left;   // limit from the left
  double right;  // limit from the right
};

/// Piecewise-linear function on [0,1] with optional jumps at knots. Between
/// consecutive knots the function interpolates from knots[k].right to
/// knots[k+1].left. At a jump the function takes the larger one-sided value.
class PiecewiseLinear {
 public:
  explicit PiecewiseLinear(std::vector<Knot> knots);

  const std::vector<Knot>& knots() const { return knots_; }
  double operator()(double x) const;

 private:
  std::vector<Knot> knots_;
};

struct Concavification {
  double value;
  /// Hull edge containing q0; lo == hi when q0 is a hull vertex.
  double lo;
  double hi;
};

/// Least concave majorant as a continuous piecewise-linear function; its
/// knots are the upper-hull vertices with collinear points removed.
PiecewiseLinear concave_envelope(const PiecewiseLinear& f);
Concavification concavify_at(const PiecewiseLinear& f, double q0);

}  // namespace persuasion
