#pragma once

// Regret minimization when the receiver's adoption utility is known to be
// nondecreasing in the state. Sender randomizes the threshold of a
// threshold scheme; the adversary effectively picks the optimal threshold.

#include <functional>

#include "persuasion/core.hpp"
#include "persuasion/mixed_threshold.hpp"
#include "persuasion/standard.hpp"
#include "persuasion/threshold_kernel.hpp"

namespace persuasion {

inline constexpr double kInvE = 0.36787944117144233;  // 1/e

/// Threshold game with top-state mass alpha; actions live in [0, 1-alpha].
class ThresholdGameSpec {
 public:
  explicit ThresholdGameSpec(double alpha);
  double alpha() const { return alpha_; }
  double action_max() const { return 1.0 - alpha_; }

 private:
  double alpha_;
};

double g_payoff(double x, double y);

/// 1/e for mu_n <= 1/e, -mu_n ln mu_n above.
double reg_mon_value(double mu_n);

/// Regret-minimizing threshold distribution: density 1/(1-y) on
/// [0, min(1-alpha, 1-1/e)] plus an atom 1+ln(alpha) at 1-alpha when
/// alpha >= 1/e.
MixedThreshold sender_opt(double alpha);
/// Adversary's equilibrium threshold distribution.
MixedThreshold adversary_opt(double alpha);

double expected_g(const MixedThreshold& x_strategy,
                  const MixedThreshold& y_strategy);

struct BestResponse {
  double action;
  double value;
};

struct ScanDomain {
  double lo = 0.0;
  double hi = 1.0;
};

/// Grid scan of f over the domain, then a golden-section pass on the best
/// cell. Atoms of the opponent inside the domain are also probed from both
/// sides, since the payoff jumps there.
BestResponse scan_best_response(const std::function<double(double)>& f,
                                int grid, ScanDomain domain, bool maximize,
                                const MixedThreshold& opponent);

/// Adversary's best threshold against a sender strategy.
BestResponse best_response_x(const MixedThreshold& y_strategy, int grid,
                             ScanDomain domain = {});
/// Sender's best (regret-minimizing) threshold against an adversary mix.
BestResponse best_response_y(const MixedThreshold& x_strategy, int grid,
                             ScanDomain domain = {});

/// Utility whose optimal knapsack threshold is exactly t: every state but
/// the last gets -mu_n, the last gets 1 - mu_n - t.
ReceiverUtility adversary_utility_from_threshold(double t, const Prior& mu);

/// u*(u) - u(s, u) for a finite scheme.
double regret_of_scheme(const FiniteScheme& s, const Prior& mu,
                        const ReceiverUtility& u);
/// Exact regret of the randomized threshold scheme (threshold ~ m, laid out
/// along `ordering`) against a single utility.
double regret_of_scheme(const MixedThreshold& m, const StateOrdering& ordering,
                        const Prior& mu, const ReceiverUtility& u);
/// Exact adoption probability of the randomized threshold scheme.
double mixed_sender_utility(const MixedThreshold& m,
                            const StateOrdering& ordering, const Prior& mu,
                            const ReceiverUtility& u);

/// Adoption probability at binary posterior q (mass on the pooled low
/// states) when the adversary draws t ~ adversary_opt(mu_n).
PiecewiseLinear binary_reduction_uprime(double mu_n);

}  // namespace persuasion
