#pragma once

// Adversarial approximation: the worst-case ratio of a scheme's adoption
// probability to the knowledgeable optimum, for monotone utilities.

#include "persuasion/core.hpp"
#include "persuasion/mixed_threshold.hpp"
#include "persuasion/monotone_regret.hpp"
#include "persuasion/standard.hpp"

namespace persuasion {

class ApproxGameSpec {
 public:
  explicit ApproxGameSpec(double alpha);
  double alpha() const { return alpha_; }
  /// 1 / (1 + ln(1/alpha))
  double beta() const { return beta_; }

 private:
  double alpha_;
  double beta_;
};

double h_payoff(double x, double y);

/// 1 / (1 + ln(1/mu_n))
double apr_mon_value(double mu_n);

/// Ratio-maximizing sender strategy: density beta/(1-y) on [0, 1-alpha]
/// plus an atom beta at 1-alpha.
MixedThreshold approx_sender_opt(double alpha);
/// Adversary's strategy: atom beta at 0 plus density beta/(1-x).
MixedThreshold approx_adversary_opt(double alpha);

double expected_h(const MixedThreshold& x_strategy,
                  const MixedThreshold& y_strategy);

/// Adversary minimizes the expected ratio against a sender strategy.
BestResponse approx_best_response_x(const MixedThreshold& y_strategy, int grid,
                                    ScanDomain domain);
/// Sender maximizes the expected ratio against an adversary strategy.
BestResponse approx_best_response_y(const MixedThreshold& x_strategy, int grid,
                                    ScanDomain domain);

/// sender utility / optimal utility, with 0/0 read as 1.
double approx_of_scheme(const FiniteScheme& s, const Prior& mu,
                        const ReceiverUtility& u);
double approx_of_scheme(const MixedThreshold& m, const StateOrdering& ordering,
                        const Prior& mu, const ReceiverUtility& u);

/// Apr <= 1/Reg - 1, with slack 1e-9. reg = 0 is vacuously true.
bool check_reg_apr(double reg, double apr);

/// Expected ratio at binary posterior q against approx_adversary_opt(mu_n):
/// beta (1-q) / mu_n up to mu_0, zero after.
PiecewiseLinear approx_binary_reduction_uprime(double mu_n);

}  // namespace persuasion
