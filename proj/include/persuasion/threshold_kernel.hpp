#pragma once

#include "persuasion/closed_form.hpp"
#include "persuasion/mixed_threshold.hpp"

namespace persuasion {

/// Payoff kernel of a threshold game:
///   K(x, y) = r(x) + s(x) * t(y) * 1{y >= x}
/// with r, s, t in the log-power family (functions of w = 1 - z). x is the
/// adversary's threshold, y the sender's.
struct ThresholdKernel {
  LogPowerSum r;
  LogPowerSum s;
  LogPowerSum t;

  double operator()(double x, double y) const;
};

/// g(x, y) = (1 - x) - (1 - y) 1{y >= x}: regret of the y-threshold scheme
/// when the optimal threshold is x.
ThresholdKernel regret_kernel();
/// h(x, y) = (1 - y) 1{y >= x} / (1 - x): approximation ratio.
ThresholdKernel ratio_kernel();

/// Exact E[K(X, Y)] for independent X ~ x_strategy, Y ~ y_strategy.
/// `tie_slack` widens the y >= x comparison between atoms, so that atoms
/// whose locations differ only by rounding count as tied.
double expected_kernel(const ThresholdKernel& k, const MixedThreshold& x_strategy,
                       const MixedThreshold& y_strategy, double tie_slack = 0.0);

}  // namespace persuasion
