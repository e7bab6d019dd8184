#include "persuasion/approx.hpp"

#include <cmath>

namespace persuasion {

ApproxGameSpec::ApproxGameSpec(double alpha)
    : alpha_(alpha), beta_(0.0) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InstanceError("alpha must lie in (0,1)");
  }
  beta_ = 1.0 / (1.0 - std::log(alpha));
}

double h_payoff(double x, double y) {
  if (!(x < 1.0)) throw InstanceError("h is undefined at x = 1");
  return ratio_kernel()(x, y);
}

double apr_mon_value(double mu_n) {
  if (!(mu_n > 0.0 && mu_n <= 1.0)) {
    throw InstanceError("mu_n must lie in (0,1]");
  }
  return 1.0 / (1.0 + std::log(1.0 / mu_n));
}

MixedThreshold approx_sender_opt(double alpha) {
  const ApproxGameSpec spec(alpha);
  return MixedThreshold(
      {{1.0 - alpha, spec.beta()}},
      {{0.0, 1.0 - alpha, DensityForm::kInverse, spec.beta()}});
}

MixedThreshold approx_adversary_opt(double alpha) {
  const ApproxGameSpec spec(alpha);
  return MixedThreshold(
      {{0.0, spec.beta()}},
      {{0.0, 1.0 - alpha, DensityForm::kInverse, spec.beta()}});
}

double expected_h(const MixedThreshold& x_strategy,
                  const MixedThreshold& y_strategy) {
  if (x_strategy.support_max() >= 1.0) {
    throw InstanceError("adversary threshold must stay below 1");
  }
  return expected_kernel(ratio_kernel(), x_strategy, y_strategy);
}

BestResponse approx_best_response_x(const MixedThreshold& y_strategy, int grid,
                                    ScanDomain domain) {
  auto f = [&](double x) {
    return expected_h(MixedThreshold::point(x), y_strategy);
  };
  return scan_best_response(f, grid, domain, false, y_strategy);
}

BestResponse approx_best_response_y(const MixedThreshold& x_strategy, int grid,
                                    ScanDomain domain) {
  auto f = [&](double y) {
    return expected_h(x_strategy, MixedThreshold::point(y));
  };
  return scan_best_response(f, grid, domain, true, x_strategy);
}

namespace {

double ratio(double achieved, double optimum) {
  if (optimum <= 0.0) return 1.0;
  return achieved / optimum;
}

}  // namespace

double approx_of_scheme(const FiniteScheme& s, const Prior& mu,
                        const ReceiverUtility& u) {
  return ratio(sender_utility(s, u), optimal_knapsack(mu, u).optimal_utility);
}

double approx_of_scheme(const MixedThreshold& m, const StateOrdering& ordering,
                        const Prior& mu, const ReceiverUtility& u) {
  return ratio(mixed_sender_utility(m, ordering, mu, u),
               optimal_knapsack(mu, u).optimal_utility);
}

bool check_reg_apr(double reg, double apr) {
  if (reg <= 0.0) return true;
  return apr <= 1.0 / reg - 1.0 + 1e-9;
}

PiecewiseLinear approx_binary_reduction_uprime(double mu_n) {
  const ApproxGameSpec spec(mu_n);
  const double mu0 = 1.0 - mu_n;
  const double b = spec.beta();
  return PiecewiseLinear(
      {{0.0, b / mu_n, b / mu_n}, {mu0, b * (1.0 - mu0) / mu_n, 0.0},
       {1.0, 0.0, 0.0}});
}

}  // namespace persuasion
