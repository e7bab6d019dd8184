#include "persuasion/monotone_regret.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace persuasion {

namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InstanceError("alpha must lie in (0,1)");
  }
}

struct Interval {
  double lo, hi;
};

// Closed intervals where a continuous piecewise-linear function (values at
// increasing knots) is >= -tol.
std::vector<Interval> nonnegative_set(const std::vector<double>& xs,
                                      const std::vector<double>& fs,
                                      double tol) {
  std::vector<Interval> out;
  auto push = [&](double lo, double hi) {
    if (!out.empty() && lo <= out.back().hi + 1e-15) {
      out.back().hi = std::max(out.back().hi, hi);
    } else {
      out.push_back({lo, hi});
    }
  };
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const double a = xs[k], b = xs[k + 1];
    const double fa = fs[k] >= -tol ? std::max(fs[k], 0.0) : fs[k];
    const double fb = fs[k + 1] >= -tol ? std::max(fs[k + 1], 0.0) : fs[k + 1];
    if (fa >= 0.0 && fb >= 0.0) {
      push(a, b);
    } else if (fa >= 0.0) {
      push(a, a + (b - a) * fa / (fa - fb));
    } else if (fb >= 0.0) {
      push(a + (b - a) * fa / (fa - fb), b);
    }
  }
  return out;
}

}  // namespace

BestResponse scan_best_response(const std::function<double(double)>& f,
                                int grid, ScanDomain domain, bool maximize,
                                const MixedThreshold& opponent) {
  if (grid < 2) throw InstanceError("grid must be at least 2");
  if (!(domain.lo <= domain.hi)) throw InstanceError("empty scan domain");
  auto better = [&](double a, double b) { return maximize ? a > b : a < b; };

  const double step = (domain.hi - domain.lo) / (grid - 1);
  auto point = [&](int i) {
    return i == grid - 1 ? domain.hi : domain.lo + step * i;
  };
  int best_i = 0;
  BestResponse best{point(0), f(point(0))};
  for (int i = 1; i < grid; ++i) {
    const double v = f(point(i));
    if (better(v, best.value)) {
      best = {point(i), v};
      best_i = i;
    }
  }

  // Golden-section refinement on the cells adjacent to the best grid point.
  double a = point(std::max(best_i - 1, 0));
  double b = point(std::min(best_i + 1, grid - 1));
  const double phi = 0.6180339887498949;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 60 && b - a > 1e-13; ++it) {
    if (better(fc, fd) || fc == fd) {
      b = d; d = c; fd = fc;
      c = b - phi * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + phi * (b - a); fd = f(d);
    }
  }
  if (better(fc, best.value)) best = {c, fc};
  if (better(fd, best.value)) best = {d, fd};

  // The payoff jumps where the opponent has atoms; probe both sides.
  for (const auto& atom : opponent.atoms()) {
    for (double z : {atom.location,
                     std::nextafter(atom.location, -1.0),
                     std::nextafter(atom.location, 2.0)}) {
      if (z < domain.lo || z > domain.hi) continue;
      const double v = f(z);
      if (better(v, best.value)) best = {z, v};
    }
  }
  return best;
}

ThresholdGameSpec::ThresholdGameSpec(double alpha) : alpha_(alpha) {
  require_alpha(alpha);
}

double g_payoff(double x, double y) { return regret_kernel()(x, y); }

double reg_mon_value(double mu_n) {
  if (!(mu_n > 0.0 && mu_n <= 1.0)) {
    throw InstanceError("mu_n must lie in (0,1]");
  }
  if (mu_n <= kInvE) return kInvE;
  return -mu_n * std::log(mu_n) + 0.0;  // no -0 at mu_n = 1
}

MixedThreshold sender_opt(double alpha) {
  require_alpha(alpha);
  if (alpha >= kInvE) {
    std::vector<ThresholdAtom> atoms;
    const double w = 1.0 + std::log(alpha);
    if (w > 0.0) atoms.push_back({1.0 - alpha, w});
    return MixedThreshold(
        std::move(atoms), {{0.0, 1.0 - alpha, DensityForm::kInverse, 1.0}});
  }
  return MixedThreshold({}, {{0.0, 1.0 - kInvE, DensityForm::kInverse, 1.0}});
}

MixedThreshold adversary_opt(double alpha) {
  require_alpha(alpha);
  const double c = alpha >= kInvE ? alpha : kInvE;
  return MixedThreshold({{0.0, c}},
                        {{0.0, 1.0 - c, DensityForm::kInverseSquare, c}});
}

double expected_g(const MixedThreshold& x_strategy,
                  const MixedThreshold& y_strategy) {
  return expected_kernel(regret_kernel(), x_strategy, y_strategy);
}

BestResponse best_response_x(const MixedThreshold& y_strategy, int grid,
                             ScanDomain domain) {
  auto f = [&](double x) {
    return expected_g(MixedThreshold::point(x), y_strategy);
  };
  return scan_best_response(f, grid, domain, true, y_strategy);
}

BestResponse best_response_y(const MixedThreshold& x_strategy, int grid,
                             ScanDomain domain) {
  auto f = [&](double y) {
    return expected_g(x_strategy, MixedThreshold::point(y));
  };
  return scan_best_response(f, grid, domain, false, x_strategy);
}

ReceiverUtility adversary_utility_from_threshold(double t, const Prior& mu) {
  const double top = mu.top();
  if (!(t >= 0.0 && t <= 1.0 - top)) {
    throw InstanceError("threshold must lie in [0, 1 - mu_n]");
  }
  std::vector<double> u(mu.size(), -top);
  u.back() = 1.0 - top - t;
  return ReceiverUtility(std::move(u));
}

double regret_of_scheme(const FiniteScheme& s, const Prior& mu,
                        const ReceiverUtility& u) {
  return optimal_knapsack(mu, u).optimal_utility - sender_utility(s, u);
}

double mixed_sender_utility(const MixedThreshold& m,
                            const StateOrdering& ordering, const Prior& mu,
                            const ReceiverUtility& u) {
  if (u.size() != mu.size() || ordering.size() != mu.size()) {
    throw InstanceError("instance dimensions differ");
  }
  // Along the real-valued state r, u(r) is a step function. The high signal
  // of the y-threshold scheme adopts iff H(y) = int_y^1 u >= 0 and the low
  // signal iff L(y) = int_0^y u >= 0.
  const auto order = ordering.order();
  const auto cum = ordering.cumulative();
  std::vector<double> xs{0.0};
  std::vector<double> low{0.0};
  double scale = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t i = order[k];
    xs.push_back(cum[k]);
    low.push_back(low.back() + mu[i] * u[i]);
    scale += mu[i] * std::abs(u[i]);
  }
  const double total = low.back();
  std::vector<double> high(low.size());
  for (std::size_t k = 0; k < low.size(); ++k) high[k] = total - low[k];
  high.back() = 0.0;

  const double tol = 1e-12 * std::max(scale, 1e-300);
  const double slack = 1e-12;
  double value = 0.0;
  for (const auto& iv : nonnegative_set(xs, high, tol)) {
    value += m.integrate(LogPowerSum::monomial(1.0, 1), iv.lo, iv.hi, slack);
  }
  const LogPowerSum y_weight{{1.0, 0, 0}, {-1.0, 1, 0}};
  for (const auto& iv : nonnegative_set(xs, low, tol)) {
    value += m.integrate(y_weight, iv.lo, iv.hi, slack);
  }
  return value;
}

double regret_of_scheme(const MixedThreshold& m, const StateOrdering& ordering,
                        const Prior& mu, const ReceiverUtility& u) {
  return optimal_knapsack(mu, u).optimal_utility -
         mixed_sender_utility(m, ordering, mu, u);
}

PiecewiseLinear binary_reduction_uprime(double mu_n) {
  require_alpha(mu_n);
  const double mu0 = 1.0 - mu_n;
  if (mu_n >= kInvE) {
    return PiecewiseLinear({{0.0, 1.0, 1.0}, {mu0, 1.0 - mu0, 0.0},
                            {1.0, 0.0, 0.0}});
  }
  const double knee = 1.0 - mu_n * std::exp(1.0);
  return PiecewiseLinear({{0.0, 1.0, 1.0},
                          {knee, 1.0, 1.0},
                          {mu0, (1.0 - mu0) / (mu_n * std::exp(1.0)), 0.0},
                          {1.0, 0.0, 0.0}});
}

}  // namespace persuasion
