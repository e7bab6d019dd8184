#include "persuasion/threshold_kernel.hpp"

#include <algorithm>

#include "persuasion/core.hpp"

namespace persuasion {

double ThresholdKernel::operator()(double x, double y) const {
  double v = r(x);
  if (y >= x) v += s(x) * t(y);
  return v;
}

ThresholdKernel regret_kernel() {
  return {LogPowerSum::monomial(1.0, 1), LogPowerSum::constant(-1.0),
          LogPowerSum::monomial(1.0, 1)};
}

ThresholdKernel ratio_kernel() {
  return {LogPowerSum{}, LogPowerSum::monomial(1.0, -1),
          LogPowerSum::monomial(1.0, 1)};
}

double expected_kernel(const ThresholdKernel& k, const MixedThreshold& x_strategy,
                       const MixedThreshold& y_strategy, double tie_slack) {
  const auto& X = x_strategy;
  double total = X.integrate(k.r, -1.0, 2.0);

  // S(z) = E[s(X) 1{X <= z}]
  auto s_below = [&](double z) { return X.integrate(k.s, -1.0, z, tie_slack); };

  for (const auto& b : y_strategy.atoms()) {
    total += b.weight * k.t(b.location) * s_below(b.location);
  }

  std::vector<double> cuts;
  for (const auto& a : X.atoms()) cuts.push_back(a.location);
  for (const auto& p : X.pieces()) {
    cuts.push_back(p.lo);
    cuts.push_back(p.hi);
  }
  std::sort(cuts.begin(), cuts.end());

  for (const auto& piece : y_strategy.pieces()) {
    const LogPowerSum weight = k.t * piece.as_log_power();
    std::vector<double> knots{piece.lo};
    for (double c : cuts) {
      if (c > piece.lo && c < piece.hi) knots.push_back(c);
    }
    knots.push_back(piece.hi);

    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      const double z0 = knots[i];
      const double z1 = knots[i + 1];
      if (!(z0 < z1)) continue;
      // On (z0, z1) no X atom or piece boundary is crossed, so S is the
      // value at z0 plus the running integral of each active piece.
      LogPowerSum running;
      double offset = s_below(z0);
      for (const auto& p : X.pieces()) {
        if (p.lo <= z0 && p.hi >= z1) {
          LogPowerSum anti = (k.s * p.as_log_power()).antiderivative();
          offset -= anti(z0);
          running += anti;
        }
      }
      running += LogPowerSum::constant(offset);
      total += (weight * running).integrate(z0, z1);
    }
  }
  return total;
}

}  // namespace persuasion
