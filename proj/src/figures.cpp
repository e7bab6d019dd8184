#include "persuasion/figures.hpp"

#include <algorithm>
#include <cmath>

#include "persuasion/approx.hpp"
#include "persuasion/core.hpp"
#include "persuasion/monotone_regret.hpp"

namespace persuasion {

namespace {

std::vector<double> mu_grid(int points, std::vector<double> extra) {
  if (points < 2) throw InstanceError("need at least two points");
  std::vector<double> xs;
  for (int i = 1; i <= points; ++i) xs.push_back(static_cast<double>(i) / points);
  xs.insert(xs.end(), extra.begin(), extra.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

Table regret_curve(int points) {
  Table t{{"mu_n", "reg_mon"}, {}};
  for (double mu : mu_grid(points, {kInvE})) {
    t.rows.push_back({mu, reg_mon_value(mu)});
  }
  return t;
}

Table density_curve(double alpha, int points) {
  if (points < 2) throw InstanceError("need at least two points");
  const MixedThreshold m = sender_opt(alpha);
  const DensityPiece& p = m.pieces().front();
  Table t{{"y", "density"}, {}};
  for (int i = 0; i < points; ++i) {
    const double y = i + 1 == points ? p.hi : p.lo + (p.hi - p.lo) * i / (points - 1);
    t.rows.push_back({y, p.density(y)});
  }
  return t;
}

Table approx_curve(int points) {
  Table t{{"mu_n", "apr_mon"}, {}};
  for (double mu : mu_grid(points, {std::exp(-1.0), std::exp(-2.0)})) {
    t.rows.push_back({mu, apr_mon_value(mu)});
  }
  return t;
}

Table uprime_curve(double mu_n, int points) {
  if (points < 2) throw InstanceError("need at least two points");
  const PiecewiseLinear f = binary_reduction_uprime(mu_n);
  const PiecewiseLinear env = concave_envelope(f);
  Table t{{"q", "uprime", "concavification"}, {}};
  for (int i = 0; i < points; ++i) {
    const double q = i + 1 == points ? 1.0 : static_cast<double>(i) / (points - 1);
    t.rows.push_back({q, f(q), env(q)});
  }
  return t;
}

Table thm2_bounds(int max_n) {
  if (max_n < 2) throw InstanceError("need max_n >= 2");
  Table t{{"n", "bound_lb", "bound_ub"}, {}};
  for (int n = 2; n <= max_n; ++n) {
    const double nd = n;
    t.rows.push_back({nd, 1.0 - 2.0 / std::sqrt(nd), 1.0 - 1.0 / (4.0 * nd * nd)});
  }
  return t;
}

}  // namespace persuasion
