#include "persuasion/standard.hpp"

#include <algorithm>
#include <cmath>

namespace persuasion {

KnapsackSolution optimal_knapsack(const Prior& mu, const ReceiverUtility& u) {
  StateOrdering ordering = StateOrdering::ascending_utility(mu, u);
  const auto order = ordering.order();
  const auto cum = ordering.cumulative();

  // Walk down from the highest utility. The threshold is read off the
  // ascending cumulative masses so that pooling everything gives exactly 0.
  double threshold = 0.0;
  double surplus = 0.0;  // sum of mu_i * u_i over the pooled mass
  for (std::size_t k = order.size(); k-- > 0;) {
    const std::size_t i = order[k];
    const double below = k == 0 ? 0.0 : cum[k - 1];
    if (u[i] >= 0.0) {
      surplus += mu[i] * u[i];
      continue;
    }
    if (k + 1 == order.size()) {  // top utility negative: nothing can adopt
      threshold = 1.0;
      break;
    }
    const double capacity = std::max(surplus, 0.0) / -u[i];
    if (capacity >= mu[i]) {
      surplus += mu[i] * u[i];
    } else {
      threshold = std::clamp(cum[k] - capacity, below, cum[k]);
      break;
    }
  }
  return {threshold, std::move(ordering), 1.0 - threshold};
}

FiniteScheme optimal_scheme(const KnapsackSolution& sol, const Prior& mu) {
  return threshold_to_finite({sol.threshold_x, sol.ordering}, mu);
}

PiecewiseLinear::PiecewiseLinear(std::vector<Knot> knots)
    : knots_(std::move(knots)) {
  if (knots_.size() < 2) throw InstanceError("need at least two knots");
  if (knots_.front().x != 0.0 || knots_.back().x != 1.0) {
    throw InstanceError("knots must cover [0,1]");
  }
  for (std::size_t k = 0; k + 1 < knots_.size(); ++k) {
    if (!(knots_[k].x < knots_[k + 1].x)) {
      throw InstanceError("knots must be strictly increasing");
    }
  }
  for (const auto& k : knots_) {
    if (!std::isfinite(k.left) || !std::isfinite(k.right)) {
      throw InstanceError("knot values must be finite");
    }
  }
}

double PiecewiseLinear::operator()(double x) const {
  auto it = std::lower_bound(knots_.begin(), knots_.end(), x,
                             [](const Knot& k, double v) { return k.x < v; });
  if (it != knots_.end() && it->x == x) return std::max(it->left, it->right);
  if (it == knots_.begin()) return it->right;
  if (it == knots_.end()) return knots_.back().left;
  const Knot& a = *(it - 1);
  const Knot& b = *it;
  const double lam = (x - a.x) / (b.x - a.x);
  return a.right + lam * (b.left - a.right);
}

PiecewiseLinear concave_envelope(const PiecewiseLinear& f) {
  struct Pt {
    double x, y;
  };
  std::vector<Pt> hull;
  auto cross = [](const Pt& o, const Pt& a, const Pt& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  for (const auto& k : f.knots()) {
    Pt p{k.x, std::max(k.left, k.right)};
    // Upper hull, left to right: pop while the turn is not strictly
    // clockwise. Collinear middle points are dropped.
    while (hull.size() >= 2) {
      const Pt& o = hull[hull.size() - 2];
      const Pt& a = hull.back();
      const double c = cross(o, a, p);
      const double scale = (std::abs(p.x - o.x) + std::abs(p.y - o.y)) *
                           (std::abs(a.x - o.x) + std::abs(a.y - o.y));
      if (c >= -1e-12 * std::max(scale, 1e-300)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  std::vector<Knot> knots;
  for (const auto& p : hull) knots.push_back({p.x, p.y, p.y});
  return PiecewiseLinear(std::move(knots));
}

Concavification concavify_at(const PiecewiseLinear& f, double q0) {
  if (!(q0 >= 0.0 && q0 <= 1.0)) throw InstanceError("q0 must lie in [0,1]");
  const PiecewiseLinear env = concave_envelope(f);
  const auto& k = env.knots();
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i].x == q0) return {k[i].left, q0, q0};
  }
  auto it = std::lower_bound(k.begin(), k.end(), q0,
                             [](const Knot& a, double v) { return a.x < v; });
  const Knot& b = *it;
  const Knot& a = *(it - 1);
  return {env(q0), a.x, b.x};
}

}  // namespace persuasion
