#include "persuasion/arbitrary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "persuasion/mixed_threshold.hpp"
#include "persuasion/standard.hpp"

namespace persuasion {

namespace {

constexpr double kTieEps = 1e-12;
constexpr double kSqrt3 = 1.7320508075688772;
constexpr std::array<Point2, 3> kVertices{
    Point2{0.0, 0.0}, Point2{1.0, 0.0}, Point2{0.5, kSqrt3 / 2}};

void require_binary(const Prior& mu) {
  if (mu.size() != 2) throw InstanceError("expected a two-state prior");
}

Posterior binary_posterior(std::size_t k, double q) {
  std::vector<double> p(2);
  p[k] = q;
  p[1 - k] = 1.0 - q;
  return Posterior(std::move(p));
}

double regret(const FiniteScheme& s, const Prior& mu, const ReceiverUtility& u) {
  return optimal_knapsack(mu, u).optimal_utility - sender_utility(s, u, kTieEps);
}

// Utility adopting exactly on {p_k >= t} (upper) or {p_k <= t}.
ReceiverUtility binary_region(std::size_t k, double t, bool upper) {
  std::vector<double> u(2);
  if (upper) {
    u[k] = 1.0 - t;
    u[1 - k] = -t;
  } else {
    u[k] = -(1.0 - t);
    u[1 - k] = t;
  }
  return ReceiverUtility(std::move(u));
}

int isqrt(int n) {
  int r = static_cast<int>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
Point2 sub(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
Point2 lerp(Point2 a, Point2 b, double s) {
  return {a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)};
}

}  // namespace

FiniteScheme prop1_scheme(const Prior& mu) {
  require_binary(mu);
  const std::size_t k = mu[0] <= 0.5 ? 0 : 1;
  const double m = mu[k];
  return FiniteScheme({{binary_posterior(k, 0.0), 0.5},
                       {binary_posterior(k, 2.0 * m), 0.5}});
}

AdversaryChoice prop1_adversary(const FiniteScheme& s, const Prior& mu) {
  require_binary(mu);
  if (s.dimension() != 2) throw InstanceError("expected a two-state scheme");
  AdversaryChoice best{ReceiverUtility({0.0, 0.0}), -1.0};
  for (std::size_t k : {0, 1}) {
    const double m = mu[k];
    double low = 0.0, high = 0.0;  // masses on [0, m] and (m, 1]
    for (const auto& a : s.atoms()) {
      (a.posterior[k] <= m + kTieEps ? low : high) += a.weight;
    }
    ReceiverUtility u({0.0, 0.0});
    if (low <= 0.5) {
      u = binary_region(k, m, false);
    } else {
      const double eps = 0.5 - high;
      const double t = m / (1.0 - eps);
      if (t > 1.0) continue;
      u = binary_region(k, t, true);
    }
    const double r = regret(s, mu, u);
    if (r > best.regret) best = {u, r};
  }
  return best;
}

AdversaryChoice threshold_adversary_sweep(const FiniteScheme& s,
                                          const Prior& mu, double step) {
  require_binary(mu);
  if (!(step > 0.0)) throw InstanceError("step must be positive");
  AdversaryChoice best{ReceiverUtility({0.0, 0.0}), -1.0};
  const auto count = static_cast<long>(std::floor(1.0 / step + 1e-9));
  for (long i = 0; i <= count; ++i) {
    const double t = std::min(1.0, i * step);
    for (bool upper : {true, false}) {
      const ReceiverUtility u = binary_region(0, t, upper);
      const double r = regret(s, mu, u);
      if (r > best.regret) best = {u, r};
    }
  }
  return best;
}

HalfPlaneAdoption::HalfPlaneAdoption(std::array<double, 3> n) : normal(n) {
  for (double v : n) {
    if (!std::isfinite(v)) throw InstanceError("normal must be finite");
  }
  if (n[0] == 0.0 && n[1] == 0.0 && n[2] == 0.0) {
    throw InstanceError("normal must not vanish");
  }
}

ReceiverUtility HalfPlaneAdoption::utility() const {
  return ReceiverUtility({normal[0], normal[1], normal[2]});
}

bool HalfPlaneAdoption::contains(const Posterior& p) const {
  return adopts(p, utility());
}

Point2 to_plane(std::span<const double> p) {
  if (p.size() != 3) throw InstanceError("expected a ternary posterior");
  return {p[1] + 0.5 * p[2], p[2] * kSqrt3 / 2};
}

Posterior from_plane(Point2 q) {
  const double p3 = q.y * 2 / kSqrt3;
  const double p2 = q.x - 0.5 * p3;
  std::array<double, 3> p{1.0 - p2 - p3, p2, p3};
  double total = 0.0;
  for (double& v : p) total += (v = std::max(v, 0.0));
  return Posterior({p[0] / total, p[1] / total, p[2] / total});
}

Posterior boundary_posterior(double theta) {
  const Point2 dir{std::cos(theta), std::sin(theta)};
  double best_r = std::numeric_limits<double>::infinity();
  int edge_k = 0;
  double edge_s = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Point2 a = kVertices[k], b = kVertices[(k + 1) % 3];
    const Point2 edge = sub(b, a);
    const double den = cross(dir, edge);
    if (den == 0.0) continue;
    const Point2 ac = sub(a, kCentroid);
    const double r = cross(ac, edge) / den;
    const double s = cross(ac, dir) / den;
    if (r > 0.0 && s >= -1e-12 && s <= 1.0 + 1e-12 && r < best_r) {
      best_r = r;
      edge_k = k;
      edge_s = std::clamp(s, 0.0, 1.0);
    }
  }
  // Barycentric coordinates straight from the edge parameter, so the
  // opposite coordinate is exactly zero.
  std::vector<double> p(3, 0.0);
  p[edge_k] = 1.0 - edge_s;
  p[(edge_k + 1) % 3] = edge_s;
  return Posterior(std::move(p));
}

Posterior ternary_sample(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return boundary_posterior(2.0 * std::numbers::pi * uniform01(rng));
}

std::vector<Posterior> ternary_sample(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<Posterior> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(boundary_posterior(2.0 * std::numbers::pi * uniform01(rng)));
  }
  return out;
}

double ternary_mass_in(const HalfPlaneAdoption& a) {
  const auto& u = a.normal;
  if (u[0] >= 0.0 && u[1] >= 0.0 && u[2] >= 0.0) return 1.0;
  double angle = 0.0;
  for (int k = 0; k < 3; ++k) {
    const int j = (k + 1) % 3;
    // Along the edge from vertex k to vertex j the functional is
    // (1-s) u_k + s u_j.
    double lo, hi;
    if (u[k] >= 0.0 && u[j] >= 0.0) {
      lo = 0.0;
      hi = 1.0;
    } else if (u[k] < 0.0 && u[j] < 0.0) {
      continue;
    } else {
      const double s = u[k] / (u[k] - u[j]);
      if (u[k] >= 0.0) {
        lo = 0.0;
        hi = s;
      } else {
        lo = s;
        hi = 1.0;
      }
    }
    const Point2 p = sub(lerp(kVertices[k], kVertices[j], lo), kCentroid);
    const Point2 q = sub(lerp(kVertices[k], kVertices[j], hi), kCentroid);
    angle += std::atan2(std::abs(cross(p, q)), dot(p, q));
  }
  return angle / (2.0 * std::numbers::pi);
}

double ternary_regret(const HalfPlaneAdoption& a) {
  static const Prior uniform({1.0 / 3, 1.0 / 3, 1.0 / 3});
  return optimal_knapsack(uniform, a.utility()).optimal_utility -
         ternary_mass_in(a);
}

bool ternary_line(double d, double e, int rotation, bool corner_side,
                  HalfPlaneAdoption& out) {
  const Point2 dpt{d, kSqrt3 * d}, ept{e, 0.0};
  const Point2 v = sub(ept, dpt);
  if (v.x == 0.0 && v.y == 0.0) return false;
  Point2 n{-v.y, v.x};
  auto f = [&](Point2 p) { return dot(n, sub(p, dpt)); };
  // Orient toward w1; if w1 is on the line, toward the side away from the
  // centroid.
  const double at_corner = f(kVertices[0]);
  if (at_corner < 0.0 || (at_corner == 0.0 && f(kCentroid) > 0.0)) {
    n = {-n.x, -n.y};
  }
  if (!corner_side) n = {-n.x, -n.y};
  std::array<double, 3> u{};
  for (int k = 0; k < 3; ++k) u[(k + rotation) % 3] = f(kVertices[k]);
  out = HalfPlaneAdoption(u);
  return true;
}

TernarySweepResult ternary_sweep(
    int grid, const std::function<void(const TernaryLineRegret&)>& visit) {
  if (grid < 2) throw InstanceError("grid must be at least 2");
  TernarySweepResult best{-1.0, 0.0, 0.0, 0, true, 0};
  for (int i = 0; i < grid; ++i) {
    const double d = 0.5 * i / (grid - 1);
    for (int j = 0; j < grid; ++j) {
      const double e = static_cast<double>(j) / (grid - 1);
      for (int rot = 0; rot < 3; ++rot) {
        for (bool corner : {true, false}) {
          HalfPlaneAdoption a({1.0, 1.0, 1.0});
          if (!ternary_line(d, e, rot, corner, a)) continue;
          ++best.lines;
          const double r = ternary_regret(a);
          if (visit) visit({d, e, rot, corner, r});
          if (r > best.sup_regret) {
            best.sup_regret = r;
            best.d = d;
            best.e = e;
            best.rotation = rot;
            best.corner_side = corner;
          }
        }
      }
    }
  }
  return best;
}

FiniteScheme thm2_upper_scheme(const Prior& mu) {
  const std::size_t n = mu.size();
  std::vector<std::size_t> in_u, out_u;
  for (std::size_t i = 0; i < n; ++i) {
    (mu[i] >= 1.0 / (2.0 * n) ? in_u : out_u).push_back(i);
  }
  std::vector<std::vector<double>> signals;
  if (out_u.empty()) return full_revelation(mu);
  const double nd = static_cast<double>(n);
  for (std::size_t i : in_u) {
    std::vector<double> m(n, 0.0);
    m[i] = (1.0 - 1.0 / (2.0 * nd)) * mu[i];
    signals.push_back(std::move(m));
  }
  for (std::size_t j : out_u) {
    std::vector<double> m(n, 0.0);
    m[j] = mu[j] / 2.0;
    signals.push_back(std::move(m));
  }
  const double free_states = static_cast<double>(out_u.size());
  const double kept = static_cast<double>(in_u.size());
  for (std::size_t i : in_u) {
    for (std::size_t j : out_u) {
      std::vector<double> m(n, 0.0);
      m[i] = mu[i] / (2.0 * nd * free_states);
      m[j] = mu[j] / (2.0 * kept);
      signals.push_back(std::move(m));
    }
  }
  return scheme_from_signal_masses(signals);
}

double thm2_lower_adoption_prob(int n, int supp_size) {
  if (n < 1 || supp_size < 1 || supp_size > n) {
    throw InstanceError("need 1 <= supp_size <= n");
  }
  const int bad = isqrt(n);
  if (supp_size <= bad) return static_cast<double>(supp_size) / n;
  double p = 1.0;
  for (int r = 0; r < supp_size; ++r) {
    p *= 1.0 - static_cast<double>(bad) / (n - r);
    if (p <= 0.0) return 0.0;
  }
  return p * std::min(static_cast<double>(supp_size) / (n - bad), 1.0);
}

std::size_t supp_delta_size(const Posterior& p, double delta) {
  std::size_t c = 0;
  for (double v : p.probs()) c += v > delta;
  return c;
}

GoodNormalBadInstance::GoodNormalBadInstance(Prior prior, std::vector<int> t,
                                             double d)
    : mu(std::move(prior)), types(std::move(t)), delta(d) {
  const std::size_t n = mu.size();
  if (types.size() != n) throw InstanceError("one type per state required");
  const double min_mu = *std::min_element(mu.probs().begin(), mu.probs().end());
  if (delta < 0.0) delta = min_mu / (4.0 * n);
  if (!(delta > 0.0 && delta < min_mu / (2.0 * n))) {
    throw InstanceError("delta must lie in (0, min mu / (2n))");
  }
  if (std::count(types.begin(), types.end(), 0) != 1) {
    throw InstanceError("exactly one good state required");
  }
  for (int v : types) {
    if (v < 0 || v > 2) throw InstanceError("types must be 0, 1 or 2");
  }
}

GoodNormalBadInstance GoodNormalBadInstance::from_permutation(
    const Prior& prior, const std::vector<std::size_t>& perm, double delta) {
  const int n = static_cast<int>(prior.size());
  if (perm.size() != prior.size()) throw InstanceError("bad permutation size");
  const int normal = n - isqrt(n) - 1;
  std::vector<int> types(n, 2);
  for (int r = 0; r < n; ++r) {
    types[perm[r]] = r == 0 ? 0 : (r <= normal ? 1 : 2);
  }
  return GoodNormalBadInstance(prior, std::move(types), delta);
}

ReceiverUtility GoodNormalBadInstance::utility() const {
  double good = 0.0, normal = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (types[i] == 0) good = mu[i];
    if (types[i] == 1) normal += mu[i];
  }
  std::vector<double> u(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    switch (types[i]) {
      case 0: u[i] = 1.0 / good; break;
      case 1: u[i] = -1.0 / normal; break;
      default: u[i] = -1.0 / (delta * good); break;
    }
  }
  return ReceiverUtility(std::move(u));
}

Thm2LowerCheck thm2_lower_bound_check(int n, const FiniteScheme& scheme,
                                      double delta) {
  if (n < 16) throw InstanceError("the lower-bound construction needs n >= 16");
  if (scheme.dimension() != static_cast<std::size_t>(n)) {
    throw InstanceError("scheme dimension differs from n");
  }
  Thm2LowerCheck c{};
  c.u_star_lb = 1.0 - static_cast<double>(isqrt(n)) / n;
  for (const auto& a : scheme.atoms()) {
    const auto size = static_cast<int>(supp_delta_size(a.posterior, delta));
    c.scheme_utility_ub =
        std::max(c.scheme_utility_ub, thm2_lower_adoption_prob(n, size));
  }
  c.regret_lb = c.u_star_lb - c.scheme_utility_ub;
  c.bound = 1.0 - 2.0 / std::sqrt(static_cast<double>(n));
  c.holds = c.regret_lb >= c.bound - 1e-12;
  return c;
}

}  // namespace persuasion
