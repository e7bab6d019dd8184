#pragma once

// Arbitrary receiver utilities: the binary-state scheme of Proposition 1,
// the ternary boundary scheme, and the two constructions behind the
// 1 - 2/sqrt(n) and 1 - 1/(4n^2) regret bounds.

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "persuasion/core.hpp"

namespace persuasion {

// ---- binary state space ----

/// Posteriors 0 and 2 mu_k with probability 1/2 each, on the coordinate of
/// the state k with mu_k <= 1/2.
FiniteScheme prop1_scheme(const Prior& mu);

struct AdversaryChoice {
  ReceiverUtility utility;
  double regret;
};

/// The two-case adversary from the lower-bound argument, run with either
/// state in the role of the first coordinate; returns the worse case for
/// the sender. The regret is evaluated exactly.
AdversaryChoice prop1_adversary(const FiniteScheme& s, const Prior& mu);

/// Largest regret over adoption regions {p_1 >= t} and {p_1 <= t} for t on
/// a grid of the given step.
AdversaryChoice threshold_adversary_sweep(const FiniteScheme& s,
                                          const Prior& mu, double step);

// ---- ternary uniform prior ----

/// Adoption region {p : normal . p >= 0}; the normal is a utility vector.
struct HalfPlaneAdoption {
  std::array<double, 3> normal;

  explicit HalfPlaneAdoption(std::array<double, 3> n);
  ReceiverUtility utility() const;
  bool contains(const Posterior& p) const;
};

/// Planar embedding: w1 = (0,0), w2 = (1,0), w3 = (1/2, sqrt(3)/2).
struct Point2 {
  double x, y;
};
Point2 to_plane(std::span<const double> p);
Posterior from_plane(Point2 q);
inline constexpr Point2 kCentroid{0.5, 0.28867513459481287};  // sqrt(3)/6

/// Boundary point hit by the ray from the centroid at angle theta.
Posterior boundary_posterior(double theta);
/// One draw from the boundary scheme: uniform angle, then the ray's exit
/// point.
Posterior ternary_sample(std::uint64_t seed);
std::vector<Posterior> ternary_sample(std::uint64_t seed, std::size_t count);

/// Exact boundary-scheme mass of A: the angle subtended at the centroid by
/// the boundary arc inside A, over 2 pi.
double ternary_mass_in(const HalfPlaneAdoption& a);
/// u*(A) - mass(A) under the uniform prior.
double ternary_regret(const HalfPlaneAdoption& a);

/// Half-plane on the side of the line through D = (d, sqrt(3) d) and
/// E = (e, 0), for the vertex rotated into the w1 slot by `rotation`.
/// `corner_side` picks the side holding that vertex (else the other side).
/// Returns false for the degenerate line d = e = 0.
bool ternary_line(double d, double e, int rotation, bool corner_side,
                  HalfPlaneAdoption& out);

struct TernarySweepResult {
  double sup_regret;
  double d, e;
  int rotation;
  bool corner_side;
  std::size_t lines;
};

struct TernaryLineRegret {
  double d, e;
  int rotation;
  bool corner_side;
  double regret;
};

/// Regret over a grid x grid family of (d, e) lines, each vertex
/// assignment and both sides of each line. `visit`, if set, sees every line.
TernarySweepResult ternary_sweep(
    int grid, const std::function<void(const TernaryLineRegret&)>& visit = {});

// ---- regret bounds for n states ----

/// The scheme with signals s_i and s_{i,j} (i in U, j not in U) where
/// U = {i : mu_i >= 1/(2n)}. With U = all states it is full revelation.
FiniteScheme thm2_upper_scheme(const Prior& mu);

/// Probability, under a uniformly random type assignment, that a posterior
/// whose delta-support has `supp_size` states holds the good state and no
/// bad state: supp_size/n when supp_size <= floor(sqrt n), the product
/// formula otherwise.
double thm2_lower_adoption_prob(int n, int supp_size);

/// States with posterior mass above delta.
std::size_t supp_delta_size(const Posterior& p, double delta);

/// Utility of the good/normal/bad instance. `types[i]` is 0 (good),
/// 1 (normal) or 2 (bad).
struct GoodNormalBadInstance {
  Prior mu;
  std::vector<int> types;
  double delta;

  /// delta < 0 selects min mu_i / (4n).
  GoodNormalBadInstance(Prior prior, std::vector<int> types,
                        double delta = -1.0);
  /// Good state first, then n - floor(sqrt n) - 1 normal, rest bad, in the
  /// order given by `perm`.
  static GoodNormalBadInstance from_permutation(
      const Prior& prior, const std::vector<std::size_t>& perm,
      double delta = -1.0);
  ReceiverUtility utility() const;
};

struct Thm2LowerCheck {
  double u_star_lb;          // 1 - floor(sqrt n)/n
  double scheme_utility_ub;  // max over atoms of the adoption probability
  double regret_lb;
  double bound;              // 1 - 2/sqrt(n)
  bool holds;
};

Thm2LowerCheck thm2_lower_bound_check(int n, const FiniteScheme& scheme,
                                      double delta);

}  // namespace persuasion
