#pragma once

// Distributions over thresholds in [0,1): finitely many atoms plus density
// pieces of the forms c/(1-z) and c/(1-z)^2. Both forms have elementary
// CDFs and quantiles, so sampling is an exact inverse-CDF transform.

#include <cstdint>
#include <random>
#include <vector>

#include "persuasion/closed_form.hpp"
#include "persuasion/core.hpp"

namespace persuasion {

enum class DensityForm {
  kInverse,        // c / (1 - z)
  kInverseSquare,  // c / (1 - z)^2
};

struct ThresholdAtom {
  double location;
  double weight;
};

struct DensityPiece {
  double lo;
  double hi;
  DensityForm form;
  double coeff;

  double density(double z) const;
  /// Mass on [lo, min(z, hi)].
  double mass_up_to(double z) const;
  double mass() const { return mass_up_to(hi); }
  /// Point z in [lo, hi] with mass_up_to(z) = m.
  double quantile(double m) const;
  /// Density as a function of w = 1 - z.
  LogPowerSum as_log_power() const;
};

class MixedThreshold {
 public:
  MixedThreshold(std::vector<ThresholdAtom> atoms,
                 std::vector<DensityPiece> pieces);

  static MixedThreshold point(double location);

  const std::vector<ThresholdAtom>& atoms() const { return atoms_; }
  const std::vector<DensityPiece>& pieces() const { return pieces_; }

  /// P(Z <= z), right-continuous.
  double cdf(double z) const;
  /// P(Z < z).
  double cdf_left(double z) const;
  /// Smallest z with cdf(z) >= u, for u in [0,1].
  double quantile(double u) const;
  double mean() const;
  double total_mass() const;
  /// Smallest and largest points of the support.
  double support_min() const;
  double support_max() const;

  /// E[f(Z) 1{a <= Z <= b}] for f given in w = 1 - z. Atoms within
  /// `atom_slack` of a closed endpoint count as inside.
  double integrate(const LogPowerSum& f, double a, double b,
                   double atom_slack = 0.0) const;

 private:
  // Atoms and pieces in support order; atoms precede a piece that starts at
  // the same location.
  struct Segment {
    bool is_atom;
    std::size_t index;
    double start;
    double cum_before;
  };
  std::vector<ThresholdAtom> atoms_;
  std::vector<DensityPiece> pieces_;
  std::vector<Segment> segments_;
};

/// Uniform double in [0,1) from the top 53 bits; identical on every platform.
double uniform01(std::mt19937_64& rng);

/// One inverse-CDF draw; deterministic in the seed.
double sample_mixed(const MixedThreshold& m, std::uint64_t seed);
std::vector<double> sample_mixed(const MixedThreshold& m, std::uint64_t seed,
                                 std::size_t count);

}  // namespace persuasion
