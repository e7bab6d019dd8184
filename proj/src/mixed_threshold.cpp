#include "persuasion/mixed_threshold.hpp"

#include <algorithm>
#include <cmath>

#include "persuasion/core.hpp"

namespace persuasion {

double DensityPiece::density(double z) const {
  if (z < lo || z > hi) return 0.0;
  const double w = 1.0 - z;
  return form == DensityForm::kInverse ? coeff / w : coeff / (w * w);
}

double DensityPiece::mass_up_to(double z) const {
  if (z <= lo) return 0.0;
  const double top = std::min(z, hi);
  if (form == DensityForm::kInverse) {
    return coeff * std::log((1.0 - lo) / (1.0 - top));
  }
  return coeff * (1.0 / (1.0 - top) - 1.0 / (1.0 - lo));
}

double DensityPiece::quantile(double m) const {
  if (m <= 0.0) return lo;
  double z = form == DensityForm::kInverse
                 ? 1.0 - (1.0 - lo) * std::exp(-m / coeff)
                 : 1.0 - 1.0 / (m / coeff + 1.0 / (1.0 - lo));
  return std::clamp(z, lo, hi);
}

LogPowerSum DensityPiece::as_log_power() const {
  return LogPowerSum::monomial(coeff,
                               form == DensityForm::kInverse ? -1 : -2);
}

MixedThreshold::MixedThreshold(std::vector<ThresholdAtom> atoms,
                               std::vector<DensityPiece> pieces)
    : atoms_(std::move(atoms)), pieces_(std::move(pieces)) {
  for (const auto& a : atoms_) {
    if (!(a.location >= 0.0 && a.location <= 1.0) || !(a.weight > 0.0)) {
      throw InstanceError("atom must sit in [0,1] with positive weight");
    }
  }
  for (const auto& p : pieces_) {
    if (!(p.lo >= 0.0 && p.lo < p.hi && p.hi < 1.0) || !(p.coeff > 0.0)) {
      throw InstanceError("density piece must satisfy 0 <= lo < hi < 1");
    }
  }
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    segments_.push_back({true, i, atoms_[i].location, 0.0});
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    segments_.push_back({false, i, pieces_[i].lo, 0.0});
  }
  std::stable_sort(segments_.begin(), segments_.end(),
                   [](const Segment& a, const Segment& b) {
                     if (a.start != b.start) return a.start < b.start;
                     return a.is_atom && !b.is_atom;
                   });
  double cum = 0.0;
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    auto& s = segments_[k];
    if (!s.is_atom) {
      const auto& p = pieces_[s.index];
      if (k + 1 < segments_.size() && segments_[k + 1].start < p.hi) {
        throw InstanceError("density pieces and atoms must not overlap");
      }
    }
    s.cum_before = cum;
    cum += s.is_atom ? atoms_[s.index].weight : pieces_[s.index].mass();
  }
  if (std::abs(cum - 1.0) > kPlausibilityTolerance) {
    throw InstanceError("mixed threshold must have total mass 1");
  }
}

MixedThreshold MixedThreshold::point(double location) {
  return MixedThreshold({{location, 1.0}}, {});
}

double MixedThreshold::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.weight;
  for (const auto& p : pieces_) m += p.mass();
  return m;
}

double MixedThreshold::cdf(double z) const {
  double c = 0.0;
  for (const auto& a : atoms_) {
    if (a.location <= z) c += a.weight;
  }
  for (const auto& p : pieces_) c += p.mass_up_to(z);
  return std::min(c, 1.0);
}

double MixedThreshold::cdf_left(double z) const {
  double c = 0.0;
  for (const auto& a : atoms_) {
    if (a.location < z) c += a.weight;
  }
  for (const auto& p : pieces_) c += p.mass_up_to(z);
  return std::min(c, 1.0);
}

double MixedThreshold::quantile(double u) const {
  for (const auto& s : segments_) {
    const double mass =
        s.is_atom ? atoms_[s.index].weight : pieces_[s.index].mass();
    if (u < s.cum_before + mass || &s == &segments_.back()) {
      if (s.is_atom) return atoms_[s.index].location;
      return pieces_[s.index].quantile(u - s.cum_before);
    }
  }
  return support_max();
}

double MixedThreshold::mean() const {
  // E[Z] = 1 - E[w]
  return 1.0 - integrate(LogPowerSum::monomial(1.0, 1), 0.0, 1.0);
}

double MixedThreshold::support_min() const {
  return segments_.front().start;
}

double MixedThreshold::support_max() const {
  double m = 0.0;
  for (const auto& a : atoms_) m = std::max(m, a.location);
  for (const auto& p : pieces_) m = std::max(m, p.hi);
  return m;
}

double MixedThreshold::integrate(const LogPowerSum& f, double a, double b,
                                 double atom_slack) const {
  if (b < a) return 0.0;
  double total = 0.0;
  for (const auto& atom : atoms_) {
    if (atom.location >= a - atom_slack && atom.location <= b + atom_slack) {
      total += atom.weight * f(atom.location);
    }
  }
  for (const auto& p : pieces_) {
    const double lo = std::max(a, p.lo);
    const double hi = std::min(b, p.hi);
    if (lo < hi) total += (f * p.as_log_power()).integrate(lo, hi);
  }
  return total;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double sample_mixed(const MixedThreshold& m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return m.quantile(uniform01(rng));
}

std::vector<double> sample_mixed(const MixedThreshold& m, std::uint64_t seed,
                                 std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<double> out(count);
  for (auto& x : out) x = m.quantile(uniform01(rng));
  return out;
}

}  // namespace persuasion
