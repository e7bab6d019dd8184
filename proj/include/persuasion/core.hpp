#pragma once

// Domain types for binary-action persuasion: priors, posteriors, receiver
// utilities, finite signaling schemes, and threshold schemes.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace persuasion {

/// Tolerance applied when validating user-supplied probability vectors.
inline constexpr double kInputTolerance = 1e-12;
/// Tolerance applied to Bayes-plausibility of computed schemes.
inline constexpr double kPlausibilityTolerance = 1e-9;

/// Thrown for malformed instances: bad dimensions, non-positive prior mass,
/// non-finite numbers, out-of-range parameters.
class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Common-knowledge prior over n states. Every entry is strictly positive.
class Prior {
 public:
  explicit Prior(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }
  /// Mass of the last state (the highest state under a monotone utility).
  double top() const { return probs_.back(); }

 private:
  std::vector<double> probs_;
};

/// Receiver's adoption utilities u_r(i,1); rejection is normalized to 0.
class ReceiverUtility {
 public:
  explicit ReceiverUtility(std::vector<double> adopt_utils);

  std::size_t size() const { return adopt_.size(); }
  double operator[](std::size_t i) const { return adopt_[i]; }
  std::span<const double> values() const { return adopt_; }

 private:
  std::vector<double> adopt_;
};

/// A belief over states. Entries are nonnegative and sum to one.
class Posterior {
 public:
  explicit Posterior(std::vector<double> probs);
  /// Normalizes a nonnegative mass vector with positive total.
  static Posterior from_masses(std::span<const double> masses);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

  friend bool operator==(const Posterior&, const Posterior&) = default;

 private:
  std::vector<double> probs_;
};

struct SchemeAtom {
  Posterior posterior;
  double weight;
};

/// Signaling scheme represented as a distribution over posteriors.
/// Weights are positive and sum to one; Bayes-plausibility against a prior
/// is a separate check because the scheme does not own the prior.
class FiniteScheme {
 public:
  explicit FiniteScheme(std::vector<SchemeAtom> atoms);

  std::span<const SchemeAtom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  std::size_t dimension() const { return atoms_.front().posterior.size(); }
  /// Weighted mean of the posteriors.
  std::vector<double> mean() const;

 private:
  std::vector<SchemeAtom> atoms_;
};

/// Ordering i_1..i_n of the states from lowest to highest, with the prior
/// laid out on [0,1] so that state i_m owns the segment
/// (cum[m-1], cum[m]].
class StateOrdering {
 public:
  StateOrdering(std::vector<std::size_t> order, const Prior& mu);

  static StateOrdering identity(const Prior& mu);
  /// Ascending in adoption utility. Among equal utilities the higher index
  /// comes first, so that pooling from the top takes lower indices first.
  static StateOrdering ascending_utility(const Prior& mu,
                                         const ReceiverUtility& u);

  std::size_t size() const { return order_.size(); }
  std::span<const std::size_t> order() const { return order_; }
  std::span<const double> cumulative() const { return cum_; }
  /// Position j (0-based) with t in (cum[j-1], cum[j]]; t = 0 maps to 0.
  std::size_t segment_of(double t) const;

 private:
  std::vector<std::size_t> order_;
  std::vector<double> cum_;
};

/// Binary scheme revealing whether the real-valued state is below t.
struct ThresholdScheme {
  double t;
  StateOrdering ordering;
};

double expected_adopt_utility(std::span<const double> posterior,
                              const ReceiverUtility& u);

/// Receiver adopts iff the expected adoption utility is >= -tie_eps.
/// tie_eps = 0 gives the exact Sender-favorable tie rule.
bool adopts(const Posterior& p, const ReceiverUtility& u, double tie_eps = 0.0);

bool is_bayes_plausible(const FiniteScheme& s, const Prior& mu,
                        double tol = kPlausibilityTolerance);

/// Finite form of a threshold scheme: atoms are (low, high) for t in (0,1),
/// the single no-information atom for t = 0, and a single low atom at the
/// prior for t = 1.
FiniteScheme threshold_to_finite(const ThresholdScheme& ts, const Prior& mu);

/// Probability that the posterior drawn from s lies in the adoption region.
double sender_utility(const FiniteScheme& s, const ReceiverUtility& u,
                      double tie_eps = 0.0);

FiniteScheme no_information(const Prior& mu);
FiniteScheme full_revelation(const Prior& mu);

/// Builds a scheme from per-signal mass vectors: signal k sends mass
/// masses[k][i] out of state i. Empty signals are dropped.
FiniteScheme scheme_from_signal_masses(
    const std::vector<std::vector<double>>& masses);

}  // namespace persuasion
