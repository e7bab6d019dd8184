#include "persuasion/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace persuasion {
namespace {

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw InstanceError(std::string(what) + " entries must be finite");
    }
  }
}

void require_distribution(std::span<const double> v, const char* what,
                          bool strictly_positive) {
  if (v.empty()) throw InstanceError(std::string(what) + " must be non-empty");
  require_finite(v, what);
  for (double x : v) {
    if (strictly_positive ? !(x > 0.0) : x < 0.0) {
      throw InstanceError(std::string(what) +
                          (strictly_positive ? " entry must be positive"
                                             : " entry must be nonnegative"));
    }
  }
  double total = std::accumulate(v.begin(), v.end(), 0.0);
  if (std::abs(total - 1.0) > kInputTolerance) {
    throw InstanceError(std::string(what) + " entries must sum to 1");
  }
}

}  // namespace

Prior::Prior(std::vector<double> probs) : probs_(std::move(probs)) {
  require_distribution(probs_, "prior", true);
}

ReceiverUtility::ReceiverUtility(std::vector<double> adopt_utils)
    : adopt_(std::move(adopt_utils)) {
  if (adopt_.empty()) throw InstanceError("utility must be non-empty");
  require_finite(adopt_, "utility");
}

Posterior::Posterior(std::vector<double> probs) : probs_(std::move(probs)) {
  require_distribution(probs_, "posterior", false);
}

Posterior Posterior::from_masses(std::span<const double> masses) {
  double total = 0.0;
  for (double m : masses) {
    if (m < 0.0 || !std::isfinite(m)) {
      throw InstanceError("signal masses must be finite and nonnegative");
    }
    total += m;
  }
  if (!(total > 0.0)) throw InstanceError("signal has zero total mass");
  std::vector<double> p(masses.begin(), masses.end());
  for (double& x : p) x /= total;
  // Renormalize once more so the sum lands within the input tolerance.
  double again = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= again;
  return Posterior(std::move(p));
}

FiniteScheme::FiniteScheme(std::vector<SchemeAtom> atoms)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw InstanceError("scheme needs at least one atom");
  double total = 0.0;
  for (const auto& a : atoms_) {
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
      throw InstanceError("scheme weights must be positive");
    }
    if (a.posterior.size() != atoms_.front().posterior.size()) {
      throw InstanceError("scheme posteriors differ in dimension");
    }
    total += a.weight;
  }
  if (std::abs(total - 1.0) > kPlausibilityTolerance) {
    throw InstanceError("scheme weights must sum to 1");
  }
}

std::vector<double> FiniteScheme::mean() const {
  std::vector<double> m(dimension(), 0.0);
  for (const auto& a : atoms_) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      m[i] += a.weight * a.posterior[i];
    }
  }
  return m;
}

StateOrdering::StateOrdering(std::vector<std::size_t> order, const Prior& mu)
    : order_(std::move(order)) {
  if (order_.size() != mu.size()) {
    throw InstanceError("ordering size does not match prior");
  }
  std::vector<bool> seen(order_.size(), false);
  for (std::size_t i : order_) {
    if (i >= order_.size() || seen[i]) {
      throw InstanceError("ordering must be a permutation of the states");
    }
    seen[i] = true;
  }
  cum_.resize(order_.size());
  double acc = 0.0;
  for (std::size_t m = 0; m < order_.size(); ++m) {
    acc += mu[order_[m]];
    cum_[m] = acc;
  }
  cum_.back() = 1.0;
}

StateOrdering StateOrdering::identity(const Prior& mu) {
  std::vector<std::size_t> order(mu.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return StateOrdering(std::move(order), mu);
}

StateOrdering StateOrdering::ascending_utility(const Prior& mu,
                                               const ReceiverUtility& u) {
  if (u.size() != mu.size()) {
    throw InstanceError("utility and prior differ in dimension");
  }
  // Descending stable sort, then reversed.
  std::vector<std::size_t> order(mu.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return u[a] > u[b]; });
  std::reverse(order.begin(), order.end());
  return StateOrdering(std::move(order), mu);
}

std::size_t StateOrdering::segment_of(double t) const {
  auto it = std::lower_bound(cum_.begin(), cum_.end(), t);
  if (it == cum_.end()) return cum_.size() - 1;
  return static_cast<std::size_t>(it - cum_.begin());
}

double expected_adopt_utility(std::span<const double> posterior,
                              const ReceiverUtility& u) {
  if (posterior.size() != u.size()) {
    throw InstanceError("posterior and utility differ in dimension");
  }
  double e = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) e += posterior[i] * u[i];
  return e;
}

bool adopts(const Posterior& p, const ReceiverUtility& u, double tie_eps) {
  return expected_adopt_utility(p.probs(), u) >= -tie_eps;
}

bool is_bayes_plausible(const FiniteScheme& s, const Prior& mu, double tol) {
  if (s.dimension() != mu.size()) {
    throw InstanceError("scheme and prior differ in dimension");
  }
  auto m = s.mean();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (std::abs(m[i] - mu[i]) > tol) return false;
  }
  return true;
}

FiniteScheme threshold_to_finite(const ThresholdScheme& ts, const Prior& mu) {
  if (mu.size() == 0) throw InstanceError("prior must be non-empty");
  if (!(ts.t >= 0.0 && ts.t <= 1.0)) {
    throw InstanceError("threshold must lie in [0,1]");
  }
  if (ts.ordering.size() != mu.size()) {
    throw InstanceError("ordering size does not match prior");
  }
  if (ts.t == 0.0 || ts.t == 1.0) return no_information(mu);

  const auto order = ts.ordering.order();
  const auto cum = ts.ordering.cumulative();
  const std::size_t j = ts.ordering.segment_of(ts.t);
  std::vector<double> high(mu.size(), 0.0);
  std::vector<double> low(mu.size(), 0.0);
  for (std::size_t m = 0; m < order.size(); ++m) {
    const std::size_t state = order[m];
    if (m < j) {
      low[state] = mu[state];
    } else if (m > j) {
      high[state] = mu[state];
    } else {
      double up = std::clamp(cum[m] - ts.t, 0.0, mu[state]);
      high[state] = up;
      low[state] = mu[state] - up;
    }
  }
  return scheme_from_signal_masses({low, high});
}

double sender_utility(const FiniteScheme& s, const ReceiverUtility& u,
                      double tie_eps) {
  double total = 0.0;
  for (const auto& a : s.atoms()) {
    if (adopts(a.posterior, u, tie_eps)) total += a.weight;
  }
  return total;
}

FiniteScheme no_information(const Prior& mu) {
  return FiniteScheme({SchemeAtom{
      Posterior(std::vector<double>(mu.probs().begin(), mu.probs().end())),
      1.0}});
}

FiniteScheme full_revelation(const Prior& mu) {
  std::vector<SchemeAtom> atoms;
  atoms.reserve(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    std::vector<double> p(mu.size(), 0.0);
    p[i] = 1.0;
    atoms.push_back({Posterior(std::move(p)), mu[i]});
  }
  return FiniteScheme(std::move(atoms));
}

FiniteScheme scheme_from_signal_masses(
    const std::vector<std::vector<double>>& masses) {
  std::vector<SchemeAtom> atoms;
  for (const auto& m : masses) {
    double w = std::accumulate(m.begin(), m.end(), 0.0);
    if (w <= 0.0) continue;
    atoms.push_back({Posterior::from_masses(m), w});
  }
  // Weights come from a partition of the prior; absorb rounding so the
  // scheme constructor sees an exact unit total.
  double total = 0.0;
  for (const auto& a : atoms) total += a.weight;
  for (auto& a : atoms) a.weight /= total;
  return FiniteScheme(std::move(atoms));
}

}  // namespace persuasion
