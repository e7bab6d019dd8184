#include "persuasion/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "persuasion/arbitrary.hpp"
#include "persuasion/matrix_game.hpp"
#include "persuasion/multidim.hpp"
#include "persuasion/standard.hpp"

namespace persuasion {

namespace {

std::string fmt(const char* prefix, double v) {
  std::ostringstream os;
  os.precision(6);
  os << prefix << v;
  return os.str();
}

CheckRow at_most(std::string suite, std::string name, double measured,
                 double bound, double tol) {
  return {std::move(suite), std::move(name), measured, bound, tol,
          measured <= bound + tol};
}

CheckRow at_least(std::string suite, std::string name, double measured,
                  double bound, double tol) {
  return {std::move(suite), std::move(name), measured, bound, tol,
          measured >= bound - tol};
}

std::vector<CheckRow> lemma_suite(KernelId kernel, const VerifyOptions& o) {
  const std::string suite = kernel == KernelId::kRegret ? "lemma4" : "lemma5";
  std::vector<CheckRow> rows;
  for (double alpha : o.alphas) {
    const LemmaReport r = verify_lemma(kernel, alpha, o.game_size, o.game_eps);
    const std::string tag = fmt("alpha=", alpha);
    rows.push_back(at_most(suite, tag + " duality gap", r.game.duality_gap,
                           o.game_eps, 0.0));
    CheckRow v{suite, tag + " value", r.value, r.analytic, 5e-3,
               r.abs_error <= 5e-3};
    rows.push_back(v);
  }
  return rows;
}

std::vector<CheckRow> prop1_suite(const VerifyOptions& o) {
  std::mt19937_64 rng(o.seed);
  double proof_min = 1.0, sweep_max = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const double p = 0.01 + 0.98 * uniform01(rng);
    const Prior mu({p, 1.0 - p});
    const FiniteScheme s = prop1_scheme(mu);
    proof_min = std::min(proof_min, prop1_adversary(s, mu).regret);
    sweep_max = std::max(sweep_max, threshold_adversary_sweep(s, mu, 1e-4).regret);
  }
  return {at_least("prop1", "min proof-adversary regret", proof_min, 0.5, 1e-3),
          at_most("prop1", "max sweep regret", sweep_max, 0.5, 1e-6),
          at_least("prop1", "min sweep regret", sweep_max, 0.5, 1e-3)};
}

std::vector<CheckRow> prop2_suite(const VerifyOptions& o) {
  const TernarySweepResult r = ternary_sweep(o.sweep_grid);
  std::vector<CheckRow> rows;
  rows.push_back({"prop2", "sup regret over line grid", r.sup_regret, 0.5, 1e-2,
                  r.sup_regret >= 0.49 && r.sup_regret <= 0.501});
  std::mt19937_64 rng(o.seed);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double theta = 2.0 * std::numbers::pi * uniform01(rng);
    const Point2 dir{std::cos(theta), std::sin(theta)};
    // Normal of the line through the centroid, written as a utility vector.
    std::array<double, 3> u{};
    for (int k = 0; k < 3; ++k) {
      std::array<double, 3> e{};
      e[k] = 1.0;
      const Point2 v = to_plane(e);
      u[k] = (v.x - kCentroid.x) * dir.x + (v.y - kCentroid.y) * dir.y;
    }
    worst = std::max(worst,
                     std::abs(ternary_mass_in(HalfPlaneAdoption(u)) - 0.5));
  }
  rows.push_back(at_most("prop2", "centroid half-plane mass deviation", worst,
                         0.0, 1e-9));
  return rows;
}

std::vector<double> random_prior(std::mt19937_64& rng, int n) {
  std::vector<double> p(n);
  double s = 0.0;
  // Cubing the draws makes some entries fall below 1/(2n).
  for (auto& x : p) s += (x = std::pow(uniform01(rng), 3.0) + 1e-3);
  for (auto& x : p) x /= s;
  return p;
}

std::vector<CheckRow> thm2_suite(const VerifyOptions& o) {
  std::vector<CheckRow> rows;
  std::mt19937_64 rng(o.seed);
  for (int n = 2; n <= 10; ++n) {
    const double bound = 1.0 - 1.0 / (4.0 * n * n);
    double worst = 0.0;
    int count = 0;
    for (int prior = 0; prior < 10; ++prior) {
      const Prior mu(prior == 0 ? std::vector<double>(n, 1.0 / n)
                                : random_prior(rng, n));
      const FiniteScheme s = thm2_upper_scheme(mu);
      auto consider = [&](std::vector<double> u) {
        worst = std::max(worst,
                         regret_of_scheme(s, mu, ReceiverUtility(std::move(u))));
        ++count;
      };
      // Structured: one good state, the rest uniformly bad, on a grid of
      // penalties; and utilities that sit just below indifference at one
      // of the scheme's posteriors.
      for (int i = 0; i < n; ++i) {
        for (int c = 1; c <= 20; ++c) {
          std::vector<double> u(n, -std::pow(10.0, (c - 10) / 3.0));
          u[i] = 1.0;
          consider(std::move(u));
        }
      }
      for (const auto& atom : s.atoms()) {
        for (int r = 0; r < 10; ++r) {
          std::vector<double> v(n);
          for (auto& x : v) x = 2.0 * uniform01(rng) - 1.0;
          const double level = expected_adopt_utility(atom.posterior.probs(), ReceiverUtility(v));
          for (auto& x : v) x -= level + 1e-12;
          consider(std::move(v));
        }
      }
      while (count < 1000 * (prior + 1)) {
        std::vector<double> u(n);
        for (auto& x : u) x = 2.0 * uniform01(rng) - 1.0;
        consider(std::move(u));
      }
    }
    rows.push_back(at_most("thm2", fmt("upper n=", n) + " max regret", worst,
                           bound, 1e-9));
  }

  double ratio = 0.0;
  for (int n = 16; n <= 100; ++n) {
    for (int s = 1; s <= n; ++s) {
      ratio = std::max(ratio, thm2_lower_adoption_prob(n, s) * std::sqrt(n));
    }
  }
  rows.push_back(at_most("thm2", "max adoption prob * sqrt(n) for n in 16..100",
                         ratio, 1.0, 1e-12));

  const int n = std::max(o.n, 16);
  const Prior uniform(std::vector<double>(n, 1.0 / n));
  const Thm2LowerCheck c =
      thm2_lower_bound_check(n, full_revelation(uniform), 1.0 / (4.0 * n * n));
  rows.push_back({"thm2", fmt("lower n=", n) + " full-revelation regret",
                  c.regret_lb, c.bound, 0.0, c.holds && c.regret_lb >= c.bound});
  return rows;
}

std::vector<CheckRow> prop4_suite(const VerifyOptions& o) {
  const MdSweepResult r2 = md_sweep({3, 3}, 20, 1000, o.seed);
  const MdSweepResult r3 = md_sweep({2, 3, 2}, 5, 200, o.seed + 1);
  return {
      at_most("prop4", "k=2 (3x3) max regret", r2.max_regret, 0.75, 1e-9),
      {"prop4", "k=2 (3x3) instances", static_cast<double>(r2.instances),
       20000.0, 0.0, r2.instances == 20000 && r2.violations == 0},
      at_most("prop4", "k=3 (2x3x2) max regret", r3.max_regret, 0.875, 1e-9),
      {"prop4", "k=3 bound", r3.bound, 0.875, 0.0, r3.bound == 0.875}};
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"lemma4", "lemma5", "prop1", "prop2", "prop4", "thm2"};
}

std::vector<CheckRow> run_suite(const std::string& name,
                                const VerifyOptions& options) {
  if (name == "lemma4") return lemma_suite(KernelId::kRegret, options);
  if (name == "lemma5") return lemma_suite(KernelId::kRatio, options);
  if (name == "prop1") return prop1_suite(options);
  if (name == "prop2") return prop2_suite(options);
  if (name == "prop4") return prop4_suite(options);
  if (name == "thm2") return thm2_suite(options);
  throw InstanceError("unknown suite: " + name);
}

}  // namespace persuasion
