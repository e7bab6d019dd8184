#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "persuasion/core.hpp"
#include "persuasion/mixed_threshold.hpp"
#include "persuasion/monotone_regret.hpp"

using namespace persuasion;

TEST_CASE("adopts: tie goes to the sender") {
  CHECK(adopts(Posterior({1.0, 0.0}), ReceiverUtility({0.0, -1.0})));
  CHECK_FALSE(adopts(Posterior({0.5, 0.5}), ReceiverUtility({1.0, -2.0})));
  const Posterior third({1.0 / 3, 1.0 / 3, 1.0 / 3});
  const ReceiverUtility u({-1.0, -1.0, 1.0});
  CHECK_FALSE(adopts(third, u));
  CHECK(expected_adopt_utility(third.probs(), u) ==
        doctest::Approx(-1.0 / 3).epsilon(1e-15));
  CHECK(adopts(third, u, 0.34));
  CHECK_THROWS_AS(adopts(Posterior({1.0, 0.0}), ReceiverUtility({1.0})),
                  InstanceError);
}

TEST_CASE("adopts is monotone in the utility") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> p(4), u(4);
    double s = 0.0;
    for (auto& x : p) s += (x = uniform01(rng) + 1e-3);
    for (auto& x : p) x /= s;
    for (auto& x : u) x = d(rng);
    const Posterior post = Posterior::from_masses(p);
    const bool before = adopts(post, ReceiverUtility(u));
    u[trial % 4] += std::abs(d(rng));
    if (before) CHECK(adopts(post, ReceiverUtility(u)));
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(Prior({0.5, 0.0, 0.5}), InstanceError);
  CHECK_THROWS_AS(Prior({0.5, 0.6}), InstanceError);
  CHECK_THROWS_AS(Prior({}), InstanceError);
  CHECK_THROWS_AS(ReceiverUtility({1.0, NAN}), InstanceError);
  CHECK_THROWS_AS(Posterior({-0.1, 1.1}), InstanceError);
  CHECK_NOTHROW(Prior({0.5, 0.5 + 1e-13}));
}

TEST_CASE("is_bayes_plausible") {
  const Prior mu({0.3, 0.7});
  CHECK(is_bayes_plausible(no_information(mu), mu));
  CHECK(is_bayes_plausible(
      FiniteScheme({{Posterior({0.0, 1.0}), 0.5}, {Posterior({0.6, 0.4}), 0.5}}),
      mu));
  CHECK_FALSE(is_bayes_plausible(FiniteScheme({{Posterior({1.0, 0.0}), 1.0}}),
                                 mu));
}

TEST_CASE("threshold_to_finite") {
  const Prior mu({0.2, 0.3, 0.1, 0.4});
  const auto ord = StateOrdering::identity(mu);
  CHECK(ord.segment_of(0.55) == 2);  // state i_3 in 1-based terms

  const FiniteScheme s = threshold_to_finite({0.55, ord}, mu);
  REQUIRE(s.size() == 2);
  const auto& high = s.atoms()[1];
  CHECK(high.weight == doctest::Approx(0.45).epsilon(1e-14));
  CHECK(high.posterior[0] == 0.0);
  CHECK(high.posterior[1] == 0.0);
  CHECK(high.posterior[2] == doctest::Approx(0.05 / 0.45).epsilon(1e-13));
  CHECK(high.posterior[3] == doctest::Approx(0.4 / 0.45).epsilon(1e-13));
  CHECK(is_bayes_plausible(s, mu));

  const FiniteScheme none = threshold_to_finite({0.0, ord}, mu);
  REQUIRE(none.size() == 1);
  CHECK(none.atoms()[0].weight == 1.0);
  CHECK(none.atoms()[0].posterior[3] == doctest::Approx(0.4));

  const Prior half({0.5, 0.5});
  const FiniteScheme full =
      threshold_to_finite({0.5, StateOrdering::identity(half)}, half);
  REQUIRE(full.size() == 2);
  CHECK(full.atoms()[0].posterior == Posterior({1.0, 0.0}));
  CHECK(full.atoms()[1].posterior == Posterior({0.0, 1.0}));

  const FiniteScheme never = threshold_to_finite({1.0, ord}, mu);
  CHECK(never.size() == 1);
  CHECK_THROWS_AS(threshold_to_finite({1.5, ord}, mu), InstanceError);
}

TEST_CASE("threshold schemes are always Bayes-plausible") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + trial % 7;
    std::vector<double> p(n);
    double s = 0.0;
    for (auto& x : p) s += (x = uniform01(rng) + 1e-3);
    for (auto& x : p) x /= s;
    const Prior mu(p);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    const StateOrdering ord(order, mu);
    const double t = uniform01(rng);
    CHECK(is_bayes_plausible(threshold_to_finite({t, ord}, mu), mu));
    // A threshold sitting exactly on a segment boundary.
    const double edge = ord.cumulative()[trial % (n - 1)];
    CHECK(is_bayes_plausible(threshold_to_finite({edge, ord}, mu), mu));
  }
}

TEST_CASE("sender_utility") {
  const Prior mu({0.5, 0.5});
  CHECK(sender_utility(no_information(mu), ReceiverUtility({0.0, 2.0})) == 1.0);
  CHECK(sender_utility(full_revelation(mu), ReceiverUtility({1.0, -1.0})) ==
        0.5);

  // Atoms with identical posteriors can be merged without changing utility.
  const Posterior a({0.2, 0.8}), b({0.8, 0.2});
  const ReceiverUtility u({-1.0, 0.5});
  const FiniteScheme split({{a, 0.25}, {a, 0.25}, {b, 0.5}});
  const FiniteScheme merged({{a, 0.5}, {b, 0.5}});
  CHECK(sender_utility(split, u) == doctest::Approx(sender_utility(merged, u)));
  CHECK(sender_utility(merged, u) == doctest::Approx(0.5));
}

TEST_CASE("scheme_from_signal_masses drops empty signals") {
  const FiniteScheme s =
      scheme_from_signal_masses({{0.1, 0.0}, {0.0, 0.0}, {0.2, 0.7}});
  CHECK(s.size() == 2);
  CHECK(is_bayes_plausible(s, Prior({0.3, 0.7})));
}

TEST_CASE("sample_mixed") {
  CHECK(sample_mixed(MixedThreshold::point(0.4), 123) == 0.4);
  const MixedThreshold m = sender_opt(0.25);
  CHECK(m.quantile(0.0) == 0.0);
  CHECK(m.quantile(1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  for (double z : {0.1, 0.3, 0.7, 0.95}) {
    CHECK(m.quantile(z) == doctest::Approx(1.0 - std::exp(-z)).epsilon(1e-13));
  }
  // Bit-for-bit reproducible.
  CHECK(sample_mixed(m, 99) == sample_mixed(m, 99));
  CHECK(sample_mixed(m, 5, 1000) == sample_mixed(m, 5, 1000));
  CHECK(sample_mixed(m, 5, 10) != sample_mixed(m, 6, 10));
}
