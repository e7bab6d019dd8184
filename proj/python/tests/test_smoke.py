import math

import pytest

import robust_persuasion as rp


def test_knapsack_example():
    sol = rp.optimal_knapsack([0.2, 0.3, 0.5], [-2, -2, 1])
    assert sol["threshold_x"] == pytest.approx(0.25)
    assert sol["optimal_utility"] == pytest.approx(0.75)
    assert rp.sender_utility(sol["scheme"], [-2, -2, 1]) == pytest.approx(0.75)
    assert rp.is_bayes_plausible(sol["scheme"], [0.2, 0.3, 0.5])


def test_invalid_prior_raises_value_error():
    with pytest.raises(ValueError, match="prior entry must be positive"):
        rp.optimal_knapsack([0.0, 1.0], [1, 1])


def test_regret_values_and_strategies():
    assert rp.reg_mon_value(0.25) == pytest.approx(1 / math.e)
    assert rp.reg_mon_value(0.5) == pytest.approx(0.3465736, abs=1e-7)
    assert rp.apr_mon_value(math.exp(-2)) == pytest.approx(1 / 3)
    s = rp.sender_opt(0.5)
    assert s.atoms == [(0.5, pytest.approx(1 + math.log(0.5)))]
    assert s.total_mass() == pytest.approx(1.0)
    a = rp.adversary_opt(0.5)
    for x in (0.0, 0.1, 0.3, 0.5):
        assert rp.expected_g(rp.MixedThreshold.point(x), s) == pytest.approx(
            rp.reg_mon_value(0.5), abs=1e-12)
        assert rp.expected_g(a, rp.MixedThreshold.point(x)) == pytest.approx(
            rp.reg_mon_value(0.5), abs=1e-12)


def test_sampling_is_deterministic():
    s = rp.sender_opt(0.25)
    assert s.sample(seed=4, count=10) == s.sample(seed=4, count=10)
    xs = s.sample(seed=1, count=20000)
    assert max(xs) <= 1 - 1 / math.e + 1e-12
    assert sum(xs) / len(xs) == pytest.approx(s.mean(), abs=0.01)


def test_robust_sender_utility_bounded_by_optimum():
    prior, u = [0.3, 0.2, 0.5], [-1.0, 0.2, 1.0]
    got = rp.robust_sender_utility(rp.sender_opt(0.5), prior, u)
    best = rp.optimal_knapsack(prior, u)["optimal_utility"]
    assert 0 <= got <= best
    assert best - got <= rp.reg_mon_value(0.5) + 1e-9


def test_arbitrary_and_multidim():
    assert rp.ternary_mass_in([1.0, -1.0, 0.0]) == pytest.approx(0.5)
    assert rp.ternary_sweep(40)["sup_regret"] == pytest.approx(0.5, abs=0.02)
    scheme = rp.prop1_scheme([0.3, 0.7])
    assert len(scheme) == 2
    regret, bound = rp.md_regret([2, 2], [[0.5, 0.5], [0.5, 0.5]], [-1, -1, -1, 3])
    assert regret == pytest.approx(0.75)
    assert bound == 0.75
    with pytest.raises(ValueError):
        rp.median_knapsack_scheme([2], [[0.5, 0.5], [1.0]], [0, 0])


def test_small_game_and_suite():
    r = rp.verify_lemma("g", 0.5, 201, 5e-3)
    assert r["converged"]
    assert r["abs_error"] < 5e-3
    rows = rp.run_suite("prop1")
    assert all(row["pass"] for row in rows)
