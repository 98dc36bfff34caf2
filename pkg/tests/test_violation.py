import numpy as np
import pytest

from freemoe.entropy import binary_entropy, renyi_entropy
from freemoe.errors import DomainError, NotFoundError
from freemoe.tnorm import gradient, phi
from freemoe.violation import (Bound, asymptotic_check, entropy_diff, gamma_hw, gamma_opt, gamma_top, min_over_t,
                               sweep, t_grid, threshold_k, x_opt, x_opt_top)


def test_x_opt_examples():
    np.testing.assert_allclose(x_opt(2, 0.25), [0.9330127018922193, 0.0669872981077807], rtol=1e-14)
    np.testing.assert_array_equal(x_opt(4, 0.8), [1, 0, 0, 0])
    x = x_opt(10, 0.2)
    assert x.sum() == pytest.approx(1.0) and np.all(np.diff(x) <= 0)
    assert x[0] == phi(0.1, 0.2)


def test_x_opt_is_gradient_at_e1(rng):
    for _ in range(100):
        k = int(rng.integers(2, 40))
        t = rng.uniform(0.01, 1 - 1 / k - 1e-3)
        np.testing.assert_allclose(x_opt(k, t), gradient(np.eye(k)[0], t), atol=1e-10)


def test_gamma_examples():
    np.testing.assert_allclose(gamma_opt(2, 0.5), [0.625, 0.125, 0.125, 0.125], rtol=1e-15)
    np.testing.assert_allclose(gamma_hw(2, 0.5), [0.5, 1 / 6, 1 / 6, 1 / 6], rtol=1e-15)
    assert gamma_opt(5, 1 - 1e-12)[0] == pytest.approx(1.0)
    for k in (2, 7, 30):
        for t in (0.01, 0.3, 0.9):
            assert gamma_opt(k, t)[0] > t
            assert gamma_opt(k, t).sum() == pytest.approx(1.0)
            assert gamma_hw(k, t).sum() == pytest.approx(1.0)


def test_hw_top_clamped_to_uniform():
    assert gamma_top(2, 0.1, Bound.HAYDEN_WINTER) == 0.25
    np.testing.assert_allclose(gamma_hw(3, 0.05), np.full(9, 1 / 9))


def test_entropy_diff_matches_vectors(rng):
    for _ in range(50):
        k = int(rng.integers(2, 20))
        t = rng.uniform(0.01, 0.99)
        for p in (1.0, 2.0, np.inf):
            expected = renyi_entropy(gamma_opt(k, t), p) - 2 * renyi_entropy(x_opt(k, t), p)
            assert entropy_diff(k, t, p) == pytest.approx(expected, abs=1e-12)
            hw = renyi_entropy(gamma_hw(k, t), p) - 2 * renyi_entropy(x_opt(k, t), p)
            assert entropy_diff(k, t, p, "hw") == pytest.approx(hw, abs=1e-12)


def test_violation_at_183():
    assert entropy_diff(183, 0.11) < 0
    assert entropy_diff(182, t_grid()).min() > 0


def test_hw_dominates_and_bounded_below(rng):
    for k in (2, 10, 100, 183, 1000, 10_000):
        ts = np.linspace(1e-3, 1 - 1e-3, 500)
        for p in (1.0, 2.0, 5.0, np.inf):
            d = entropy_diff(k, ts, p)
            assert np.all(entropy_diff(k, ts, p, Bound.HAYDEN_WINTER) >= d - 1e-13)
        assert np.all(entropy_diff(k, ts) > -np.log(2))


def test_continuity_in_t():
    ts = np.linspace(0.01, 0.99, 9801)
    for k in (5, 183, 1000):
        d = entropy_diff(k, ts)
        assert np.max(np.abs(np.diff(d))) <= 50 * (ts[1] - ts[0])


def test_min_over_t():
    t, d = min_over_t(183)
    assert abs(t - 0.11) <= 0.02 and d < 0
    assert d <= entropy_diff(183, t_grid()).min()
    assert d <= entropy_diff(183, 0.5)


@pytest.mark.parametrize("p, bound, mode, expected", [
    (1.0, "exact", "free", 183), (1.0, "hw", "free", 184), (1.0, "exact", 0.5, 276),
    (1.0, "exact", "inverse-k", 432), (2.0, "exact", "free", 16), (3.0, "exact", "free", 14),
    (4.0, "exact", "free", 13), (np.inf, "exact", "free", 13)])
def test_threshold_table(p, bound, mode, expected):
    assert threshold_k(p, bound, mode)[0] == expected


def test_threshold_not_found():
    with pytest.raises(NotFoundError):
        threshold_k(1.0, k_max=50)


def test_sweep_records():
    recs = sweep([3, 4], 1.0, "exact", grid_n=11)
    assert len(recs) == 22
    r = recs[5]
    assert r.bound == "exact" and r.a_star == phi(1 / 3, r.t)
    assert r.gamma_top == pytest.approx(r.t + (1 - r.t) / 9)
    assert r.D == entropy_diff(3, r.t)
    assert set(r.as_dict()) == {"k", "t", "p", "bound", "D", "a_star", "gamma_top"}


def test_asymptotic_gap_decreasing():
    rows = asymptotic_check(0.5, [100, 1000, 10_000])
    gaps = [r["gap"] for r in rows]
    assert all(g >= 0 for g in gaps) and gaps[0] > gaps[1] > gaps[2]
    assert rows[0]["limit"] == pytest.approx(-np.log(2))
    assert asymptotic_check(0.3, [10])[0]["limit"] == -binary_entropy(0.3)
    r = asymptotic_check("inverse-k", [1000])[0]
    assert r["ratio"] == pytest.approx(r["D"] * 1000 / -np.log(1000))


def test_domain_errors():
    with pytest.raises(DomainError):
        entropy_diff(1, 0.5)
    with pytest.raises(DomainError):
        x_opt(3, 1.0)
    with pytest.raises(DomainError):
        Bound.parse("bogus")
    assert x_opt_top(4, np.array([0.1, 0.9])).shape == (2,)
