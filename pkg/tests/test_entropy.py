import numpy as np
import pytest

from freemoe.entropy import as_prob_vector, binary_entropy, entropy_of_two_level, renyi_entropy, renyi_two_level
from freemoe.errors import DomainError
from freemoe.violation import gamma_hw, gamma_opt

ORDERS = [1.0, 1.5, 2.0, 3.0, 7.0, np.inf]


@pytest.mark.parametrize("p", ORDERS)
@pytest.mark.parametrize("k", [1, 2, 5, 64])
def test_uniform_and_point_mass(p, k):
    assert renyi_entropy(np.full(k, 1 / k), p) == pytest.approx(np.log(k), abs=1e-14)
    assert renyi_entropy(np.eye(k)[0], p) == 0.0


def test_renyi_examples():
    assert renyi_entropy([0.5, 0.5], 2) == pytest.approx(np.log(2), rel=1e-15)
    lam = np.array([0.7, 0.2, 0.1])
    assert renyi_entropy(lam) == pytest.approx(-np.sum(lam * np.log(lam)), rel=1e-15)
    assert renyi_entropy(lam, 2) == pytest.approx(-np.log(np.sum(lam ** 2)), rel=1e-15)
    assert renyi_entropy(lam, np.inf) == pytest.approx(-np.log(0.7), rel=1e-15)


def test_large_order_does_not_underflow():
    lam = np.full(1000, 1e-3)
    assert renyi_entropy(lam, 500.0) == pytest.approx(np.log(1000), rel=1e-12)


def test_renyi_errors():
    with pytest.raises(DomainError):
        renyi_entropy([0.5, 0.5], 0.5)
    with pytest.raises(DomainError):
        renyi_entropy([0.5, 0.6])
    with pytest.raises(DomainError):
        renyi_entropy([1.2, -0.2])


def test_as_prob_vector_renormalises():
    v = as_prob_vector([0.5, 0.5 + 5e-11])
    assert v.sum() == pytest.approx(1.0, abs=1e-16)


def test_monotone_in_order(rng):
    for _ in range(200):
        lam = rng.dirichlet(np.full(int(rng.integers(2, 12)), 0.4))
        vals = [renyi_entropy(lam, p) for p in ORDERS]
        assert np.all(np.diff(vals) <= 1e-13)
        assert 0 <= vals[-1] and vals[0] <= np.log(lam.size) + 1e-13


@pytest.mark.parametrize("a, n, expected", [
    (1.0, 5, 0.0), (0.25, 3, np.log(4)),
    (5 / 8, 3, -0.625 * np.log(0.625) - 0.375 * np.log(0.125))])
def test_two_level_examples(a, n, expected):
    assert entropy_of_two_level(a, n) == pytest.approx(expected, abs=1e-15)


def test_two_level_matches_expanded(rng):
    for _ in range(300):
        n = int(rng.integers(1, 50))
        a = rng.uniform(1e-3, 1)
        v = np.r_[a, np.full(n, (1 - a) / n)]
        assert entropy_of_two_level(a, n) == pytest.approx(renyi_entropy(v), abs=1e-13)
        for p in ORDERS[1:]:
            assert renyi_two_level(a, n, p) == pytest.approx(renyi_entropy(v, p), abs=1e-12)


def test_two_level_vectorised():
    a = np.array([0.3, 0.6, 1.0])
    np.testing.assert_allclose(renyi_two_level(a, 4, 2.0), [renyi_two_level(v, 4, 2.0) for v in a])
    with pytest.raises(DomainError):
        renyi_two_level(0.0, 3)


def test_binary_entropy():
    assert binary_entropy(0.5) == pytest.approx(np.log(2))
    assert binary_entropy(0.1) == pytest.approx(renyi_entropy([0.1, 0.9]))


def test_majorization_hw_more_mixed(rng):
    for _ in range(300):
        k = int(rng.integers(2, 30))
        t = rng.uniform(1 / k ** 2, 0.99)
        g, h = gamma_opt(k, t), gamma_hw(k, t)
        assert np.all(np.cumsum(h) <= np.cumsum(g) + 1e-12)
        for p in ORDERS:
            assert renyi_entropy(h, p) >= renyi_entropy(g, p) - 1e-13
