import numpy as np
import pytest

from freemoe.errors import DomainError
from freemoe.spectral_measure import (AtomicMeasure, cauchy_transform, f_transform_bundle, max_multiplicity,
                                      power_sums)

W = (1 + np.sqrt(3)) / 2


def test_cauchy_examples():
    assert cauchy_transform(AtomicMeasure([0, 0]), 1.0) == 1.0
    assert cauchy_transform(AtomicMeasure([1, 0]), W) == pytest.approx(np.sqrt(3), rel=1e-14)
    assert cauchy_transform(AtomicMeasure([2.5] * 5), 4.0) == pytest.approx(1 / 1.5, rel=1e-15)


def test_domain():
    m = AtomicMeasure([1, 0])
    for v in (1.0, 0.5):
        with pytest.raises(DomainError):
            cauchy_transform(m, v)
    with pytest.raises(DomainError):
        AtomicMeasure([1.0])
    with pytest.raises(DomainError):
        AtomicMeasure([1.0, np.nan])


def test_bundle():
    b = f_transform_bundle(AtomicMeasure([1, 0]), W)
    assert b.F == pytest.approx(1 / np.sqrt(3), rel=1e-14)
    b = f_transform_bundle(AtomicMeasure([0, 0]), 2.0)
    assert (b.F, b.dF) == (pytest.approx(2.0), pytest.approx(1.0))


def test_bundle_against_finite_differences(rng):
    m = AtomicMeasure(rng.normal(size=7))
    v, h = m.top + 0.7, 1e-5
    b = f_transform_bundle(m, v)
    G = lambda s: cauchy_transform(m, s)
    assert b.dG < 0
    assert b.dG == pytest.approx((G(v + h) - G(v - h)) / (2 * h), rel=1e-7)
    assert b.d2G == pytest.approx((G(v + h) - 2 * G(v) + G(v - h)) / h ** 2, rel=1e-4)
    F = lambda s: 1 / G(s)
    assert b.dF == pytest.approx((F(v + h) - F(v - h)) / (2 * h), rel=1e-7)


def test_power_sums():
    m = AtomicMeasure([1, 0])
    s0, s2 = power_sums(m, W, [0, 2])
    assert s0 == 2
    assert s2 == pytest.approx(8.0, rel=1e-13)


def test_properties(rng):
    for _ in range(50):
        m = AtomicMeasure(rng.normal(size=rng.integers(2, 12)))
        v1, v2 = sorted(m.top + rng.exponential(size=2))
        assert cauchy_transform(m, v1) > cauchy_transform(m, v2)
        s1, s2 = power_sums(m, v1, [1, 2])
        b = f_transform_bundle(m, v1)
        assert s1 / m.k == pytest.approx(b.G, rel=1e-14)
        assert s2 / m.k == pytest.approx(-b.dG, rel=1e-14)
        # F(v) = v - mean - var/v + O(v^-2)
        far = m.top + 1e6
        dev = f_transform_bundle(m, far).F + m.atoms.mean() - far
        assert dev == pytest.approx(-m.atoms.var() / far, rel=1e-3, abs=1e-9)


def test_f_asymptote_small_spread(rng):
    m = AtomicMeasure(rng.uniform(0, 0.1, size=9))
    far = m.top + 1e6
    assert abs(f_transform_bundle(m, far).F + m.atoms.mean() - far) < 1e-8


@pytest.mark.parametrize("x, expected", [
    ([1, 0, 0], (1, 1.0)),
    ([0.5, 0.5, 0], (2, 0.5)),
    ([0.5, 0.5 * (1 + 1e-15), 0], (2, 0.5 * (1 + 1e-15))),
    ([0.5, 0.5 * (1 + 1e-9), 0], (1, 0.5 * (1 + 1e-9))),
])
def test_max_multiplicity(x, expected):
    m, top = max_multiplicity(x)
    assert m == expected[0]
    assert top == pytest.approx(expected[1])
