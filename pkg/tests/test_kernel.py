"""
Tests for kernel diagonals
"""
import math

import numpy as np
import pytest

from numerics.errors import ParameterError
from numerics.kernel import in_guard_band, kernel_closed_monomial, kernel_limit, kernel_series

POINTS = np.array([0.0, 0.2 + 0.1j, -0.5j, 0.6 - 0.6j, 0.9])


def test_degree_zero(scaled):
    triple = kernel_series(scaled, 0, 0.3 + 0.2j)
    assert triple.k00 == pytest.approx(1.0 / math.pi)
    assert triple.k01 == 0
    assert triple.k11 == 0


def test_degree_one(scaled):
    z = 0.3 + 0.4j
    triple = kernel_series(scaled, 1, z)
    assert triple.k00 == pytest.approx((1.0 + 2.0 * abs(z) ** 2) / math.pi)
    assert triple.k01 == pytest.approx(2.0 * z / math.pi)
    assert triple.k11 == pytest.approx(2.0 / math.pi)


def test_scalar_input_gives_scalars(z_minus_one):
    triple = kernel_series(z_minus_one, 5, 0.1j)
    assert isinstance(triple.k00, float)
    assert isinstance(triple.k01, complex)


@pytest.mark.parametrize("n", [1, 5, 10, 40])
def test_closed_form_matches_series(scaled, n):
    series = kernel_series(scaled, n, POINTS)
    closed = kernel_closed_monomial(n, POINTS)
    assert np.allclose(closed.k00, series.k00, rtol=1e-11)
    assert np.allclose(closed.k01, series.k01, rtol=1e-10, atol=1e-12)
    assert np.allclose(closed.k11, series.k11, rtol=1e-10)


def test_guard_band_uses_series(scaled):
    z = np.array([0.999, 0.5])
    assert list(in_guard_band(10, z)) == [True, False]
    closed = kernel_closed_monomial(10, z)
    series = kernel_series(scaled, 10, z)
    assert closed.k00[0] == series.k00[0]
    assert closed.k11[0] == series.k11[0]


def test_compensated_path_matches_closed_form(scaled):
    z = np.array([0.5, 0.3j])
    series = kernel_series(scaled, 600, z)
    closed = kernel_closed_monomial(600, z)
    assert np.allclose(series.k00, closed.k00, rtol=1e-12)
    assert np.allclose(series.k11, closed.k11, rtol=1e-12)


def test_cauchy_schwarz_gap_nonnegative(named_basis):
    triple = kernel_series(named_basis, 20, POINTS)
    gap = triple.cauchy_schwarz_gap()
    assert np.all(gap >= -1e-12 * triple.k00 * triple.k11)


def test_large_degree_approaches_limit(scaled):
    z = 0.4 + 0.3j
    triple = kernel_series(scaled, 300, z)
    limit = kernel_limit(z)
    assert limit.n is None
    assert triple.k00 == pytest.approx(limit.k00, rel=1e-12)
    assert triple.k01 == pytest.approx(limit.k01, rel=1e-12)
    assert triple.k11 == pytest.approx(limit.k11, rel=1e-12)


def test_negative_degree(scaled):
    with pytest.raises(ParameterError):
        kernel_series(scaled, -1, 0.1)
    with pytest.raises(ParameterError):
        kernel_closed_monomial(-1, 0.1)


@pytest.mark.parametrize("spec_name", ["scaled", "weighted"])
def test_radial_families_are_rotation_invariant(spec_name, request):
    spec = request.getfixturevalue(spec_name)
    rotated = 0.6 * np.exp(1j * np.array([0.3, 1.2, 2.5, -2.0, math.pi]))
    triple = kernel_series(spec, 25, rotated)
    axis = kernel_series(spec, 25, 0.6)
    assert np.allclose(triple.k00, axis.k00, rtol=1e-12)
    assert np.allclose(np.abs(triple.k01), abs(axis.k01), rtol=1e-12)
    assert np.allclose(triple.k11, axis.k11, rtol=1e-12)


def test_k00_nondecreasing_in_degree(named_basis):
    previous = kernel_series(named_basis, 0, POINTS).k00
    for n in range(1, 31):
        current = kernel_series(named_basis, n, POINTS).k00
        assert np.all(current >= previous * (1.0 - 1e-15))
        previous = current
