"""
Tests for the zero intensity
"""
import math

import numpy as np
import pytest

from numerics.basis import monomial_table
from numerics.errors import DomainError, ParameterError
from numerics.kernel import kernel_series
from services.intensity_service import IntensityService

GRID = np.array([0.0, 0.1, 0.3 + 0.3j, -0.6j, 0.8, 0.7 - 0.5j, 0.97j])


def test_origin_value(scaled):
    for n in (1, 5, 50):
        assert IntensityService.intensity_general(scaled, n, 0.0) == pytest.approx(2.0 / math.pi)


def test_degree_zero_has_no_zeros(named_basis):
    assert IntensityService.intensity_general(named_basis, 0, 0.4) == 0.0


@pytest.mark.parametrize("n", [1, 4, 20, 100])
def test_closed_matches_general(scaled, n):
    general = IntensityService.intensity_general(scaled, n, GRID)
    closed = IntensityService.intensity_closed(n, GRID)
    assert np.allclose(closed, general, rtol=1e-10, atol=1e-12)


@pytest.mark.parametrize("n, z, rtol", [(6, 0.4 - 0.3j, 1e-10), (25, 0.8, 1e-9)])
def test_closed_matches_general_reference_points(scaled, n, z, rtol):
    assert IntensityService.intensity_closed(n, z) == pytest.approx(
        IntensityService.intensity_general(scaled, n, z), rel=rtol
    )


def test_limit_value():
    assert IntensityService.intensity_limit(0.5) == pytest.approx(2.0 / (math.pi * 0.75 ** 2))


def test_general_approaches_limit(scaled):
    z = np.array([0.2, 0.5j])
    assert np.allclose(
        IntensityService.intensity_general(scaled, 400, z),
        IntensityService.intensity_limit(z),
        rtol=1e-10,
    )


def test_weighted_power_family_limit(weighted):
    z = 0.5
    rho = IntensityService.intensity_general(weighted, 400, z)
    assert rho == pytest.approx(3.0 / (math.pi * 0.75 ** 2), rel=1e-9)
    assert IntensityService.family_intensity_limit(weighted, z) == pytest.approx(rho, rel=1e-9)


def test_z_minus_one_family_limit(z_minus_one):
    z = 0.3 + 0.4j
    rho = IntensityService.intensity_general(z_minus_one, 1000, z)
    assert rho == pytest.approx(IntensityService.family_intensity_limit(z_minus_one, z), rel=1e-3)


def test_kac_intensity_matches_general():
    n = 15
    z = np.array([0.1, 0.5 + 0.2j, 0.9j])
    general = IntensityService.intensity_general(monomial_table(n), n, z)
    assert np.allclose(IntensityService.kac_intensity(n, z), general, rtol=1e-9)


def test_outside_disk_rejected(scaled):
    with pytest.raises(DomainError):
        IntensityService.intensity_general(scaled, 5, 1.0)
    with pytest.raises(DomainError):
        IntensityService.intensity_closed(5, np.array([0.2, 1.5j]))
    with pytest.raises(DomainError):
        IntensityService.intensity_limit(1.0)


def test_nonnegative(named_basis):
    rho = IntensityService.intensity_general(named_basis, 30, GRID)
    assert np.all(rho >= 0.0)


class TestIntensityGrid:
    def test_shape_and_mask(self, scaled):
        grid = IntensityService.intensity_grid(scaled, 10, resolution=21)
        assert grid.values.shape == (21, 21)
        assert np.isnan(grid.values[0, 0])
        assert not grid.inside[0, 0]
        assert grid.inside[10, 10]
        assert grid.values[10, 10] == pytest.approx(2.0 / math.pi)
        assert np.all(np.isnan(grid.values[~grid.inside]))

    def test_frame(self, scaled):
        frame = IntensityService.intensity_grid(scaled, 4, resolution=5).to_frame()
        assert list(frame.columns) == ['x', 'y', 'rho', 'inside']
        assert len(frame) == 25

    def test_midpoint_integral_near_count(self, scaled):
        grid = IntensityService.intensity_grid(scaled, 10, resolution=401)
        # E[N_10(D(0, 1/2))] from the rational series
        k = np.arange(11)
        expected = np.sum(k * (k + 1) * 0.25 ** k) / np.sum((k + 1) * 0.25 ** k)
        assert grid.midpoint_integral(0.5) == pytest.approx(expected, rel=2e-2)

    def test_bad_resolution(self, scaled):
        with pytest.raises(ParameterError):
            IntensityService.intensity_grid(scaled, 4, resolution=1)


@pytest.mark.parametrize("spec_name", ["scaled", "weighted"])
def test_radial_families_rotation_invariant(spec_name, request):
    spec = request.getfixturevalue(spec_name)
    rotated = 0.7 * np.exp(1j * np.linspace(0.0, 2.0 * math.pi, 9, endpoint=False))
    rho = IntensityService.intensity_general(spec, 30, rotated)
    assert np.allclose(rho, IntensityService.intensity_general(spec, 30, 0.7), rtol=1e-11)


@pytest.mark.parametrize("z", [0.0, 0.3, 0.6, 0.9 * np.exp(1j * math.pi / 4)])
def test_closed_form_converges_pointwise(z):
    limit = IntensityService.intensity_limit(z)
    gaps = [abs(IntensityService.intensity_closed(n, z) - limit) for n in (50, 100, 200, 400)]
    slack = 1e-12 * limit
    assert all(later <= earlier + slack for earlier, later in zip(gaps, gaps[1:]))
    assert gaps[-1] <= 1e-10 * limit


def test_family_limit_uses_unweighted_kernel_limit(scaled, z_minus_one):
    z = np.array([0.0, 0.5j, 0.3 - 0.6j])
    expected = IntensityService.intensity_limit(z)
    assert np.allclose(IntensityService.family_intensity_limit(scaled, z), expected, rtol=1e-12)
    assert np.allclose(IntensityService.family_intensity_limit(z_minus_one, z), expected, rtol=1e-12)


def test_negative_density_is_reported(scaled, monkeypatch):
    import services.intensity_service as intensity_module
    from numerics.errors import NumericalDiagnosticError
    from numerics.models import KernelTriple

    def broken_kernel(spec, n, z):
        return KernelTriple(k00=1.0, k01=2.0 + 0j, k11=1.0, n=n, z=z)

    monkeypatch.setattr(intensity_module, 'kernel_series', broken_kernel)
    with pytest.raises(NumericalDiagnosticError):
        IntensityService.intensity_general(scaled, 3, 0.2)


class TestGridInvariants:
    def test_degree_zero_vanishes_everywhere(self, named_basis):
        grid = IntensityService.intensity_grid(named_basis, 0, resolution=101)
        assert np.all(grid.values[grid.inside] == 0.0)

    @pytest.mark.parametrize("n", [0, 12])
    def test_cauchy_schwarz_on_grid(self, named_basis, n):
        grid = IntensityService.intensity_grid(named_basis, n, resolution=101)
        triple = kernel_series(named_basis, n, grid.points[grid.inside])
        gap = triple.cauchy_schwarz_gap()
        assert np.all(gap >= -1e-12 * triple.k00 * np.maximum(triple.k11, 1.0))
