"""
Tests for basis families and quadrature
"""
import math

import numpy as np
import pytest

from numerics.basis import (
    basis_matrix, eval_basis, eval_basis_derivative, expand_to_monomials, gram_matrix,
    iter_basis, leading_coefficient, monomial_table, nested_sum_coefficients, sut_diagnostic, weight
)
from numerics.errors import ParameterError
from numerics.models import BasisFamily, BasisSpec, MonomialPoly
from numerics.quadrature import circle_nodes, disk_rule

POINTS = np.array([0.0, 0.3 + 0.4j, -0.7j, 0.95, -0.2 + 0.1j])


class TestBasisSpec:
    def test_weighted_power_needs_positive_j(self):
        with pytest.raises(ParameterError):
            BasisSpec.weighted_power(0)
        with pytest.raises(ParameterError):
            BasisSpec.weighted_power(-1.5)

    def test_custom_table_row_lengths(self):
        with pytest.raises(ParameterError):
            BasisSpec.custom([[1.0], [1.0]])

    def test_custom_table_zero_leading(self):
        with pytest.raises(ParameterError):
            BasisSpec.custom([[1.0], [1.0, 0.0]])

    def test_labels(self, scaled, weighted, z_minus_one):
        assert scaled.label == "scaled-monomial"
        assert weighted.label == "weighted-power:j=1"
        assert z_minus_one.label == "z-minus-one-squared"

    def test_radial_flags(self, scaled, weighted, z_minus_one, kac_table):
        assert scaled.is_radial and weighted.is_radial
        assert not z_minus_one.is_radial
        assert kac_table.is_radial and kac_table.is_monomial_table
        assert kac_table.max_degree == 30


class TestMonomialPoly:
    def test_trailing_zeros_stripped(self):
        assert MonomialPoly([1.0, 2.0, 0.0, 0.0]).degree == 1

    def test_zero_polynomial(self):
        assert MonomialPoly([0.0, 0.0]).is_zero

    def test_evaluate_and_derivative(self):
        poly = MonomialPoly([1.0, -3.0, 2.0])
        assert poly.evaluate(2.0) == pytest.approx(3.0)
        assert poly.derivative().evaluate(2.0) == pytest.approx(5.0)

    def test_trimmed(self):
        poly = MonomialPoly([1.0, 2.0, 1e-20])
        assert poly.trimmed().degree == 1


def test_nested_sum_coefficients_are_triangular_numbers():
    for k in range(12):
        assert nested_sum_coefficients(k) == [(m + 1) * (m + 2) // 2 for m in range(k + 1)]


def test_z_minus_one_expansion_k1(z_minus_one):
    norm = 1.0 / math.sqrt(24.0 * math.pi)
    coeffs = expand_to_monomials(z_minus_one, 1).coefficients
    assert coeffs == pytest.approx([2.0 * norm, 6.0 * norm])


def test_scaled_monomial_values(scaled):
    assert eval_basis(scaled, 3, 0.5) == pytest.approx(math.sqrt(4.0 / math.pi) * 0.125)
    assert eval_basis_derivative(scaled, 3, 0.5) == pytest.approx(math.sqrt(4.0 / math.pi) * 3 * 0.25)


def test_leading_coefficients(scaled, weighted, z_minus_one):
    for k in range(8):
        assert leading_coefficient(scaled, k) == pytest.approx(math.sqrt((k + 1) / math.pi))
        assert leading_coefficient(weighted, k) == pytest.approx(math.sqrt((k + 1) * (k + 2) / math.pi))
        assert leading_coefficient(z_minus_one, k) == pytest.approx(
            expand_to_monomials(z_minus_one, k).coefficients[-1].real
        )


def test_iter_basis_matches_horner(named_basis):
    for k, p, dp in iter_basis(named_basis, 8, POINTS):
        assert np.allclose(p, eval_basis(named_basis, k, POINTS), rtol=1e-12, atol=1e-14)
        assert np.allclose(dp, eval_basis_derivative(named_basis, k, POINTS), rtol=1e-12, atol=1e-14)


def test_basis_matrix_columns(z_minus_one):
    matrix = basis_matrix(z_minus_one, 6)
    for k in range(7):
        column = matrix[:, k]
        assert np.allclose(column[:k + 1], expand_to_monomials(z_minus_one, k).coefficients)
        assert np.all(column[k + 1:] == 0)


def test_gram_matrix_is_identity(named_basis):
    report = gram_matrix(named_basis, 12)
    assert report.exact
    assert report.max_deviation < 1e-10


def test_gram_matrix_integer_j2():
    report = gram_matrix(BasisSpec.weighted_power(2.0), 10)
    assert report.max_deviation < 1e-10


def test_gram_matrix_non_integer_j_is_flagged():
    report = gram_matrix(BasisSpec.weighted_power(0.5), 6)
    assert not report.exact
    assert report.warnings
    assert report.max_deviation < 1e-4


def test_gram_matrix_low_orders_flagged(scaled):
    report = gram_matrix(scaled, 10, quad_orders=(3, 4))
    assert not report.exact
    assert report.max_deviation > 1e-3


def test_sut_diagnostic_tends_to_one(named_basis):
    values = sut_diagnostic(named_basis, 200)
    assert values[0][0] == 1
    assert abs(values[-1][1] - 1.0) < 0.05


def test_sut_diagnostic_rejects_small_kmax(scaled):
    with pytest.raises(ParameterError):
        sut_diagnostic(scaled, 1)


def test_weights(scaled, weighted, z_minus_one):
    z = np.array([0.5, 0.5j])
    assert np.allclose(weight(scaled, z), 1.0)
    assert np.allclose(weight(weighted, z), 0.75)
    assert np.allclose(weight(z_minus_one, z), np.abs(z - 1.0) ** 2)
    with pytest.raises(ParameterError):
        weight(monomial_table(3), z)


def test_monomial_table(kac_table):
    assert kac_table.family is BasisFamily.CUSTOM_TABLE
    assert expand_to_monomials(kac_table, 4).coefficients == pytest.approx([0, 0, 0, 0, 1])
    with pytest.raises(ParameterError):
        expand_to_monomials(kac_table, 31)


def test_disk_rule_area_and_moment():
    rule = disk_rule(0.5, 8, 3)
    assert np.sum(rule.weights) == pytest.approx(math.pi * 0.25)
    # integral of |z|^2 over D(0, r) is pi r^4 / 2
    assert np.sum(rule.weights * np.abs(rule.points) ** 2) == pytest.approx(math.pi * 0.0625 / 2)


def test_circle_nodes_start_at_zero_angle():
    nodes = circle_nodes(0.5, 8)
    assert nodes[0] == pytest.approx(0.5)
    assert np.allclose(np.abs(nodes), 0.5)


FD_STEP = 1e-5


def _disk_points(count, radius, seed):
    rng = np.random.default_rng(seed)
    return radius * np.sqrt(rng.random(count)) * np.exp(2j * math.pi * rng.random(count))


@pytest.mark.parametrize("k", [0, 1, 2, 5, 12, 20])
def test_derivative_matches_central_difference(named_basis, k):
    z = _disk_points(40, 0.9, 3)
    difference = (eval_basis(named_basis, k, z + FD_STEP) - eval_basis(named_basis, k, z - FD_STEP)) / (2 * FD_STEP)
    assert np.max(np.abs(eval_basis_derivative(named_basis, k, z) - difference)) <= 1e-6


def test_z_minus_one_derivative_at_one(z_minus_one):
    # p_2 = (2 + 6z + 12z^2) / sqrt(60 pi)
    exact = eval_basis_derivative(z_minus_one, 2, 1.0)
    assert exact == pytest.approx(30.0 / math.sqrt(60.0 * math.pi), rel=1e-14)
    difference = (eval_basis(z_minus_one, 2, 1.0 + FD_STEP) - eval_basis(z_minus_one, 2, 1.0 - FD_STEP)) / (2 * FD_STEP)
    assert abs(exact - difference) <= 1e-7


@pytest.mark.parametrize("k", [0, 1, 7, 25, 50])
def test_eval_matches_monomial_expansion(named_basis, k):
    z = _disk_points(100, 1.5, 17)
    direct = eval_basis(named_basis, k, z)
    expanded = expand_to_monomials(named_basis, k).evaluate(z)
    assert np.all(np.abs(direct - expanded) <= 1e-11 * (1.0 + np.abs(direct)))


def test_nested_sum_matches_polynomial_products():
    for k in range(5):
        total = np.zeros(k + 1, dtype=np.int64)
        for j in range(k + 1):
            term = np.polynomial.polynomial.polymul([0] * j + [j + 1], [1] * (k - j + 1))
            total[:len(term)] += term.astype(np.int64)
        assert nested_sum_coefficients(k) == total.tolist()


@pytest.mark.parametrize("k", range(5))
def test_z_minus_one_closed_coefficients(z_minus_one, k):
    norm = 1.0 / math.sqrt(math.pi * (k + 1) * (k + 2) * (k + 3))
    # nested sum coefficients are (m+1)(m+2)/2
    expected = [2.0 * norm * c for c in nested_sum_coefficients(k)]
    assert expand_to_monomials(z_minus_one, k).coefficients == pytest.approx(expected, rel=1e-14)


def test_sut_diagnostic_range_and_monotone(named_basis):
    values = dict(sut_diagnostic(named_basis, 200))
    assert all(1.0 <= values[k] <= 1.5 for k in range(5, 201))
    tail = [values[k] for k in range(10, 201)]
    assert all(later < earlier for earlier, later in zip(tail, tail[1:]))


def test_gram_matrix_degree_30(named_basis):
    report = gram_matrix(named_basis, 30)
    assert report.exact
    assert report.max_deviation <= 1e-9
