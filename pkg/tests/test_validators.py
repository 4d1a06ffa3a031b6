"""
Tests for CLI value parsing
"""
import pytest

from numerics.errors import ParameterError
from numerics.models import BasisFamily
from utils.validators import (
    load_coefficient_table, load_experiment_file, parse_basis, parse_float_list, parse_int_list
)


class TestParseBasis:
    def test_named_families(self):
        assert parse_basis("scaled-monomial").family is BasisFamily.SCALED_MONOMIAL
        assert parse_basis("z-minus-one-squared").family is BasisFamily.Z_MINUS_ONE_SQUARED
        spec = parse_basis("weighted-power:j=2.5")
        assert spec.family is BasisFamily.WEIGHTED_POWER
        assert spec.j == 2.5

    def test_label_round_trip(self):
        for name in ("scaled-monomial", "z-minus-one-squared", "weighted-power:j=3"):
            assert parse_basis(name).label == name

    def test_kac(self):
        spec = parse_basis("kac", degree=12)
        assert spec.is_monomial_table
        assert spec.max_degree == 12
        with pytest.raises(ParameterError):
            parse_basis("kac")

    def test_invalid(self):
        for name in ("monomial", "weighted-power:j=abc", "weighted-power:j=-1", "weighted-power"):
            with pytest.raises(ParameterError):
                parse_basis(name)

    def test_custom_file(self, tmp_path):
        table = tmp_path / "table.txt"
        table.write_text("# p_0 = 1, p_1 = -1 + z\n1 0\n-1 0  1 0\n", encoding="utf-8")
        spec = parse_basis(f"custom:{table}")
        assert spec.family is BasisFamily.CUSTOM_TABLE
        assert spec.table == ((1 + 0j,), (-1 + 0j, 1 + 0j))
        assert spec.label == f"custom:{table}"


class TestCoefficientTable:
    def test_missing_file(self, tmp_path):
        with pytest.raises(ParameterError):
            load_coefficient_table(str(tmp_path / "absent.txt"))

    def test_odd_number_count(self, tmp_path):
        table = tmp_path / "table.txt"
        table.write_text("1 0 2\n", encoding="utf-8")
        with pytest.raises(ParameterError):
            load_coefficient_table(str(table))

    def test_non_numeric(self, tmp_path):
        table = tmp_path / "table.txt"
        table.write_text("1 x\n", encoding="utf-8")
        with pytest.raises(ParameterError):
            load_coefficient_table(str(table))

    def test_empty(self, tmp_path):
        table = tmp_path / "table.txt"
        table.write_text("# nothing\n\n", encoding="utf-8")
        with pytest.raises(ParameterError):
            load_coefficient_table(str(table))

    def test_complex_entries(self, tmp_path):
        table = tmp_path / "table.txt"
        table.write_text("0.5 -0.5\n", encoding="utf-8")
        assert load_coefficient_table(str(table)) == [[0.5 - 0.5j]]


def test_number_lists():
    assert parse_float_list("0.5, 0.9 1") == [0.5, 0.9, 1.0]
    assert parse_int_list("25,50,100") == [25, 50, 100]
    with pytest.raises(ParameterError):
        parse_float_list("0.5,abc")
    with pytest.raises(ParameterError):
        parse_int_list("")


class TestExperimentFile:
    def test_values(self, tmp_path):
        path = tmp_path / "experiment.env"
        path.write_text("BASIS=scaled-monomial\nDEGREE=25\nRADII=0.5,0.9,1.0\nSEED=7\n", encoding="utf-8")
        values = load_experiment_file(str(path))
        assert values == {'BASIS': 'scaled-monomial', 'DEGREE': '25', 'RADII': '0.5,0.9,1.0', 'SEED': '7'}

    def test_unknown_key(self, tmp_path):
        path = tmp_path / "experiment.env"
        path.write_text("DEGREE=25\nCOLOUR=blue\n", encoding="utf-8")
        with pytest.raises(ParameterError):
            load_experiment_file(str(path))

    def test_missing(self, tmp_path):
        with pytest.raises(ParameterError):
            load_experiment_file(str(tmp_path / "absent.env"))
