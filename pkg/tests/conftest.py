"""
Shared fixtures
"""
import pytest

from numerics.basis import monomial_table
from numerics.models import BasisSpec


@pytest.fixture
def scaled():
    return BasisSpec.scaled_monomial()


@pytest.fixture
def weighted():
    return BasisSpec.weighted_power(1.0)


@pytest.fixture
def z_minus_one():
    return BasisSpec.z_minus_one_squared()


@pytest.fixture(params=['scaled', 'weighted', 'z_minus_one'])
def named_basis(request):
    """Each of the three named families"""
    return request.getfixturevalue(request.param)


@pytest.fixture
def kac_table():
    return monomial_table(30)


@pytest.fixture
def output_dir(tmp_path):
    directory = tmp_path / "output"
    directory.mkdir()
    return directory
