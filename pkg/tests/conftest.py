import sys

import pytest

from csd.lattice import FixedData
from csd.scattering import complete_rank2

if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)


@pytest.fixture(scope="session")
def a2():
    return FixedData.from_exchange([[0, 1], [-1, 0]], [1, 1])


@pytest.fixture(scope="session")
def g2():
    return FixedData.from_exchange([[0, 3], [-1, 0]], [1, 3])


@pytest.fixture(scope="session")
def kron():
    return FixedData.from_exchange([[0, 2], [-2, 0]], [1, 1])


@pytest.fixture(scope="session")
def a2_diagram(a2):
    return complete_rank2(a2, 6)


@pytest.fixture(scope="session")
def g2_diagram(g2):
    return complete_rank2(g2, 8)


@pytest.fixture(scope="session")
def kron_diagram(kron):
    return complete_rank2(kron, 6)
