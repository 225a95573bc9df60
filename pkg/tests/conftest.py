import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from nilring import make_cyclic_ring, make_product_ring, make_ut3_ring  # noqa: E402
from nilring.ring import ut3_index  # noqa: E402


@pytest.fixture(scope="session")
def z12():
    return make_cyclic_ring(12)


@pytest.fixture(scope="session")
def z6():
    return make_cyclic_ring(6)


@pytest.fixture(scope="session")
def ut2():
    return make_ut3_ring(2)


@pytest.fixture(scope="session")
def ut3():
    return make_ut3_ring(3)


@pytest.fixture(scope="session")
def z2z2():
    return make_product_ring([make_cyclic_ring(2), make_cyclic_ring(2)])


def ut(m, a=0, b=0, c=0, d=0):
    """Element a + b*E12 + c*E13 + d*E23 of ut3 over Z/m."""
    return ut3_index(m, a, b, c, d)
