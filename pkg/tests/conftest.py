import random

import pytest

from unitroots.padic import make_ring


@pytest.fixture(scope="session")
def ring3():
    return make_ring(3, 1, None, 4)


@pytest.fixture(scope="session")
def ring2():
    return make_ring(2, 1, None, 4)


@pytest.fixture(scope="session")
def ring5():
    return make_ring(5, 1, None, 4)


@pytest.fixture()
def rng():
    return random.Random(987123)
