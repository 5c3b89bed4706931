import random

import pytest

from umrow import (
    ExcisionRing,
    Ideal,
    IntegersModRing,
    PolyQuotientRing,
    PrimeFieldRing,
    ProductRing,
)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


@pytest.fixture(scope="session")
def z2():
    return IntegersModRing(2)


@pytest.fixture(scope="session")
def z3():
    return IntegersModRing(3)


@pytest.fixture(scope="session")
def z4():
    return IntegersModRing(4)


@pytest.fixture(scope="session")
def z6():
    return IntegersModRing(6)


@pytest.fixture(scope="session")
def f5():
    return PrimeFieldRing(5)


@pytest.fixture(scope="session")
def f7():
    return PrimeFieldRing(7)


@pytest.fixture(scope="session")
def dual_numbers():
    """F2[t]/(t^2): four elements, radical (t)."""
    return PolyQuotientRing(2, ["t"], ["t^2"])


@pytest.fixture(scope="session")
def z2xz3():
    return ProductRing([IntegersModRing(2), IntegersModRing(3)])


@pytest.fixture(scope="session")
def exc42():
    """The excision ring Z/4 + (2), eight elements."""
    z4 = IntegersModRing(4)
    return ExcisionRing(z4, Ideal(z4, [2]))
