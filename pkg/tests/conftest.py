import pytest

from quasiset.cluster import TAU, GroupSpec
from quasiset.pipeline import Pipeline

D8 = GroupSpec.dihedral(4, [(1, 0)])
D10 = GroupSpec.dihedral(5, [(1, 0), (0, TAU)])
Y1 = GroupSpec.icosahedral([(1, TAU, 0)])
Y3 = GroupSpec.icosahedral([(1, TAU, 0), (1, 1, 1), (1, 0, 0)])


@pytest.fixture(scope="session")
def d8():
    return Pipeline.from_spec(D8)


@pytest.fixture(scope="session")
def d10():
    return Pipeline.from_spec(D10)


@pytest.fixture(scope="session")
def y1():
    return Pipeline.from_spec(Y1)


@pytest.fixture(scope="session")
def y3():
    return Pipeline.from_spec(Y3)


@pytest.fixture(scope="session", params=["d8", "d10", "y1"])
def small(request):
    """The clusters cheap enough for exhaustive per-tuple checks."""
    return request.getfixturevalue(request.param)


@pytest.fixture(scope="session")
def d8_set(d8):
    return d8.generate(10.0)


@pytest.fixture(scope="session")
def d10_set(d10):
    return d10.generate(12.0)


@pytest.fixture(scope="session")
def y1_set(y1):
    return y1.generate(6.0)
