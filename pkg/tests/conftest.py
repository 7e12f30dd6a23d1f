import pytest

from quivertilt import GF, QQ, build_algebra, Quiver, RelationPoly
from quivertilt.formats import fixture_algebra


def build_cycle2(field=QQ):
    return fixture_algebra("cycle2", None if field == QQ else field)


@pytest.fixture(scope="session")
def a2():
    return fixture_algebra("a2")


@pytest.fixture(scope="session")
def kron2():
    return fixture_algebra("kron2")


@pytest.fixture(scope="session")
def cycle2():
    return fixture_algebra("cycle2")


@pytest.fixture(scope="session")
def triple3():
    return fixture_algebra("triple3")


@pytest.fixture(scope="session")
def all_algebras(a2, kron2, cycle2, triple3):
    return {"a2": a2, "kron2": kron2, "cycle2": cycle2, "triple3": triple3}
