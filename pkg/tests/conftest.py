import pytest

from hullkit.families import parse_family


@pytest.fixture(scope="session")
def S3():
    return parse_family("symmetric:3")


@pytest.fixture(scope="session")
def S4():
    return parse_family("symmetric:4")


@pytest.fixture(scope="session")
def D4():
    return parse_family("dihedral:4")


@pytest.fixture(scope="session")
def C6():
    return parse_family("cyclic:6")


@pytest.fixture(scope="session")
def Q8():
    return parse_family("quaternion8")


@pytest.fixture(scope="session")
def small_corpus():
    from hullkit.corpus import corpus

    return [c for c in corpus(24)]
