import pytest

from grouplab import harness, named_group


@pytest.fixture(scope="session")
def corpus():
    return harness.build_corpus()


@pytest.fixture(scope="session")
def hol5():
    return named_group("holomorph_cyclic", [5])


@pytest.fixture(scope="session")
def hol7():
    return named_group("holomorph_cyclic", [7])


@pytest.fixture(scope="session")
def s4():
    return named_group("sym", [4])


@pytest.fixture(scope="session")
def s5():
    return named_group("sym", [5])
