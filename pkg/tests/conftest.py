import pytest

from gstar import build_grading, make_cyclic, parse_poly
from gstar.sampling import klein_group, standard_gradings, symmetric_group3


@pytest.fixture(scope="session")
def z2():
    return make_cyclic(2)


@pytest.fixture(scope="session")
def z4():
    return make_cyclic(4)


@pytest.fixture(scope="session")
def z6():
    return make_cyclic(6)


@pytest.fixture(scope="session")
def klein():
    return klein_group()


@pytest.fixture(scope="session")
def s3():
    return symmetric_group3()


@pytest.fixture(scope="session")
def gr_z2(z2):
    return build_grading(z2, ["e", "a"])


@pytest.fixture(scope="session")
def gr_z4(z4):
    return build_grading(z4, ["e", "a", "a2"])


@pytest.fixture(scope="session")
def gr_z6(z6):
    return build_grading(z6, ["e", "a", "a2"])


@pytest.fixture(scope="session")
def gr_klein(klein):
    return build_grading(klein, ["e", "a", "b"])


@pytest.fixture(scope="session")
def gradings():
    return standard_gradings()


@pytest.fixture(scope="session")
def mono():
    """Parse a single monic monomial from its text form."""

    def build(text, group):
        terms = parse_poly(text, group).terms_sorted()
        assert len(terms) == 1 and terms[0][1] == 1
        return terms[0][0]

    return build
