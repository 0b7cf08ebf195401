from fractions import Fraction

import pytest

from poissonenv.fileformat import load_bundled_algebra
from poissonenv.linalg import SparseVector
from poissonenv.ncpa import AlgebraPresentation, NCPA, standard_ncpa, validate_ncpa


def vec(n, entries) -> SparseVector:
    return SparseVector(n, {i: Fraction(c) for i, c in entries.items()})


@pytest.fixture(scope="session")
def kxk() -> NCPA:
    return validate_ncpa(load_bundled_algebra("kxk.alg"))


@pytest.fixture(scope="session")
def m2() -> NCPA:
    return validate_ncpa(load_bundled_algebra("m2std.alg"))


@pytest.fixture(scope="session")
def trunc2() -> NCPA:
    return validate_ncpa(load_bundled_algebra("trunc2-n2.alg"))


@pytest.fixture(scope="session")
def field_k() -> NCPA:
    pres = AlgebraPresentation(
        "k", 1, ["1"], vec(1, {0: 1}), {(0, 0): vec(1, {0: 1})}, {}
    )
    return validate_ncpa(pres)


@pytest.fixture(scope="session")
def ut2() -> NCPA:
    """Upper-triangular 2x2 matrices with the commutator bracket."""
    mul = {
        (0, 0): vec(3, {0: 1}),
        (0, 1): vec(3, {1: 1}),
        (1, 2): vec(3, {1: 1}),
        (2, 2): vec(3, {2: 1}),
    }
    pres = AlgebraPresentation(
        "ut2std", 3, ["E11", "E12", "E22"], vec(3, {0: 1, 2: 1}), mul, {}
    )
    return standard_ncpa(pres)


@pytest.fixture(scope="session")
def kxk_skew() -> NCPA:
    """K x K in the basis b1 = e1 + 4 e2, b2 = 2 e1 + e2: same algebra,
    but its idempotents are not probe vectors."""
    pres = AlgebraPresentation(
        "kxk-skew",
        2,
        ["b1", "b2"],
        vec(2, {0: Fraction(1, 7), 1: Fraction(3, 7)}),
        {
            (0, 0): vec(2, {0: Fraction(31, 7), 1: Fraction(-12, 7)}),
            (0, 1): vec(2, {0: Fraction(6, 7), 1: Fraction(4, 7)}),
            (1, 0): vec(2, {0: Fraction(6, 7), 1: Fraction(4, 7)}),
            (1, 1): vec(2, {0: Fraction(-2, 7), 1: Fraction(15, 7)}),
        },
        {},
    )
    return validate_ncpa(pres)
