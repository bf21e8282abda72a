from __future__ import annotations

import pytest

from ringlab import Matrix, Product, TriPattern, TruncPoly, Zn, build_ring

# The standard corpus: every ring the acceptance checks quantify over.
CORPUS_SPECS = [Zn(n) for n in range(2, 9)] + [
    TruncPoly(2, 2),
    TruncPoly(3, 3),
    Matrix(Zn(2), 2),
    TriPattern(Zn(2)),
    Product((Zn(2), Zn(3))),
]


@pytest.fixture(scope="session")
def corpus_rings():
    return [build_ring(spec) for spec in CORPUS_SPECS]


@pytest.fixture(scope="session")
def zn4():
    return build_ring(Zn(4))


@pytest.fixture(scope="session")
def zn6():
    return build_ring(Zn(6))


@pytest.fixture(scope="session")
def tp22():
    return build_ring(TruncPoly(2, 2))


@pytest.fixture(scope="session")
def tp33():
    return build_ring(TruncPoly(3, 3))


@pytest.fixture(scope="session")
def m2z2():
    return build_ring(Matrix(Zn(2), 2))


@pytest.fixture(scope="session")
def m2z3():
    return build_ring(Matrix(Zn(3), 2))


@pytest.fixture(scope="session")
def tri2():
    return build_ring(TriPattern(Zn(2)))


@pytest.fixture(scope="session")
def tri3():
    return build_ring(TriPattern(Zn(3)))


@pytest.fixture(scope="session")
def z2xz3():
    return build_ring(Product((Zn(2), Zn(3))))
