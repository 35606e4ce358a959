from fractions import Fraction

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from mackey import catalog, lie
from mackey import linalg as la

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

# filled by test_acceptance, printed once at the end of the run
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])


def frac_rows(rows):
    return la.frac_array(rows)


def upper_nilpotent(n: int) -> lie.LieAlgebra:
    """Strictly upper triangular n x n matrices, basis E_ij (i < j)."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    idx = {p: k for k, p in enumerate(pairs)}
    items = []
    for a, (i, j) in enumerate(pairs):
        for b, (k, l) in enumerate(pairs):
            if a < b:
                if j == k:
                    items.append((a, b, idx[(i, l)], 1))
                if l == i:
                    items.append((a, b, idx[(k, j)], -1))
    return lie.from_brackets([f"E{i}{j}" for i, j in pairs], items)


def sl2() -> lie.LieAlgebra:
    return lie.from_brackets(["h", "x", "y"], [("h", "x", "x", 2), ("h", "y", "y", -2), ("x", "y", "h", 1)])


def so3() -> lie.LieAlgebra:
    return lie.from_brackets(["L1", "L2", "L3"], [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)])


def base_algebras() -> list:
    return [
        lie.abelian(3),
        lie.heisenberg(1),
        lie.heisenberg(2),
        upper_nilpotent(4),
        sl2(),
        so3(),
        catalog.solvable_datum().alg,
        catalog.cover_datum().alg,
        lie.direct_sum(sl2(), lie.heisenberg(1)),
    ]


rationals = st.fractions(min_value=-4, max_value=4, max_denominator=4)


@st.composite
def unimodular(draw, n):
    lo, up = la.identity(n), la.identity(n)
    for i in range(n):
        for j in range(i):
            lo[i, j] = Fraction(draw(st.integers(-2, 2)))
            up[j, i] = Fraction(draw(st.integers(-2, 2)))
    perm = draw(st.permutations(range(n)))
    return (lo @ up)[list(perm)]


@st.composite
def rebased_algebras(draw):
    """A catalog or textbook algebra written in a random integral basis."""
    alg = draw(st.sampled_from(base_algebras()))
    p = draw(unimodular(alg.dim))
    return lie.change_basis(alg, p)


@st.composite
def rational_matrices(draw, max_rows=5, max_cols=5):
    m = draw(st.integers(0, max_rows))
    n = draw(st.integers(1, max_cols))
    vals = draw(st.lists(rationals, min_size=m * n, max_size=m * n))
    return la.frac_array(vals).reshape(m, n) if m else la.zeros(0, n)


@pytest.fixture(scope="session")
def h3():
    return lie.heisenberg(1)


@pytest.fixture(scope="session")
def solv():
    return catalog.solvable_datum().alg


@pytest.fixture(scope="session")
def solv_datum():
    return catalog.solvable_datum()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
