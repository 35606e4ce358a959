from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mackey import catalog
from mackey import groups as G
from mackey import linalg as la
from mackey.errors import DomainError

A_CHECK = np.array([0.0, 1.0, 0.0, 0.0, 0.0, 1.0])
finite = st.floats(-2, 2, allow_nan=False)


def test_exp_zero_and_nilpotent():
    assert np.allclose(G.exp_matrix(np.zeros((3, 3))), np.eye(3))
    x = la.zeros(3, 3)
    x[0, 2] = Fraction(5, 3)
    e = G.exp_matrix(x)
    assert e.dtype == object and np.array_equal(e, la.identity(3) + x)


def test_exp_rotation_quarter_turn():
    j = np.array([[0.0, -1.0], [1.0, 0.0]])
    assert np.allclose(G.exp_matrix(2 * np.pi * j * 0.25), [[0, -1], [1, 0]], atol=1e-14)


def test_exp_rejects_exact_non_nilpotent_and_bad_shape():
    with pytest.raises(DomainError):
        G.exp_matrix(la.identity(2))
    with pytest.raises(DomainError):
        G.exp_matrix(np.zeros((2, 3)))


def test_exp_of_generators_matches_group_display():
    grp = G.group("solvable_nonsplit")
    # one-parameter subgroups of a', b1 and f land on the display matrices
    assert np.allclose(grp.exp([0.3, 0, 0, 0, 0, 0]).entries, G.solvable_matrix(0.3 / (2 * np.pi), 0, 0, 0, 0, 0))
    assert np.allclose(grp.exp([0, 0, 0, 0, 0, 0.7]).entries, G.solvable_matrix(0, 0, 0, 0, 0, 0.7))
    assert np.allclose(grp.exp([0, 0.4, 0, 0, 0, 0]).entries, G.solvable_matrix(0, 0.4, 0, 0, 0, 0))


def test_matrix_element_validation():
    with pytest.raises(DomainError):
        G.MatrixGroupElement(np.zeros((6, 6)), "solvable_nonsplit")
    bad = G.solvable_matrix(0, 0, 0, 0, 0, 0)
    bad[5, 0] = 1.0
    with pytest.raises(DomainError):
        G.MatrixGroupElement(bad, "solvable_nonsplit")
    with pytest.raises(DomainError):
        G.solvable_element(c=1.0, tag="solvable_cover")
    with pytest.raises(DomainError):
        G.group("bogus")


def test_identity_acts_trivially():
    for tag in ("solvable_nonsplit", "galilei_ext"):
        grp = G.group(tag)
        pt = G.DualPoint(np.arange(1, grp.dim + 1, dtype=float), tag)
        out = G.coadjoint_group_action(G.MatrixGroupElement.identity(tag), pt)
        assert np.allclose(out.coords, pt.coords)


def test_closed_form_examples():
    assert np.allclose(G.closed_form_solvable_action((0, 0, 0, 0, 0, 0), A_CHECK), A_CHECK)
    assert np.allclose(G.closed_form_solvable_action((0, 0, 0, 0, 1, 0), A_CHECK), [1, 1, 0, 1, 0, 1])
    assert np.allclose(G.closed_form_solvable_action((1, 0, 0, 0, 0, 0), A_CHECK), [0, 1, 0, 0, 1, 1])
    with pytest.raises(DomainError):
        G.closed_form_solvable_action((0,) * 6, [0, 1, 0, 0, 0, 2])


def test_closed_form_exact_matches_float():
    pt = la.frac_array(["1/2", "3/5", "4/5", "-1", "2/3", 1])
    out = G.closed_form_solvable_action_exact(2, ("1/3", "-2/7"), "1/4", "3/2", 0, pt)
    assert out.dtype == object
    b = complex(Fraction(1, 3), Fraction(-2, 7)) / (2j * np.pi)
    flt = G.closed_form_solvable_action((2, b.real, b.imag, 0.25, 1.5, 0), pt.astype(float))
    assert np.allclose(out.astype(float), flt, atol=1e-12)
    with pytest.raises(DomainError):
        G.closed_form_solvable_action_exact(Fraction(1, 2), (0, 0), 0, 0, 0, pt)


@given(st.tuples(*[finite] * 6), st.tuples(finite, st.floats(0, 1), finite, finite))
def test_closed_form_equals_first_principles(params, pt):
    p, q, r, s = pt
    point = np.array([p, np.cos(2 * np.pi * q), np.sin(2 * np.pi * q), r, s, 1.0])
    g = G.solvable_element(*params)
    generic = G.coadjoint_group_action(g, G.DualPoint(point, g.tag)).coords
    assert np.abs(generic - G.closed_form_solvable_action(params, point)).max() < 1e-9


def test_stabilizer_membership_examples():
    a = G.DualPoint(A_CHECK, "solvable_nonsplit")
    assert G.stabilizer_membership(G.MatrixGroupElement.identity("solvable_nonsplit"), a)
    g = G.solvable_element(a=1, b1=0.7, f=3.2)
    # in N_a: the ideal's dual coordinates are fixed, while s moves by a
    assert G.stabilizer_membership(g, a, coords=G.IDEAL_DUAL_COORDS["solvable_nonsplit"])
    assert not G.stabilizer_membership(g, a)
    assert not G.stabilizer_membership(G.solvable_element(a=0.5), a)


def test_stabilizer_elements_fix_a_check():
    rng = np.random.default_rng(3)
    a = G.DualPoint(A_CHECK, "solvable_nonsplit")
    for _ in range(20):
        g, (ia, b1, b2, c, e, f) = catalog.random_l_element(rng)
        moved = G.coadjoint_group_action(g, a).coords
        assert np.abs(moved[[0, 1, 2, 5]] - A_CHECK[[0, 1, 2, 5]]).max() < 1e-9


def test_tag_mismatch():
    with pytest.raises(DomainError):
        G.coadjoint_group_action(G.MatrixGroupElement.identity("galilei_ext"),
                                 G.DualPoint(A_CHECK, "solvable_nonsplit"))
    with pytest.raises(DomainError):
        G.DualPoint(np.zeros(3), "solvable_nonsplit")


@given(st.integers(-4, 4), st.integers(-4, 4), st.tuples(finite, finite, st.floats(0, 1), st.floats(0, 1)))
def test_dehn_twist_is_an_action(k, m, pt):
    pt = np.array(pt)
    assert G.same_torus_point(G.dehn_twist(k, G.dehn_twist(m, pt)), G.dehn_twist(k + m, pt))
    assert G.same_torus_point(G.dehn_twist(0, pt), pt)
    assert np.allclose(G.twist_invariants(G.dehn_twist(k, pt)), G.twist_invariants(pt))


def test_dehn_twist_exact_and_integer_only():
    pt = la.frac_array(["1/2", "1/3", "1/4", "1/5"])
    out = G.dehn_twist(3, pt)
    assert out.dtype == object and out[2] == Fraction(1, 4) + Fraction(3, 5)
    with pytest.raises(DomainError):
        G.dehn_twist(0.5, pt)


def test_galilei_mass_coordinate_fixed():
    rng = np.random.default_rng(7)
    grp = G.group("galilei_ext")
    for _ in range(10):
        g = G.galilei_element(G.random_rotation(rng), rng.normal(size=3), rng.normal(size=3), rng.normal(), rng.normal())
        pt = G.DualPoint(rng.normal(size=grp.dim), "galilei_ext")
        assert G.coadjoint_group_action(g, pt).coords[10] == pt.coords[10]


def test_random_rotation_is_special_orthogonal():
    A = G.random_rotation(np.random.default_rng(0))
    assert np.allclose(A.T @ A, np.eye(3)) and np.isclose(np.linalg.det(A), 1)


def test_display_dual_round_trip():
    grp = G.group("solvable_nonsplit")
    v = np.arange(6.0)
    assert np.allclose(grp.to_display(grp.to_dual(v)), v)
