"""Catalog fixtures: exact orbit data, splitting flags and example spaces.

Tags: ``solvable_nonsplit`` (the solvable group with a rotation block and
its 4-dimensional orbit), ``solvable_cover`` (the c = 0 subgroup and its
orbit covering the cylinder), ``kodaira_thurston`` (flat bundle over the
cylinder with torus fiber twisted by Dehn twists), ``galilei_ext`` (the
centrally extended Galilei group acting on a two-part system).

Exact algebras use the rescaled basis a' = E_a/2pi, c' = E_c/2pi,
e' = 2pi E_e of the solvable group, which keeps structure constants in
{0, 1, -1}; numeric fixtures keep the 2pi of the displays and convert
through ``CatalogGroup.dual_scale``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from . import groups as G
from . import lie
from . import linalg as la
from . import obstruction as ob
from .cohomology import group_cocycle_residual
from .errors import DomainError
from .splitting import Flags, SplittingInput
from .verify import ExampleSpace

TWO_PI = G.TWO_PI
GALILEI_MASS = 1.3
GALILEI_REDUCED_MASS = 0.7
GALILEI_SPRING = 0.4


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    tag: str
    summary: str
    datum: Callable
    flags: Flags
    spaces: Callable
    extra_checks: Callable
    witnesses: Callable
    extra_theta: Callable = lambda: ()

    def splitting_input(self) -> SplittingInput:
        d = self.datum()
        return SplittingInput.from_ideal(d.alg, d.ideal, self.flags, presentation=self.tag)


def _angle(z1, z2, near=None):
    q = np.arctan2(z2, z1) / TWO_PI
    if near is not None:
        q = q + np.round(near - q)
    return q


def _dq(z1, z2, v1, v2):
    return (z1 * v2 - z2 * v1) / (TWO_PI * (z1 * z1 + z2 * z2))


def _coadjoint_vel(grp: G.CatalogGroup, x, xi_dual):
    """Display-coordinate velocity of the infinitesimal coadjoint action."""
    v = lie.coadjoint_op(grp.algebra, np.asarray(x, dtype=float)) @ xi_dual
    return v / grp.dual_scale


# --------------------------------------------------------------------------
# solvable group: exact datum


@lru_cache(maxsize=None)
def solvable_datum() -> ob.OrbitDatum:
    g = G.group("solvable_nonsplit").algebra
    n = lie.span_labels(g, "a", "b1", "b2", "f")
    return ob.OrbitDatum.build(g, n, [0, 1, 0, -1], lie.span_labels(g, "c", "e"), name="solvable_nonsplit")


A_CHECK_DISPLAY = np.array([0.0, 1.0, 0.0, 0.0, 0.0, 1.0])


def theta_golden_display(c, e, l45) -> np.ndarray:
    """(p, z1, z2, r, s, t) = (0, 0, 0, -e, c - l45, 0)."""
    return np.array([0.0, 0.0, 0.0, -e, c - l45, 0.0])


def theta_closed_form_exact(a: int, jb, c, e) -> np.ndarray:
    """a_check - g(a_check) by the exact closed form, display coordinates.

    Stabilizer elements of a have integer a and Re(jb) = -e.
    """
    u, _ = (la.to_fraction(v) for v in jb)
    if u != -la.to_fraction(e):
        raise DomainError("element does not stabilize a (need Re(jb) = -e)")
    ach = la.frac_array([0, 1, 0, 0, 0, 1])
    return ach - G.closed_form_solvable_action_exact(a, jb, c, e, 0, ach)


def theta_word_golden(word: lie.ExpWord) -> np.ndarray:
    """Golden theta in the exact dual basis for a word in the identity component of L.

    In the exact basis, exp(gamma c' + eps (b2 + e') + ...) has group
    parameters c = gamma/2pi and e = 2pi eps, so (0, 0, -e, c - 0, 0) in
    display coordinates reads (0, 0, 0, eps, -gamma, 0) on the dual basis.
    """
    eps = sum((x[4] for x in word.factors), Fraction(0))
    gam = sum((x[3] for x in word.factors), Fraction(0))
    return la.frac_array([0, 0, 0, eps, -gam, 0])


def random_l_vector(rng, scale: int = 5) -> np.ndarray:
    """Random exact element of l = span{b1, b2 + e', c', f}."""
    coef = [Fraction(int(rng.integers(-scale, scale + 1)), int(rng.integers(1, scale + 1))) for _ in range(4)]
    b1, eps, gam, f = coef
    return la.frac_array([0, b1, eps, gam, eps, f])


def random_l_word(rng, g: lie.LieAlgebra, factors: int = 3) -> lie.ExpWord:
    return lie.ExpWord(g, tuple(random_l_vector(rng) for _ in range(int(rng.integers(1, factors + 1)))))


def random_l_element(rng, tag: str = "solvable_nonsplit", max_a: int = 3):
    """Float element of the stabilizer L: integer a, b2 = e/2pi."""
    a = int(rng.integers(-max_a, max_a + 1))
    b1, c, e, f = rng.uniform(-1, 1, 4)
    c = 0.0 if tag == "solvable_cover" else c
    return G.solvable_element(a, b1, e / TWO_PI, c, e, f, tag=tag), (a, b1, e / TWO_PI, c, e, f)


def random_solvable_element(rng, tag: str = "solvable_nonsplit"):
    a, b1, b2, c, e, f = rng.uniform(-1, 1, 6)
    if tag in ("solvable_cover", "kodaira_thurston"):
        c = 0.0
    if tag == "kodaira_thurston":
        e = 0.0
    return G.solvable_element(a, b1, b2, c, e, f, tag=tag), (a, b1, b2, c, e, f)


def random_n_element(rng, tag: str = "solvable_nonsplit"):
    a, b1, b2, f = rng.uniform(-1, 1, 4)
    return G.solvable_element(a, b1, b2, 0.0, 0.0, f, tag=tag)


@dataclass(frozen=True)
class CoverElement:
    """[[n, l]] with n in N and l in L; product [[n l n' l^-1, l l']]."""

    n: G.MatrixGroupElement
    l: G.MatrixGroupElement

    @property
    def tag(self) -> str:
        return self.n.tag

    @property
    def g(self) -> G.MatrixGroupElement:
        return self.n @ self.l

    def __matmul__(self, other: CoverElement) -> CoverElement:
        return CoverElement(self.n @ self.l @ other.n @ self.l.inverse(), self.l @ other.l)


def ucov_matrix(p: float, q: float, tag: str = "solvable_nonsplit") -> np.ndarray:
    """n(p, q) in N with a = q and b = p e^{jq}/j, so n(a_check) = (p, e^{jq}, 0, q, 1)."""
    b = p * np.exp(TWO_PI * 1j * q) / (TWO_PI * 1j)
    return G.solvable_matrix(q, b.real, b.imag, 0.0, 0.0, 0.0)


@lru_cache(maxsize=None)
def _solvable_spaces():
    grp = G.group("solvable_nonsplit")
    alg = grp.algebra
    sc = grp.dual_scale
    datum = solvable_datum()
    a_float = datum.a.astype(float)
    ideal = datum.ideal

    def display_x(pt):
        p, q, r, s = pt
        return np.array([p, np.cos(TWO_PI * q), np.sin(TWO_PI * q), r, s, 1.0])

    def moment_x(pt):
        return display_x(pt) * sc

    def vf_x(x, pt):
        pv = _coadjoint_vel(grp, x, moment_x(pt))
        z = display_x(pt)
        return np.array([pv[0], _dq(z[1], z[2], pv[1], pv[2]), pv[3], pv[4]])

    w_x = np.array([[0, 1, 0, 0], [-1, 0, 1, 0], [0, -1, 0, 1], [0, 0, -1, 0]], dtype=float)

    def act_x(g, pt):
        new = G.coadjoint_group_action(g, G.DualPoint(display_x(pt), grp.tag)).coords
        return np.array([new[0], _angle(new[1], new[2], pt[1]), new[3], new[4]])

    def fiber_x(rng):
        return np.array([0.0, float(rng.integers(-2, 3)), *rng.uniform(-1, 1, 2)])

    X = ExampleSpace(
        name="X", tag=grp.tag, chart_dim=4, algebra=alg,
        omega=lambda pt: w_x, moment=moment_x, vector_field=vf_x,
        sample=lambda rng: rng.uniform(-1, 1, 4), group_action=act_x,
        ideal=ideal, fiber_a=a_float, sample_fiber=fiber_x, is_orbit=True,
        notes="orbit {(p, e^{jq}, r, s, 1)}, omega = dp^dq + dq^dr + dr^ds",
    )

    def display_u(pt):
        p, q = pt
        return np.array([p, np.cos(TWO_PI * q), np.sin(TWO_PI * q), 0.0, q, 1.0])

    def moment_u(pt):
        return display_u(pt) * sc

    def vf_u(x, pt):
        pv = _coadjoint_vel(grp, x, moment_u(pt))
        z = display_u(pt)
        return np.array([pv[0], _dq(z[1], z[2], pv[1], pv[2])])

    def act_u(gc: CoverElement, pt):
        n1 = ucov_matrix(*pt)
        li = np.linalg.inv(gc.l.entries)
        new = gc.n.entries @ gc.l.entries @ n1 @ li
        q = new[4, 5]
        p = G.coadjoint_group_action(G.MatrixGroupElement(new, grp.tag), G.DualPoint(A_CHECK_DISPLAY, grp.tag)).coords[0]
        return np.array([p, q])

    def fiber_u(rng):
        return np.array([0.0, float(rng.integers(-2, 3))])

    U = ExampleSpace(
        name="Ucov", tag=grp.tag, chart_dim=2, algebra=alg,
        omega=lambda pt: np.array([[0.0, 1.0], [-1.0, 0.0]]), moment=moment_u, vector_field=vf_u,
        sample=lambda rng: rng.uniform(-1, 1, 2), group_action=act_u,
        ideal=ideal, fiber_a=a_float, sample_fiber=fiber_u,
        notes="universal cover of the cylinder orbit, non-equivariant moment (p, e^{jq}, 0, q, 1)",
    )
    return [X, U]


def _solvable_checks():
    grp = G.group("solvable_nonsplit")
    datum = solvable_datum()

    def closed_vs_generic(rng, n):
        vals = []
        for _ in range(n):
            g, params = random_solvable_element(rng)
            pt = np.r_[rng.uniform(-1, 1, 5), 1.0]
            generic = G.coadjoint_group_action(g, G.DualPoint(pt, grp.tag)).coords
            vals.append(np.abs(generic - G.closed_form_solvable_action(params, pt)).max())
        return vals, 1e-9, {}

    def action_axiom(rng, n):
        vals = []
        for _ in range(n):
            g, _ = random_solvable_element(rng)
            h, _ = random_solvable_element(rng)
            pt = G.DualPoint(np.r_[rng.uniform(-1, 1, 5), 1.0], grp.tag)
            lhs = G.coadjoint_group_action(g @ h, pt).coords
            rhs = G.coadjoint_group_action(g, G.coadjoint_group_action(h, pt)).coords
            vals.append(np.abs(lhs - rhs).max())
        return vals, 1e-8, {}

    def t_preserved(rng, n):
        vals = []
        for _ in range(n):
            g, _ = random_solvable_element(rng)
            xi = grp.to_dual(np.r_[rng.uniform(-1, 1, 5), 1.0])
            vals.append(abs(grp.to_display(G.coadjoint_dual(grp, g, xi))[5] - 1.0))
        return vals, 1e-12, {}

    def theta_numeric(rng, n):
        vals = []
        for _ in range(n):
            l, (a, _, _, c, e, _) = random_l_element(rng)
            th = grp.to_display(ob.theta(datum, l))
            vals.append(np.abs(th - theta_golden_display(c, e, a)).max())
        return vals, 1e-9, {}

    def theta_cocycle(rng, n):
        vals = []

        def th(x):
            return ob.theta(datum, x)

        def act(x, v):
            return G.coadjoint_dual(grp, x, v)

        for _ in range(n):
            l1, _ = random_l_element(rng)
            l2, _ = random_l_element(rng)
            vals.append(group_cocycle_residual(th, l1, l2, act))
        return vals, 1e-8, {}

    def equivariance_ucov(rng, n):
        from .verify import equivariance_residual

        U = _solvable_spaces()[1]
        vals = []
        for _ in range(n):
            l, (a, _, _, c, e, _) = random_l_element(rng)
            gc = CoverElement(random_n_element(rng), l)
            pt = rng.uniform(-1, 1, 2)
            th = ob.theta(datum, l)
            golden = grp.to_dual(theta_golden_display(c, e, a))
            r1 = equivariance_residual(U, gc, pt, th, lambda x, v: G.coadjoint_dual(grp, x.g, v))
            r2 = equivariance_residual(U, gc, pt, golden, lambda x, v: G.coadjoint_dual(grp, x.g, v))
            vals.append(max(r1, r2))
        return vals, 1e-8, {}

    def equivariance_n(rng, n):
        from .verify import equivariance_residual

        U = _solvable_spaces()[1]
        vals = []
        ident = G.MatrixGroupElement.identity(grp.tag)
        for _ in range(n):
            gc = CoverElement(random_n_element(rng), ident)
            pt = rng.uniform(-1, 1, 2)
            vals.append(equivariance_residual(U, gc, pt, np.zeros(6), lambda x, v: G.coadjoint_dual(grp, x.g, v)))
        return vals, 1e-8, {}

    def equivariance_x(rng, n):
        from .verify import equivariance_residual

        X = _solvable_spaces()[0]
        vals = []
        for _ in range(n):
            g, _ = random_solvable_element(rng)
            pt = rng.uniform(-1, 1, 4)
            vals.append(equivariance_residual(X, g, pt, np.zeros(6), lambda x, v: G.coadjoint_dual(grp, x, v)))
        return vals, 1e-8, {}

    return [
        ("closed_form_vs_generic", closed_vs_generic),
        ("coadjoint_action_axiom", action_axiom),
        ("t_hyperplane_preserved", t_preserved),
        ("theta_golden_numeric", theta_numeric),
        ("theta_cocycle_identity", theta_cocycle),
        ("equivariance_defect[Ucov]", equivariance_ucov),
        ("equivariance_N[Ucov]", equivariance_n),
        ("equivariance[X]", equivariance_x),
    ]


def _solvable_witnesses():
    datum = solvable_datum()
    g = datum.alg
    out = []
    for label, vec in (
        ("exp(c')", [0, 0, 0, 1, 0, 0]),
        ("exp(b2+e')", [0, 0, 1, 0, 1, 0]),
        ("exp(b1)", [0, 1, 0, 0, 0, 0]),
        ("exp(f)", [0, 0, 0, 0, 0, 1]),
    ):
        out.append((label, lie.ExpWord(g, (la.frac_array(vec),))))
    return out


def _solvable_extra_theta():
    """Closed-form exact values on the non-identity components, display coordinates."""
    ach = la.frac_array([0, 1, 0, 0, 0, 1])
    out = []
    for a, c, e in ((1, 0, 0), (2, Fraction(1, 2), Fraction(-1, 3))):
        v = theta_closed_form_exact(a, (-e, 0), c, e)
        # w - g(w) over the annihilator directions r, s, via the affine action at t = 1
        base = G.closed_form_solvable_action_exact(a, (-e, 0), c, e, 0, ach)
        rng = [w - (G.closed_form_solvable_action_exact(a, (-e, 0), c, e, 0, ach + w) - base)
               for w in (la.unit(6, 3), la.unit(6, 4))]
        certifies = all(la.is_zero(x) for x in rng) and not la.is_zero(v)
        out.append((f"closed form a={a}, c={c}, e={e} (display coords)", v, certifies))
    return out


# --------------------------------------------------------------------------
# solvable cover


@lru_cache(maxsize=None)
def cover_datum() -> ob.OrbitDatum:
    h = G.group("solvable_cover").algebra
    n = lie.span_labels(h, "a", "b1", "b2", "f")
    return ob.OrbitDatum.build(h, n, [0, 1, 0, -1], lie.span_labels(h, "e"), name="solvable_cover")


@lru_cache(maxsize=None)
def _cover_spaces():
    grp = G.group("solvable_cover")
    sc = grp.dual_scale
    datum = cover_datum()

    def display(pt):
        p, q = pt
        return np.array([p, np.cos(TWO_PI * q), np.sin(TWO_PI * q), q, 1.0])

    def moment(pt):
        return display(pt) * sc

    def vf(x, pt):
        pv = _coadjoint_vel(grp, x, moment(pt))
        z = display(pt)
        return np.array([pv[0], _dq(z[1], z[2], pv[1], pv[2])])

    def act(g, pt):
        new = G.coadjoint_group_action(g, G.DualPoint(display(pt), grp.tag)).coords
        return np.array([new[0], new[3]])

    Y = ExampleSpace(
        name="Y", tag=grp.tag, chart_dim=2, algebra=grp.algebra,
        omega=lambda pt: np.array([[0.0, 1.0], [-1.0, 0.0]]), moment=moment, vector_field=vf,
        sample=lambda rng: rng.uniform(-1, 1, 2), group_action=act,
        ideal=datum.ideal, fiber_a=datum.a.astype(float),
        sample_fiber=lambda rng: np.array([0.0, float(rng.integers(-2, 3))]), is_orbit=True,
        notes="orbit {(p, e^{jq}, q, 1)} of the c = 0 subgroup, omega = dp^dq",
    )
    return [Y]


def _cover_checks():
    grp = G.group("solvable_cover")

    def action_axiom(rng, n):
        vals = []
        for _ in range(n):
            g, _ = random_solvable_element(rng, grp.tag)
            h, _ = random_solvable_element(rng, grp.tag)
            pt = G.DualPoint(np.r_[rng.uniform(-1, 1, 4), 1.0], grp.tag)
            lhs = G.coadjoint_group_action(g @ h, pt).coords
            rhs = G.coadjoint_group_action(g, G.coadjoint_group_action(h, pt)).coords
            vals.append(np.abs(lhs - rhs).max())
        return vals, 1e-8, {}

    def fiber_is_discrete(rng, n):
        # Gamma = Z translates the discrete fiber {q in Z}: a = 1 moves q by 1
        Y = _cover_spaces()[0]
        vals = []
        for _ in range(n):
            k = int(rng.integers(-3, 4))
            z = np.array([0.0, float(rng.integers(-2, 3))])
            gamma = G.solvable_element(k, 0.0, 0.0, 0.0, 0.0, 0.0, tag=grp.tag)
            moved = Y.group_action(gamma, z)
            vals.append(abs(moved[1] - z[1] - k) + abs(moved[0]))
        return vals, 1e-12, {}

    return [("coadjoint_action_axiom", action_axiom), ("gamma_translates_fiber", fiber_is_discrete)]


# --------------------------------------------------------------------------
# Kodaira-Thurston


@lru_cache(maxsize=None)
def kt_datum() -> ob.OrbitDatum:
    n = G.group("kodaira_thurston").algebra
    return ob.OrbitDatum.build(n, lie.whole(n), [0, 1, 0, -1], lie.zero_subspace(n), name="kodaira_thurston")


@lru_cache(maxsize=None)
def _kt_spaces():
    grp = G.group("kodaira_thurston")
    sc = grp.dual_scale
    datum = kt_datum()

    def display(pt):
        p, q = pt[0], pt[1]
        return np.array([p, np.cos(TWO_PI * q), np.sin(TWO_PI * q), 1.0])

    def moment(pt):
        return display(pt) * sc

    def vf(x, pt):
        pv = _coadjoint_vel(grp, x, moment(pt))
        z = display(pt)
        return np.array([pv[0], _dq(z[1], z[2], pv[1], pv[2]), 0.0, 0.0])

    om = np.zeros((4, 4))
    om[0, 1], om[1, 0], om[2, 3], om[3, 2] = 1, -1, 1, -1

    def act(n, pt):
        m = n.entries @ ucov_matrix(pt[0], pt[1])
        p = G.coadjoint_group_action(G.MatrixGroupElement(m, grp.tag), G.DualPoint(np.array([0.0, 1, 0, 1]), grp.tag)).coords[0]
        return np.array([p, m[4, 5], pt[2], pt[3]])

    X = ExampleSpace(
        name="X", tag=grp.tag, chart_dim=4, algebra=grp.algebra,
        omega=lambda pt: om, moment=moment, vector_field=vf,
        sample=lambda rng: rng.uniform(-1, 1, 4), group_action=act,
        ideal=datum.ideal, fiber_a=datum.a.astype(float),
        sample_fiber=lambda rng: np.array([0.0, float(rng.integers(-2, 3)), *rng.uniform(-1, 1, 2)]),
        notes="plane x torus with omega = dp^dq + drho^dsigma, quotient by the Dehn twist",
    )
    return [X]


def _kt_checks():
    grp = G.group("kodaira_thurston")

    def axioms(rng, n):
        vals = []
        for _ in range(n):
            pt = la.frac_array([Fraction(int(rng.integers(-50, 50)), int(rng.integers(1, 20))) for _ in range(4)])
            k, m = (int(v) for v in rng.integers(-5, 6, 2))
            zero = G.dehn_twist(0, pt)
            comp = G.dehn_twist(k, G.dehn_twist(m, pt))
            vals.append(0.0 if (np.array_equal(zero, pt) and np.array_equal(comp, G.dehn_twist(k + m, pt))) else 1.0)
        return vals, 0.5, {"exact": True}

    def invariants(rng, n):
        vals = []
        for _ in range(n):
            pt = rng.uniform(-1, 1, 4)
            k = int(rng.integers(-5, 6))
            vals.append(np.abs(G.twist_invariants(G.dehn_twist(k, pt)) - G.twist_invariants(pt)).max())
        return vals, 1e-12, {}

    def twist_symplectic(rng, n):
        # the twist's linear part preserves dp^dq + drho^dsigma
        om = _kt_spaces()[0].omega(None)
        vals = []
        for _ in range(n):
            k = int(rng.integers(-5, 6))
            jac = np.eye(4)
            jac[2, 3] = k
            vals.append(np.abs(jac.T @ om @ jac - om).max())
        return vals, 1e-12, {}

    def twist_commutes_with_n(rng, n):
        X = _kt_spaces()[0]
        vals = []
        for _ in range(n):
            pt = rng.uniform(-1, 1, 4)
            k = int(rng.integers(-3, 4))
            g = random_n_element(rng, grp.tag)
            lhs = G.dehn_twist(k, X.group_action(g, pt))
            rhs = X.group_action(g, G.dehn_twist(k, pt))
            vals.append(0.0 if G.same_torus_point(lhs, rhs, 1e-9) else 1.0)
        return vals, 0.5, {}

    return [
        ("dehn_twist_axioms", axioms),
        ("dehn_twist_invariants", invariants),
        ("dehn_twist_symplectic", twist_symplectic),
        ("dehn_twist_commutes_with_N", twist_commutes_with_n),
    ]


# --------------------------------------------------------------------------
# Galilei


@lru_cache(maxsize=None)
def galilei_datum(mass=Fraction(13, 10)) -> ob.OrbitDatum:
    g = G.group("galilei_ext").algebra
    n = lie.span_labels(g, "beta1", "beta2", "beta3", "gamma1", "gamma2", "gamma3", "phi")
    a = [0, 0, 0, 0, 0, 0, -la.to_fraction(mass)]
    comp = lie.span_labels(g, "w1", "w2", "w3", "eps")
    return ob.OrbitDatum.build(g, n, a, comp, name="galilei_ext")


def _cross(u, v):
    return np.array([u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]])


def galilei_orbit_part(pt, M=GALILEI_MASS) -> np.ndarray:
    """M (R x V, R, V, |V|^2/2, 1) in display coordinates."""
    R, V = pt[:3], pt[3:6]
    return M * np.concatenate([_cross(R, V), R, V, [0.5 * V @ V, 1.0]])


def galilei_proper_part(pt, mu=GALILEI_REDUCED_MASS, kappa=GALILEI_SPRING) -> np.ndarray:
    """(r x pi, 0, 0, E', 0) with E' = |pi|^2/2mu + kappa |r|^2/2."""
    r, pi = pt[6:9], pt[9:12]
    energy = pi @ pi / (2 * mu) + kappa * r @ r / 2
    return np.concatenate([_cross(r, pi), np.zeros(6), [energy, 0.0]])


def _oscillator_flow(r, pi, t, mu=GALILEI_REDUCED_MASS, kappa=GALILEI_SPRING):
    w = np.sqrt(kappa / mu)
    c, s = np.cos(w * t), np.sin(w * t)
    return r * c + pi * s / (mu * w), -mu * w * r * s + pi * c


@lru_cache(maxsize=None)
def _galilei_spaces(M=GALILEI_MASS, mu=GALILEI_REDUCED_MASS, kappa=GALILEI_SPRING):
    grp = G.group("galilei_ext")
    sc = grp.dual_scale
    datum = galilei_datum()
    a_check = grp.to_dual(np.r_[np.zeros(10), M])

    def moment(pt):
        # orbit part through the group: the Heisenberg element with c = R, b = V
        n_inv = np.linalg.inv(G.galilei_matrix(np.eye(3), pt[3:6], pt[:3], 0.0, 0.0))
        return grp.ad_group(n_inv).T @ a_check + galilei_proper_part(pt, mu, kappa) * sc

    def vf(x, pt):
        xi_u = galilei_orbit_part(pt, M) * sc
        d = _coadjoint_vel(grp, x, xi_u)
        r, pi = pt[6:9], pt[9:12]
        w, eps = x[:3], x[9]
        dr = _cross(w, r) - eps * pi / mu
        dpi = _cross(w, pi) + eps * kappa * r
        return np.concatenate([d[3:6] / M, d[6:9] / M, dr, dpi])

    om = np.zeros((12, 12))
    for i in range(3):
        om[3 + i, i], om[i, 3 + i] = M, -M
        om[9 + i, 6 + i], om[6 + i, 9 + i] = 1, -1

    def act(g, pt):
        new = grp.to_display(G.coadjoint_dual(grp, g, galilei_orbit_part(pt, M) * sc))
        A, _, _, e, _ = G.galilei_params(g.entries)
        r, pi = _oscillator_flow(pt[6:9], pt[9:12], -e, mu, kappa)
        return np.r_[new[3:6] / M, new[6:9] / M, A @ r, A @ pi]

    def fiber(rng):
        return np.r_[np.zeros(6), rng.uniform(-1, 1, 6)]

    X = ExampleSpace(
        name="X", tag=grp.tag, chart_dim=12, algebra=grp.algebra,
        omega=lambda pt: om, moment=moment, vector_field=vf,
        sample=lambda rng: rng.uniform(-1, 1, 12), group_action=act,
        ideal=datum.ideal, fiber_a=lie.restrict(a_check, datum.ideal),
        sample_fiber=fiber,
        notes="U x Z, U = (R^6, M dV^dR), Z = isotropic oscillator (R^6, dpi^dr)",
    )

    def moment_u(pt):
        return galilei_orbit_part(pt, M) * sc

    def vf_u(x, pt):
        d = _coadjoint_vel(grp, x, moment_u(pt))
        return np.concatenate([d[3:6] / M, d[6:9] / M])

    U = ExampleSpace(
        name="U", tag=grp.tag, chart_dim=6, algebra=grp.algebra,
        omega=lambda pt: om[:6, :6], moment=moment_u, vector_field=vf_u,
        sample=lambda rng: rng.uniform(-1, 1, 6), is_orbit=True,
        notes="orbit (R^6, M dV^dR) of a_check = (0, 0, 0, 0, M)",
    )
    return [X, U]


def _galilei_checks():
    grp = G.group("galilei_ext")
    sc = grp.dual_scale

    def rand_g(rng):
        return G.galilei_element(G.random_rotation(rng), *rng.uniform(-1, 1, (2, 3)), *rng.uniform(-1, 1, 2))

    def action_axiom(rng, n):
        vals = []
        for _ in range(n):
            g, h = rand_g(rng), rand_g(rng)
            pt = G.DualPoint(rng.uniform(-1, 1, 11), grp.tag)
            lhs = G.coadjoint_group_action(g @ h, pt).coords
            rhs = G.coadjoint_group_action(g, G.coadjoint_group_action(h, pt)).coords
            vals.append(np.abs(lhs - rhs).max())
        return vals, 1e-8, {}

    def mass_fixed(rng, n):
        vals = []
        for _ in range(n):
            xi = rng.uniform(-1, 1, 11)
            vals.append(abs(grp.to_display(G.coadjoint_dual(grp, rand_g(rng), grp.to_dual(xi)))[10] - xi[10]))
        return vals, 1e-12, {}

    def koenig(rng, n):
        from .verify import koenig_split_residual

        X = _galilei_spaces()[0]
        parts = (lambda pt: galilei_orbit_part(pt) * sc, lambda pt: galilei_proper_part(pt) * sc)
        vals = []
        for i in range(n):
            pt = rng.uniform(-1, 1, 12)
            if i == 0:
                pt[:6] = 0.0
            vals.append(koenig_split_residual(X, pt, parts))
        return vals, 1e-9, {}

    def koenig_mass_scaling(rng, n):
        from .verify import koenig_split_residual

        X1, X2 = _galilei_spaces(M=1.0)[0], _galilei_spaces(M=2.0)[0]
        vals = []
        for _ in range(n):
            pt = rng.uniform(-1, 1, 12)
            u1, u2 = galilei_orbit_part(pt, 1.0), galilei_orbit_part(pt, 2.0)
            z = galilei_proper_part(pt)
            r1 = koenig_split_residual(X1, pt, (lambda p: u1 * sc, lambda p: z * sc))
            r2 = koenig_split_residual(X2, pt, (lambda p: 2 * u1 * sc, lambda p: z * sc))
            vals.append(max(r1, r2, np.abs(u2 - 2 * u1).max()))
        return vals, 1e-9, {}

    def equivariance(rng, n):
        from .verify import equivariance_residual

        X = _galilei_spaces()[0]
        vals = []
        for _ in range(n):
            g = rand_g(rng)
            pt = rng.uniform(-1, 1, 12)
            vals.append(equivariance_residual(X, g, pt, np.zeros(11), lambda x, v: G.coadjoint_dual(grp, x, v)))
        return vals, 1e-8, {}

    def theta_vanishes(rng, n):
        datum = galilei_datum()
        vals = []
        for _ in range(n):
            A = G.random_rotation(rng)
            g = G.galilei_element(A, (0, 0, 0), (0, 0, 0), rng.uniform(-1, 1), rng.uniform(-1, 1))
            vals.append(np.abs(ob.theta(datum, g)).max())
        return vals, 1e-9, {}

    return [
        ("coadjoint_action_axiom", action_axiom),
        ("mass_fixed", mass_fixed),
        ("koenig_split", koenig),
        ("koenig_mass_scaling", koenig_mass_scaling),
        ("equivariance[X]", equivariance),
        ("theta_vanishes_on_L", theta_vanishes),
    ]


def _galilei_witnesses():
    datum = galilei_datum()
    g = datum.alg
    out = []
    for label in ("eps", "phi"):
        out.append((f"exp({label})", lie.ExpWord(g, (g.basis_vector(label),))))
    return out


# --------------------------------------------------------------------------
# registry


ENTRIES = {
    "solvable_nonsplit": CatalogEntry(
        tag="solvable_nonsplit",
        summary="solvable group with rotation block; orbit X is primary over a cylinder and splits in no way",
        datum=solvable_datum,
        flags=Flags(N_connected=True, U_simply_connected=False, stabilizer_connected=False,
                    fiber_connected=True, gamma_acts_trivially=False, N_compact=False, N_exponential=False),
        spaces=_solvable_spaces,
        extra_checks=_solvable_checks,
        witnesses=_solvable_witnesses,
        extra_theta=_solvable_extra_theta,
    ),
    "solvable_cover": CatalogEntry(
        tag="solvable_cover",
        summary="orbit Y of the c = 0 subgroup; universal cover of the cylinder with discrete fiber",
        datum=cover_datum,
        flags=Flags(N_connected=True, U_simply_connected=False, stabilizer_connected=False,
                    fiber_connected=False, gamma_acts_trivially=False, N_compact=False, N_exponential=False),
        spaces=_cover_spaces,
        extra_checks=_cover_checks,
        witnesses=lambda: [(lab, lie.ExpWord(cover_datum().alg, (v,))) for lab, v in (
            ("exp(b2+e')", la.frac_array([0, 0, 1, 1, 0])),
            ("exp(b1)", la.frac_array([0, 1, 0, 0, 0])),
        )],
    ),
    "kodaira_thurston": CatalogEntry(
        tag="kodaira_thurston",
        summary="flat bundle over the cylinder with torus fiber twisted by powers of a Dehn twist",
        datum=kt_datum,
        flags=Flags(N_connected=True, U_simply_connected=False, stabilizer_connected=False,
                    fiber_connected=True, gamma_acts_trivially=False, N_compact=False, N_exponential=False),
        spaces=_kt_spaces,
        extra_checks=_kt_checks,
        witnesses=lambda: [("exp(b1)", lie.ExpWord(kt_datum().alg, (la.frac_array([0, 1, 0, 0]),)))],
    ),
    "galilei_ext": CatalogEntry(
        tag="galilei_ext",
        summary="centrally extended Galilei group on a free system U x Z (barycentric and proper parts)",
        datum=galilei_datum,
        flags=Flags(N_connected=True, U_simply_connected=True, stabilizer_connected=True,
                    fiber_connected=True, gamma_acts_trivially=True),
        spaces=_galilei_spaces,
        extra_checks=_galilei_checks,
        witnesses=_galilei_witnesses,
    ),
}


def entry(tag: str) -> CatalogEntry:
    try:
        return ENTRIES[tag]
    except KeyError:
        raise DomainError(f"unknown fixture {tag!r}; known: {sorted(ENTRIES)}") from None


def tags() -> list[str]:
    return sorted(ENTRIES)
