"""Matrix realizations of the catalog groups and their coadjoint actions.

Each catalog group carries float generator matrices realizing the basis of
its exact Lie algebra, plus a diagonal change of coordinates between the
display dual coordinates, e.g. ``(p, z1, z2, r, s, t)``,
and coefficients in the dual of that basis.

The generic coadjoint action is ``<g(xi), X> = <xi, g^-1 X g>``, evaluated
by conjugating generators and reading off coordinates by least squares.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import numpy as np

from . import lie
from . import linalg as la
from .errors import DomainError

TWO_PI = 2 * np.pi
PATTERN_TOL = 1e-12


def rot(t: float) -> np.ndarray:
    return np.array([[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]])


def hat(w) -> np.ndarray:
    """Cross-product matrix: hat(w) @ v == cross(w, v)."""
    return np.array([[0, -w[2], w[1]], [w[2], 0, -w[0]], [-w[1], w[0], 0]], dtype=float)


def _nilpotent_power(x: np.ndarray) -> int | None:
    """Smallest k with x^k == 0 exactly, or None."""
    n = x.shape[0]
    p = x
    for k in range(1, n + 1):
        if not np.any(p != 0):
            return k
        p = p @ x
    return None


def exp_matrix(x) -> np.ndarray:
    """Matrix exponential.

    Nilpotent input (detected by exact powers) gets the truncated series,
    which is exact for rational entries.  Otherwise scipy's Pade
    scaling-and-squaring is used; exact input that is not nilpotent raises,
    since its exponential is not rational in general.
    """
    x = np.asarray(x)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise DomainError("exp_matrix expects a square matrix")
    exact = x.dtype == object
    if not exact:
        x = x.astype(float)
        if not np.all(np.isfinite(x)):
            raise DomainError("exp_matrix: non-finite entries")
    k = _nilpotent_power(x)
    if k is None:
        if exact:
            raise DomainError("exact exponential only for nilpotent matrices")
        from scipy.linalg import expm

        return expm(x)
    n = x.shape[0]
    out = la.identity(n) if exact else np.eye(n)
    term = out
    for m in range(1, k):
        term = term @ x
        out = out + (term * Fraction(1, factorial(m)) if exact else term / factorial(m))
    return out


# --------------------------------------------------------------------------
# catalog groups


@dataclass(frozen=True, eq=False)
class CatalogGroup:
    """A matrix group with an exact Lie algebra and display dual coordinates.

    ``dual_scale[i]`` converts display coordinate i to the coefficient of the
    i-th dual basis vector: ``dual = dual_scale * display``.
    """

    tag: str
    size: int
    algebra: lie.LieAlgebra
    generators: tuple
    dual_scale: np.ndarray
    display_labels: tuple
    pattern: object = field(repr=False)
    fixed_coords: tuple = ()

    def __post_init__(self):
        b = np.array([g.ravel() for g in self.generators]).T
        object.__setattr__(self, "_basis", b)
        object.__setattr__(self, "_pinv", np.linalg.pinv(b))
        object.__setattr__(self, "_stack", np.array(self.generators, dtype=float))

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def coords(self, mat) -> np.ndarray:
        """Coordinates of a matrix in the generator basis (least squares)."""
        return self._pinv @ np.asarray(mat, dtype=float).ravel()

    def algebra_matrix(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.tensordot(x, np.array(self.generators), axes=1)

    def exp(self, x) -> MatrixGroupElement:
        return MatrixGroupElement(exp_matrix(self.algebra_matrix(x)), self.tag)

    def ad_group(self, g) -> np.ndarray:
        """Matrix of Ad(g) in the generator basis; column j is Ad(g) e_j."""
        m = g.entries.astype(float) if isinstance(g, MatrixGroupElement) else np.asarray(g, float)
        conj = m @ self._stack @ np.linalg.inv(m)
        return self._pinv @ conj.reshape(len(self.generators), -1).T

    def to_dual(self, display) -> np.ndarray:
        return np.asarray(display, dtype=float) * self.dual_scale

    def to_display(self, dual) -> np.ndarray:
        return np.asarray(dual, dtype=float) / self.dual_scale

    def check_pattern(self, entries) -> float:
        return float(self.pattern(np.asarray(entries, dtype=float)))


@dataclass(frozen=True, eq=False)
class MatrixGroupElement:
    entries: np.ndarray
    tag: str

    def __post_init__(self):
        e = np.asarray(self.entries)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise DomainError("group element must be a square matrix")
        if e.dtype != object:
            e = e.astype(float)
            if not np.all(np.isfinite(e)):
                raise DomainError("group element has non-finite entries")
            if abs(np.linalg.det(e)) < 1e-14:
                raise DomainError("group element is not invertible")
        object.__setattr__(self, "entries", e)
        if self.tag in GROUPS:
            grp = GROUPS[self.tag]
            if e.shape != (grp.size, grp.size):
                raise DomainError(f"{self.tag} elements are {grp.size}x{grp.size}")
            res = grp.check_pattern(e)
            if res > PATTERN_TOL * max(1.0, float(np.abs(e.astype(float)).max())):
                raise DomainError(f"matrix does not have the block pattern of {self.tag} ({res:.2e})")

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def __matmul__(self, other: MatrixGroupElement) -> MatrixGroupElement:
        if other.tag != self.tag:
            raise DomainError(f"group tag mismatch: {self.tag} vs {other.tag}")
        return MatrixGroupElement(self.entries @ other.entries, self.tag)

    def inverse(self) -> MatrixGroupElement:
        if self.entries.dtype == object:
            return MatrixGroupElement(la.inverse(self.entries), self.tag)
        return MatrixGroupElement(np.linalg.inv(self.entries), self.tag)

    @classmethod
    def identity(cls, tag: str) -> MatrixGroupElement:
        return cls(np.eye(GROUPS[tag].size), tag)


@dataclass(frozen=True)
class DualPoint:
    """Point of a dual space in display coordinates (complex entries split)."""

    coords: np.ndarray
    tag: str

    def __post_init__(self):
        c = np.asarray(self.coords)
        if c.dtype != object:
            c = c.astype(float)
        object.__setattr__(self, "coords", c)
        grp = GROUPS.get(self.tag)
        if grp is not None and c.shape != (grp.dim,):
            raise DomainError(f"{self.tag} dual points have {grp.dim} coordinates")


def _check_tags(g: MatrixGroupElement, a: DualPoint):
    if g.tag != a.tag:
        raise DomainError(f"group tag mismatch: element {g.tag}, point {a.tag}")


def coadjoint_group_action(g: MatrixGroupElement, a: DualPoint) -> DualPoint:
    """First-principles coadjoint action by conjugating the generators."""
    _check_tags(g, a)
    grp = GROUPS[g.tag]
    ad_inv = grp.ad_group(g.inverse())
    xi = grp.to_dual(a.coords)
    out = grp.to_display(ad_inv.T @ xi)
    for i in grp.fixed_coords:
        out[i] = a.coords[i]
    return DualPoint(out, a.tag)


def coadjoint_dual(grp: CatalogGroup, g: MatrixGroupElement, xi) -> np.ndarray:
    """Coadjoint action on basis-dual coefficients (no fixed-coordinate pinning)."""
    return grp.ad_group(g.inverse()).T @ np.asarray(xi, dtype=float)


def stabilizer_membership(g: MatrixGroupElement, a: DualPoint, tol: float = 1e-9, coords=None) -> bool:
    """True iff ||g(a) - a||_inf < tol.

    ``coords`` restricts the comparison to some display coordinates, e.g. the
    coordinates of an ideal's dual to test membership in N_a rather than G_a.
    """
    moved = coadjoint_group_action(g, a)
    d = moved.coords - a.coords
    if coords is not None:
        d = d[list(coords)]
    return bool(np.max(np.abs(d), initial=0.0) < tol)


# display coordinates of n* inside the dual of each solvable tag: (p, z1, z2, t)
IDEAL_DUAL_COORDS = {"solvable_nonsplit": (0, 1, 2, 5), "solvable_cover": (0, 1, 2, 4), "kodaira_thurston": (0, 1, 2, 3)}


# --------------------------------------------------------------------------
# the solvable group with a rotation block: (a, b, c, e, f), b complex


def solvable_matrix(a, b1, b2, c, e, f) -> np.ndarray:
    g = np.eye(6)
    g[0, 1] = c
    g[0, 4] = e
    g[0, 5] = f
    g[1, 5] = e
    g[2:4, 2:4] = rot(TWO_PI * a)
    g[2, 5] = b1
    g[3, 5] = b2
    g[4, 5] = a
    return g


def solvable_params(m) -> tuple:
    """Inverse of solvable_matrix: (a, b1, b2, c, e, f)."""
    m = np.asarray(m, dtype=float)
    return (m[4, 5], m[2, 5], m[3, 5], m[0, 1], m[0, 4], m[0, 5])


def _solvable_pattern(m: np.ndarray) -> float:
    a, b1, b2, c, e, f = solvable_params(m)
    return float(np.abs(m - solvable_matrix(a, b1, b2, c, e, f)).max())


def _subgroup_pattern(zero_params):
    def check(m):
        p = solvable_params(m)
        return max(_solvable_pattern(m), *(abs(p[i]) for i in zero_params))

    return check


def solvable_element(a=0.0, b1=0.0, b2=0.0, c=0.0, e=0.0, f=0.0, tag="solvable_nonsplit"):
    return MatrixGroupElement(solvable_matrix(a, b1, b2, c, e, f), tag)


def closed_form_solvable_action(params, point) -> np.ndarray:
    """g(p, z, r, s, 1) = (p + e + Re(conj(jb) e^{ja} z), e^{ja} z, r + e, s + a - c, 1).

    ``params`` is (a, b1, b2, c, e, f) with b = b1 + i b2 and j = 2 pi i;
    ``point`` is (p, z1, z2, r, s, t) with t = 1.
    """
    a, b1, b2, c, e, f = (float(v) for v in params)
    p, z1, z2, r, s, t = (float(v) for v in point)
    if t != 1.0:
        raise DomainError("closed-form action is stated on the hyperplane t = 1")
    j = TWO_PI * 1j
    zz = np.exp(j * a) * complex(z1, z2)
    pp = p + e + (np.conj(j * complex(b1, b2)) * zz).real
    return np.array([pp, zz.real, zz.imag, r + e, s + a - c, 1.0])


def closed_form_solvable_action_exact(a: int, jb, c, e, f, point) -> np.ndarray:
    """Exact closed form for integer ``a`` (so e^{ja} = 1).

    ``jb = (u, v)`` gives the rational real and imaginary parts of j*b, so
    Re(conj(jb) z) = u z1 + v z2.  All inputs are exact rationals.
    """
    if int(a) != a:
        raise DomainError("exact closed form needs an integer rotation parameter")
    u, v = (la.to_fraction(x) for x in jb)
    c, e = la.to_fraction(c), la.to_fraction(e)
    p, z1, z2, r, s, t = (la.to_fraction(x) for x in point)
    if t != 1:
        raise DomainError("closed-form action is stated on the hyperplane t = 1")
    return la.frac_array([p + e + u * z1 + v * z2, z1, z2, r + e, s + int(a) - c, 1])


# --------------------------------------------------------------------------
# Galilei extension: (A, b, c, e, f), A in SO(3)


def galilei_matrix(A, b, c, e, f) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    g = np.eye(6)
    g[0, 1:4] = b @ A
    g[0, 4] = 0.5 * b @ b
    g[0, 5] = f
    g[1:4, 1:4] = A
    g[1:4, 4] = b
    g[1:4, 5] = c
    g[4, 5] = e
    return g


def galilei_params(m):
    m = np.asarray(m, dtype=float)
    return m[1:4, 1:4], m[1:4, 4], m[1:4, 5], m[4, 5], m[0, 5]


def _galilei_pattern(m: np.ndarray) -> float:
    A, b, c, e, f = galilei_params(m)
    res = np.abs(m - galilei_matrix(A, b, c, e, f)).max()
    return float(max(res, np.abs(A.T @ A - np.eye(3)).max(), abs(np.linalg.det(A) - 1)))


def galilei_element(A=None, b=(0, 0, 0), c=(0, 0, 0), e=0.0, f=0.0) -> MatrixGroupElement:
    A = np.eye(3) if A is None else A
    return MatrixGroupElement(galilei_matrix(A, b, c, e, f), "galilei_ext")


def random_rotation(rng) -> np.ndarray:
    from scipy.spatial.transform import Rotation

    return Rotation.random(random_state=rng).as_matrix()


# --------------------------------------------------------------------------
# registry


def _solvable_generators(include):
    """Generators for the exact basis a' = E_a/2pi, b1, b2, c' = E_c/2pi, e' = 2pi E_e, f."""
    gens = {}
    x = np.zeros((6, 6))
    x[2:4, 2:4] = [[0, -1], [1, 0]]
    x[4, 5] = 1 / TWO_PI
    gens["a"] = x
    for name, (i, j) in {"b1": (2, 5), "b2": (3, 5), "f": (0, 5)}.items():
        x = np.zeros((6, 6))
        x[i, j] = 1
        gens[name] = x
    x = np.zeros((6, 6))
    x[0, 1] = 1 / TWO_PI
    gens["c"] = x
    x = np.zeros((6, 6))
    x[0, 4] = x[1, 5] = TWO_PI
    gens["e"] = x
    return tuple(gens[k] for k in include)


def solvable_algebra() -> lie.LieAlgebra:
    """Exact algebra of the solvable group: [a,b1]=b2, [a,b2]=-b1, [c,e]=f, [e,a]=f."""
    return lie.from_brackets(
        ["a", "b1", "b2", "c", "e", "f"],
        [("a", "b1", "b2", 1), ("a", "b2", "b1", -1), ("c", "e", "f", 1), ("e", "a", "f", 1)],
    )


def galilei_algebra() -> lie.LieAlgebra:
    """Exact one-dimensional central extension of the Galilei algebra (mass M)."""
    labels = [f"w{i}" for i in (1, 2, 3)] + [f"beta{i}" for i in (1, 2, 3)]
    labels += [f"gamma{i}" for i in (1, 2, 3)] + ["eps", "phi"]
    table = []
    for fam in (0, 3, 6):
        for i in range(3):
            j, k = (i + 1) % 3, (i + 2) % 3
            table.append((i, fam + j, fam + k, 1))
            table.append((i, fam + k, fam + j, -1))
    for i in range(3):
        table.append((3 + i, 6 + i, 10, 1))
        table.append((3 + i, 9, 6 + i, 1))
    return lie.from_brackets(labels, table)


def galilei_generators():
    gens = []
    for i in range(3):
        x = np.zeros((6, 6))
        x[1:4, 1:4] = hat(np.eye(3)[i])
        gens.append(x)
    for i in range(3):
        x = np.zeros((6, 6))
        x[0, 1 + i] = 1
        x[1 + i, 4] = 1
        gens.append(x)
    for i in range(3):
        x = np.zeros((6, 6))
        x[1 + i, 5] = 1
        gens.append(x)
    x = np.zeros((6, 6))
    x[4, 5] = 1
    gens.append(x)
    x = np.zeros((6, 6))
    x[0, 5] = 1
    gens.append(x)
    return tuple(gens)


def _build_registry() -> dict:
    g = solvable_algebra()
    reg = {}
    reg["solvable_nonsplit"] = CatalogGroup(
        tag="solvable_nonsplit",
        size=6,
        algebra=g,
        generators=_solvable_generators(["a", "b1", "b2", "c", "e", "f"]),
        dual_scale=np.array([1 / TWO_PI, 1, 1, -1 / TWO_PI, -TWO_PI, -1]),
        display_labels=("p", "z1", "z2", "r", "s", "t"),
        pattern=_solvable_pattern,
        fixed_coords=(5,),
    )
    h = lie.subalgebra(g, lie.span_labels(g, "a", "b1", "b2", "e", "f"))
    reg["solvable_cover"] = CatalogGroup(
        tag="solvable_cover",
        size=6,
        algebra=h,
        generators=_solvable_generators(["a", "b1", "b2", "e", "f"]),
        dual_scale=np.array([1 / TWO_PI, 1, 1, -TWO_PI, -1]),
        display_labels=("p", "z1", "z2", "s", "t"),
        pattern=_subgroup_pattern([3]),
        fixed_coords=(4,),
    )
    n = lie.subalgebra(g, lie.span_labels(g, "a", "b1", "b2", "f"))
    reg["kodaira_thurston"] = CatalogGroup(
        tag="kodaira_thurston",
        size=6,
        algebra=n,
        generators=_solvable_generators(["a", "b1", "b2", "f"]),
        dual_scale=np.array([1 / TWO_PI, 1, 1, -1]),
        display_labels=("p", "z1", "z2", "t"),
        pattern=_subgroup_pattern([3, 4]),
        fixed_coords=(3,),
    )
    reg["galilei_ext"] = CatalogGroup(
        tag="galilei_ext",
        size=6,
        algebra=galilei_algebra(),
        generators=galilei_generators(),
        dual_scale=np.array([1, 1, 1, -1, -1, -1, 1, 1, 1, -1, -1], dtype=float),
        display_labels=("L1", "L2", "L3", "G1", "G2", "G3", "P1", "P2", "P3", "E", "M"),
        pattern=_galilei_pattern,
        fixed_coords=(10,),
    )
    return reg


GROUPS: dict[str, CatalogGroup] = _build_registry()


def group(tag: str) -> CatalogGroup:
    try:
        return GROUPS[tag]
    except KeyError:
        raise DomainError(f"unknown catalog group {tag!r}; known: {sorted(GROUPS)}") from None


# --------------------------------------------------------------------------
# Dehn twist on the flat torus fiber


def dehn_twist(k: int, point) -> np.ndarray:
    """k(p, q, e^{j rho}, e^{j sigma}) = (p, q + k, e^{j(rho + k sigma)}, e^{j sigma}).

    Points are (p, q, rho, sigma) with angles in turns (R = e^{j rho}); the
    map is exact on rationals since only integer multiples are added.
    """
    if int(k) != k:
        raise DomainError("the twist group is the integers")
    k = int(k)
    p, q, rho, sigma = point
    return np.array([p, q + k, rho + k * sigma, sigma], dtype=np.asarray(point).dtype)


def twist_invariants(point) -> np.ndarray:
    """(p, cos 2 pi sigma, sin 2 pi sigma): functions constant on twist orbits."""
    p, _, _, sigma = (float(v) for v in point)
    return np.array([p, np.cos(TWO_PI * sigma), np.sin(TWO_PI * sigma)])


def same_torus_point(x, y, tol: float = 1e-12) -> bool:
    """Compare (p, q, rho, sigma) points with rho and sigma reduced mod 1."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    d = x - y
    d[2:] = (d[2:] + 0.5) % 1.0 - 0.5
    return bool(np.abs(d).max() < tol)
