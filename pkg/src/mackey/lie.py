"""Exact Lie algebra kernel.

A Lie algebra is a basis plus structure constants ``c[i, j, k]``, the
coefficient of ``e_k`` in ``[e_i, e_j]``, held as Fractions.  Vectors are
coefficient arrays in that basis; covectors are coefficient arrays in the
dual basis, so ``<xi, x> = sum(xi * x)``.

Coadjoint convention: ``ad*(x) = -ad(x)^T``, i.e. ``<ad*(x) a, y> = <a, [y, x]>``.
Numpy object arrays mean exact arithmetic, float arrays mean approximate;
an operation never mixes the two silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial, lcm

import numpy as np

from . import linalg as la
from .errors import DomainError


def _as_vector(v, n: int, what: str = "vector") -> np.ndarray:
    arr = np.asarray(v)
    if arr.dtype != object and not np.issubdtype(arr.dtype, np.floating):
        arr = la.frac_array(arr)
    if arr.shape != (n,):
        raise DomainError(f"{what} has shape {arr.shape}, expected ({n},)")
    return arr


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q.

    Antisymmetry and the Jacobi identity are verified exactly at construction
    unless ``check=False``; a violation raises :class:`DomainError` naming the
    offending basis triple.
    """

    def __init__(self, structure_constants, labels=None, *, check: bool = True):
        c = la.frac_array(structure_constants)
        if c.size == 0:
            n = c.shape[0] if c.ndim == 3 else 0
            c = la.zeros(n, n, n)
        n = c.shape[0]
        if c.shape != (n, n, n):
            raise DomainError(f"structure constants must be n x n x n, got {c.shape}")
        if labels is None:
            labels = [f"e{i}" for i in range(n)]
        labels = tuple(str(s) for s in labels)
        if len(labels) != n:
            raise DomainError(f"{len(labels)} labels for a {n}-dimensional algebra")
        if len(set(labels)) != n:
            raise DomainError("basis labels must be distinct")
        self._c = c
        self.labels = labels
        if check:
            check_lie(c, labels)

    @property
    def dim(self) -> int:
        return self._c.shape[0]

    @property
    def structure_constants(self) -> np.ndarray:
        return self._c.copy()

    @cached_property
    def float_constants(self) -> np.ndarray:
        return self._c.astype(float)

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self._c, other._c)

    def __hash__(self):
        return hash((self.labels, tuple(self._c.ravel())))

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, labels={list(self.labels)})"

    def basis_vector(self, i) -> np.ndarray:
        if isinstance(i, str):
            i = self.labels.index(i)
        return la.unit(self.dim, i)

    @cached_property
    def _sparse(self) -> tuple:
        """All (i, j, k, value) with c[i, j, k] != 0, both orders of i, j."""
        return tuple((int(i), int(j), int(k), self._c[i, j, k]) for i, j, k in np.argwhere(self._c != 0))

    def nonzero_brackets(self):
        """Yield (i, j, k, value) for i < j with c[i, j, k] != 0."""
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(n):
                    if self._c[i, j, k] != 0:
                        yield i, j, k, self._c[i, j, k]


def _integer_constants(c: np.ndarray) -> np.ndarray:
    den = lcm(*(v.denominator for v in c.ravel())) if c.size else 1
    out = np.empty(c.shape, dtype=object)
    for idx, v in np.ndenumerate(c):
        out[idx] = int(v * den)
    return out


def check_lie(c: np.ndarray, labels=None) -> None:
    """Raise DomainError unless ``c`` is antisymmetric and satisfies Jacobi."""
    n = c.shape[0]
    if n == 0:
        return
    name = (lambda i: f"{i}") if labels is None else (lambda i: f"{i}:{labels[i]}")
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                if c[i, j, k] != -c[j, i, k]:
                    raise DomainError(f"antisymmetry fails at basis triple ({name(i)}, {name(j)}, {name(k)})")
    ci = _integer_constants(c)
    t = np.einsum("ijm,mlk->ijlk", ci, ci)
    jac = t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)
    bad = np.argwhere(jac != 0)
    if len(bad):
        i, j, l, k = (int(v) for v in bad[0])
        raise DomainError(
            f"Jacobi identity fails for basis triple ({name(i)}, {name(j)}, {name(l)}) in component {name(k)}"
        )


def from_brackets(labels, brackets, *, check: bool = True) -> LieAlgebra:
    """Build an algebra from nonzero brackets.

    ``brackets`` is an iterable of ``(i, j, k, value)`` or a mapping
    ``{(i, j): {k: value}}``; indices may be labels.  Only one of each
    antisymmetric pair needs to be given.
    """
    labels = list(labels)
    n = len(labels)
    idx = {s: i for i, s in enumerate(labels)}

    def ix(v):
        return idx[v] if isinstance(v, str) else int(v)

    c = la.zeros(n, n, n)
    items = []
    if isinstance(brackets, dict):
        for (i, j), terms in brackets.items():
            for k, v in terms.items():
                items.append((i, j, k, v))
    else:
        items = list(brackets)
    for i, j, k, v in items:
        i, j, k = ix(i), ix(j), ix(k)
        v = la.to_fraction(v)
        if i == j:
            if v != 0:
                raise DomainError(f"[e{i}, e{i}] must vanish")
            continue
        if c[i, j, k] != 0 and c[i, j, k] != v:
            raise DomainError(f"conflicting values for [e{i}, e{j}] component {k}")
        c[i, j, k] = v
        c[j, i, k] = -v
    return LieAlgebra(c, labels, check=check)


def abelian(n: int, labels=None) -> LieAlgebra:
    return LieAlgebra(la.zeros(n, n, n), labels)


def heisenberg(m: int = 1) -> LieAlgebra:
    """Heisenberg algebra of dimension 2m+1: [x_i, y_i] = z."""
    labels = [f"x{i + 1}" for i in range(m)] + [f"y{i + 1}" for i in range(m)] + ["z"]
    return from_brackets(labels, [(i, m + i, 2 * m, 1) for i in range(m)])


def _constants_for(alg: LieAlgebra, *vs) -> np.ndarray:
    if any(np.asarray(v).dtype != object for v in vs):
        return alg.float_constants
    return alg._c


def bracket(alg: LieAlgebra, x, y) -> np.ndarray:
    x = _as_vector(x, alg.dim)
    y = _as_vector(y, alg.dim)
    c = _constants_for(alg, x, y)
    if alg.dim == 0:
        return x.copy()
    if c is alg.float_constants:
        return np.einsum("i,j,ijk->k", x, y, c)
    out = la.zeros(alg.dim)
    for i, j, k, v in alg._sparse:
        if x[i] and y[j]:
            out[k] += x[i] * y[j] * v
    return out


def ad(alg: LieAlgebra, x) -> np.ndarray:
    """Matrix of ad(x); column j is [x, e_j]."""
    x = _as_vector(x, alg.dim)
    c = _constants_for(alg, x)
    if alg.dim == 0:
        return np.zeros((0, 0), dtype=x.dtype)
    if c is alg.float_constants:
        return np.einsum("i,ijk->kj", x, c)
    out = la.zeros(alg.dim, alg.dim)
    for i, j, k, v in alg._sparse:
        if x[i]:
            out[k, j] += x[i] * v
    return out


def coadjoint_op(alg: LieAlgebra, x) -> np.ndarray:
    """Matrix of ad*(x) = -ad(x)^T acting on covector coefficient columns."""
    return -ad(alg, x).T


def pair(xi, x):
    return sum(a * b for a, b in zip(xi, x)) if len(xi) else Fraction(0)


def kks_pairing(alg: LieAlgebra, point, x, y):
    """KKS value <point, [y, x]>."""
    return pair(_as_vector(point, alg.dim, "covector"), bracket(alg, y, x))


# --------------------------------------------------------------------------
# subspaces


class Subspace:
    """Span inside ``ambient`` (or its dual when ``dual`` is true).

    The basis is kept in reduced row echelon form, so two subspaces are equal
    exactly when their bases are.
    """

    def __init__(self, ambient: LieAlgebra, vectors=(), *, dual: bool = False):
        self.ambient = ambient
        self.dual = dual
        n = ambient.dim
        rows = [_as_vector(v, n) for v in vectors]
        if rows and any(r.dtype != object for r in rows):
            raise DomainError("subspaces are spanned by exact vectors")
        if rows:
            basis, pivots = la.rref(np.array(rows, dtype=object).reshape(len(rows), n))
        else:
            basis, pivots = la.zeros(0, n), []
        self.basis = basis
        self.pivots = tuple(pivots)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.ambient.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.dual == other.dual
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.dual, tuple(self.basis.ravel())))

    def __repr__(self):
        kind = "dual subspace" if self.dual else "subspace"
        return f"<{kind} of dim {self.dim} in dim {self.ambient_dim}>"

    def coords(self, v) -> np.ndarray | None:
        """Coordinates of ``v`` in this basis, or None when v is outside."""
        v = _as_vector(v, self.ambient_dim)
        c = np.array([v[p] for p in self.pivots], dtype=object)
        if not la.is_zero(v - (c @ self.basis if self.dim else la.zeros(self.ambient_dim))):
            return None
        return c

    def contains(self, v) -> bool:
        return self.coords(v) is not None

    def __le__(self, other: Subspace) -> bool:
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace(self.ambient, list(self.basis) + list(other.basis), dual=self.dual)

    def intersect(self, other: Subspace) -> Subspace:
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.ambient, dual=self.dual)
        stacked = np.concatenate([self.basis, -other.basis]).T
        ker = la.nullspace(stacked, self.dim + other.dim)
        vecs = [k[: self.dim] @ self.basis for k in ker]
        return Subspace(self.ambient, vecs, dual=self.dual)

    def complement(self) -> Subspace:
        """Canonical complement: unit vectors at the non-pivot columns."""
        n = self.ambient_dim
        return Subspace(
            self.ambient, [la.unit(n, j) for j in range(n) if j not in self.pivots], dual=self.dual
        )

    def vectors(self) -> list[np.ndarray]:
        return list(self.basis)


def coords_in(sub: Subspace, v) -> np.ndarray:
    """Coordinates of v (assumed to lie in sub) on sub's echelon basis.

    Exact vectors are checked for membership; float vectors are read off at
    the pivot columns.
    """
    v = np.asarray(v)
    if v.dtype == object:
        c = sub.coords(v)
        if c is None:
            raise DomainError("vector does not lie in the subspace")
        return c
    return np.array([v[p] for p in sub.pivots], dtype=float)


def subalgebra_coords(big: Subspace, sub: Subspace) -> list:
    """Rows of sub's basis expressed in big's basis (requires sub <= big)."""
    return [coords_in(big, v) for v in sub.basis]


def span(alg: LieAlgebra, vectors, *, dual: bool = False) -> Subspace:
    return Subspace(alg, vectors, dual=dual)


def whole(alg: LieAlgebra) -> Subspace:
    return Subspace(alg, [la.unit(alg.dim, i) for i in range(alg.dim)])


def zero_subspace(alg: LieAlgebra) -> Subspace:
    return Subspace(alg)


def span_labels(alg: LieAlgebra, *labels) -> Subspace:
    return Subspace(alg, [alg.basis_vector(s) for s in labels])


def bracket_span(alg: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    return Subspace(alg, [bracket(alg, x, y) for x in a.basis for y in b.basis])


def is_subalgebra(alg: LieAlgebra, sub: Subspace) -> bool:
    return bracket_span(alg, sub, sub) <= sub


def is_ideal(alg: LieAlgebra, sub: Subspace) -> bool:
    return bracket_span(alg, whole(alg), sub) <= sub


def decomposition(a: Subspace, b: Subspace):
    """Solver for v = a-part + b-part on the direct sum a (+) b.

    Returns a function mapping v in a + b to (coords in a, coords in b).
    Exact vectors outside a + b raise DomainError.
    """
    n = a.ambient_dim
    s = a + b
    if a.dim + b.dim != s.dim:
        raise DomainError("subspaces are not complementary")
    rest = s.complement()
    basis = np.concatenate([a.basis, b.basis, rest.basis]).reshape(n, n)
    inv = la.inverse(basis) if n else la.zeros(0, 0)
    finv = inv.astype(float)
    da, db = a.dim, b.dim

    def split(v):
        v = _as_vector(v, n)
        w = v @ (inv if v.dtype == object else finv)
        if v.dtype == object and not la.is_zero(w[da + db:]):
            raise DomainError("vector does not lie in the direct sum")
        return w[:da], w[da:da + db]

    return split


def subalgebra(alg: LieAlgebra, sub: Subspace, labels=None) -> LieAlgebra:
    """The intrinsic algebra on the echelon basis of a subalgebra."""
    k = sub.dim
    c = la.zeros(k, k, k)
    for i in range(k):
        for j in range(k):
            w = sub.coords(bracket(alg, sub.basis[i], sub.basis[j]))
            if w is None:
                raise DomainError("subspace is not closed under the bracket")
            c[i, j, :] = w
    if labels is None:
        labels = [_vector_label(alg, v) for v in sub.basis]
        if len(set(labels)) != k:
            labels = [f"s{i}" for i in range(k)]
    return LieAlgebra(c, labels)


def _vector_label(alg: LieAlgebra, v) -> str:
    terms = [(alg.labels[i], x) for i, x in enumerate(v) if x != 0]
    if len(terms) == 1 and terms[0][1] == 1:
        return terms[0][0]
    return "+".join(f"{x}*{s}" if x != 1 else s for s, x in terms)


@dataclass(frozen=True)
class Quotient:
    """Quotient ``alg / ideal`` realised on a complement of the ideal."""

    algebra: LieAlgebra
    ambient: LieAlgebra
    ideal: Subspace
    complement: Subspace
    _split: object = field(repr=False, compare=False)

    def project(self, v) -> np.ndarray:
        return self._split(v)[0]

    def section(self, q) -> np.ndarray:
        q = _as_vector(q, self.algebra.dim)
        if self.algebra.dim == 0:
            return la.zeros(self.ambient.dim) if q.dtype == object else np.zeros(self.ambient.dim)
        basis = self.complement.basis if q.dtype == object else self.complement.basis.astype(float)
        return q @ basis

    def lift_covector(self, eta) -> np.ndarray:
        """Pull a quotient covector back to the ambient dual (zero on the ideal)."""
        n = self.ambient.dim
        eta = _as_vector(eta, self.algebra.dim, "covector")
        out = la.zeros(n) if eta.dtype == object else np.zeros(n)
        for i in range(n):
            out[i] = pair(eta, self.project(la.unit(n, i)))
        return out


def quotient(alg: LieAlgebra, ideal: Subspace, complement: Subspace | None = None) -> Quotient:
    if not is_ideal(alg, ideal):
        raise DomainError("quotient requires an ideal")
    if complement is None:
        complement = ideal.complement()
    split = decomposition(complement, ideal)
    k = complement.dim
    c = la.zeros(k, k, k)
    for i in range(k):
        for j in range(k):
            c[i, j, :] = split(bracket(alg, complement.basis[i], complement.basis[j]))[0]
    labels = [_vector_label(alg, v) for v in complement.basis]
    if len(set(labels)) != k:
        labels = None
    return Quotient(LieAlgebra(c, labels), alg, ideal, complement, split)


def annihilator(alg: LieAlgebra, sub: Subspace) -> Subspace:
    """{xi in alg* : <xi, sub> = 0}, as a dual subspace."""
    if sub.dim == 0:
        return Subspace(alg, [la.unit(alg.dim, i) for i in range(alg.dim)], dual=True)
    return Subspace(alg, list(la.nullspace(sub.basis, alg.dim)), dual=True)


def restrict(xi, sub: Subspace) -> np.ndarray:
    """Coordinates of xi restricted to sub, against the echelon basis of sub."""
    xi = np.asarray(xi)
    basis = sub.basis if xi.dtype == object else sub.basis.astype(float)
    if sub.dim == 0:
        return basis[:, :0].sum(axis=1)
    return basis @ xi


def stabilizer_subalgebra(alg: LieAlgebra, a, ideal: Subspace | None = None) -> Subspace:
    """Infinitesimal stabilizer of a covector.

    With ``ideal=None``, ``a`` is a covector on ``alg`` and the result is
    ``{x : ad*(x) a = 0}``.  With an ideal, ``a`` is given by its values on the
    ideal's echelon basis and the result is the stabilizer of ``a`` in ``alg``
    for the coadjoint action of ``alg`` on the ideal's dual.
    """
    n = alg.dim
    if ideal is None:
        a = _as_vector(a, n, "covector")
        rows = [la.unit(n, y) for y in range(n)]
        values = lambda w: pair(a, w)  # noqa: E731
    else:
        if not is_ideal(alg, ideal):
            raise DomainError("relative stabilizer needs an ideal")
        a = _as_vector(a, ideal.dim, "covector")
        rows = list(ideal.basis)

        def values(w):
            return pair(a, ideal.coords(w))

    if a.dtype != object:
        raise DomainError("stabilizer_subalgebra needs an exact covector")
    m = la.zeros(len(rows), n)
    for r, y in enumerate(rows):
        for x in range(n):
            m[r, x] = values(bracket(alg, y, la.unit(n, x)))
    return Subspace(alg, list(la.nullspace(m, n)))


# --------------------------------------------------------------------------
# constructions


def direct_sum(a: LieAlgebra, b: LieAlgebra) -> LieAlgebra:
    n, m = a.dim, b.dim
    c = la.zeros(n + m, n + m, n + m)
    c[:n, :n, :n] = a._c
    c[n:, n:, n:] = b._c
    labels = list(a.labels) + [s if s not in a.labels else s + "'" for s in b.labels]
    return LieAlgebra(c, labels)


def semidirect_sum(n: LieAlgebra, l: LieAlgebra, action) -> LieAlgebra:
    """``n`` (+) ``l`` with ``[x, y] = action(x)(y)`` for x in l, y in n.

    ``action`` is a sequence of ``dim n x dim n`` matrices, one per basis
    vector of ``l`` (column j is the image of the j-th basis vector of n).
    The basis of the result lists n first, then l.
    """
    dn, dl = n.dim, l.dim
    mats = [la.frac_array(m).reshape(dn, dn) for m in action]
    if len(mats) != dl:
        raise DomainError(f"need {dl} action matrices, got {len(mats)}")
    for t, d in enumerate(mats):
        for i in range(dn):
            for j in range(dn):
                ei, ej = la.unit(dn, i), la.unit(dn, j)
                lhs = d @ bracket(n, ei, ej)
                rhs = bracket(n, d @ ei, ej) + bracket(n, ei, d @ ej)
                if not la.is_zero(lhs - rhs):
                    raise DomainError(
                        f"action of {l.labels[t]} is not a derivation on ({n.labels[i]}, {n.labels[j]})"
                    )
    for s in range(dl):
        for t in range(dl):
            target = la.zeros(dn, dn)
            for k, v in enumerate(bracket(l, la.unit(dl, s), la.unit(dl, t))):
                if v:
                    target = target + v * mats[k]
            comm = mats[s] @ mats[t] - mats[t] @ mats[s]
            if not la.is_zero(target - comm):
                raise DomainError(
                    f"action is not a Lie algebra map on ({l.labels[s]}, {l.labels[t]})"
                )
    dim = dn + dl
    c = la.zeros(dim, dim, dim)
    c[:dn, :dn, :dn] = n._c
    c[dn:, dn:, dn:] = l._c
    for t in range(dl):
        for j in range(dn):
            img = mats[t][:, j]
            c[dn + t, j, :dn] = img
            c[j, dn + t, :dn] = -img
    labels = list(n.labels) + [s if s not in n.labels else s + "'" for s in l.labels]
    return LieAlgebra(c, labels)


def change_basis(alg: LieAlgebra, p, labels=None) -> LieAlgebra:
    """Same algebra on the basis f_i = sum_j p[i, j] e_j."""
    p = la.frac_array(p).reshape(alg.dim, alg.dim)
    pinv = la.inverse(p)
    n = alg.dim
    c = la.zeros(n, n, n)
    for i in range(n):
        for j in range(n):
            c[i, j, :] = bracket(alg, p[i], p[j]) @ pinv
    return LieAlgebra(c, labels)


@dataclass(frozen=True)
class Series:
    lower_central: list
    derived: list
    is_abelian: bool
    is_nilpotent: bool
    is_solvable: bool

    @property
    def nilpotency_step(self) -> int | None:
        if not self.is_nilpotent:
            return None
        return len(self.lower_central) - 1


def series(alg: LieAlgebra) -> Series:
    g = whole(alg)

    def run(step):
        out = [g]
        while True:
            nxt = step(out[-1])
            if nxt == out[-1]:
                return out
            out.append(nxt)

    lcs = run(lambda s: bracket_span(alg, g, s))
    der = run(lambda s: bracket_span(alg, s, s))
    return Series(
        lower_central=lcs,
        derived=der,
        is_abelian=bracket_span(alg, g, g).dim == 0,
        is_nilpotent=lcs[-1].dim == 0,
        is_solvable=der[-1].dim == 0,
    )


# --------------------------------------------------------------------------
# exponentials acting on the dual


def exp_coadjoint(alg: LieAlgebra, x, xi, *, max_terms: int | None = None) -> np.ndarray:
    """exp(ad*(x)) xi.

    Exact covectors are handled only when the series terminates, i.e.
    ``ad*(x)^k xi = 0`` for some k; otherwise a DomainError is raised because
    the value is not rational.  Float covectors use the matrix exponential.
    """
    xi = np.asarray(xi)
    if xi.dtype != object:
        from scipy.linalg import expm

        return expm(coadjoint_op(alg, np.asarray(x, dtype=float))) @ xi
    m = coadjoint_op(alg, x)
    limit = (alg.dim + 1) if max_terms is None else max_terms
    out = xi.copy()
    term = xi
    for k in range(1, limit + 1):
        term = m @ term
        if la.is_zero(term):
            return out
        out = out + term * Fraction(1, factorial(k))
    raise DomainError("exp(ad*(x)) xi does not terminate; no exact value")


@dataclass(frozen=True)
class ExpWord:
    """Group element exp(x_1) ... exp(x_m), acting on covectors exactly."""

    algebra: LieAlgebra
    factors: tuple = ()

    def coadjoint(self, xi) -> np.ndarray:
        out = np.asarray(xi)
        for x in reversed(self.factors):
            out = exp_coadjoint(self.algebra, x, out)
        return out

    def __matmul__(self, other: ExpWord) -> ExpWord:
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise DomainError("cannot multiply elements of different groups")
        return ExpWord(self.algebra, self.factors + other.factors)

    def inverse(self) -> ExpWord:
        return ExpWord(self.algebra, tuple(-x for x in reversed(self.factors)))

    @classmethod
    def identity(cls, alg: LieAlgebra) -> ExpWord:
        return cls(alg, ())
