"""Chevalley-Eilenberg cochains in degrees 0-3 over exact rationals.

A k-cochain with values in a module V is stored as a coefficient vector on
the basis ``eps_I (x) v_m`` of Lambda^k(g*) (x) V, with I running over
increasing k-tuples (lexicographic) and m over the module basis, I major.

Differential::

    (d w)(x_0..x_k) = sum_i (-1)^i rho(x_i) w(..^x_i..)
                      + sum_{i<j} (-1)^{i+j} w([x_i, x_j], ..^x_i..^x_j..)

so that on trivial coefficients d eps(x, y) = -eps([x, y]).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import lie
from . import linalg as la
from .errors import DomainError

MAX_DEGREE = 3


@dataclass(frozen=True, eq=False)
class Module:
    """Finite-dimensional representation: one matrix per algebra basis vector."""

    algebra: lie.LieAlgebra
    matrices: tuple

    def __post_init__(self):
        mats = tuple(la.frac_array(m) for m in self.matrices)
        if len(mats) != self.algebra.dim:
            raise DomainError(f"need {self.algebra.dim} representation matrices, got {len(mats)}")
        d = mats[0].shape[0] if mats else 0
        for m in mats:
            if m.shape != (d, d):
                raise DomainError("representation matrices must be square and of one size")
        object.__setattr__(self, "matrices", mats)
        object.__setattr__(self, "_dim", d)
        n = self.algebra.dim
        for i in range(n):
            for j in range(i + 1, n):
                target = la.zeros(d, d)
                for k, v in enumerate(lie.bracket(self.algebra, la.unit(n, i), la.unit(n, j))):
                    if v:
                        target = target + v * mats[k]
                comm = mats[i] @ mats[j] - mats[j] @ mats[i]
                if not la.is_zero(target - comm):
                    raise DomainError(
                        f"representation fails on basis pair ({self.algebra.labels[i]}, "
                        f"{self.algebra.labels[j]})"
                    )

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def is_trivial(self) -> bool:
        return all(la.is_zero(m) for m in self.matrices)

    def act(self, x, v) -> np.ndarray:
        out = la.zeros(self.dim)
        for k, c in enumerate(x):
            if c:
                out = out + c * (self.matrices[k] @ v)
        return out


def trivial_module(alg: lie.LieAlgebra, dim: int = 1) -> Module:
    return Module(alg, tuple(la.zeros(dim, dim) for _ in range(alg.dim)))


def adjoint_module(alg: lie.LieAlgebra) -> Module:
    return Module(alg, tuple(lie.ad(alg, la.unit(alg.dim, i)) for i in range(alg.dim)))


def coadjoint_module(alg: lie.LieAlgebra) -> Module:
    return Module(alg, tuple(lie.coadjoint_op(alg, la.unit(alg.dim, i)) for i in range(alg.dim)))


@lru_cache(maxsize=None)
def _combos(n: int, k: int) -> tuple:
    return tuple(combinations(range(n), k))


def _sort_sign(seq) -> tuple[int, tuple]:
    """Sign of the permutation sorting ``seq`` (0 if an index repeats)."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0, ()
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign, tuple(sorted(seq))


def cochain_dim(alg: lie.LieAlgebra, k: int, module: Module | None = None) -> int:
    d = 1 if module is None else module.dim
    return len(_combos(alg.dim, k)) * d


def _check_degree(k: int, top: int = MAX_DEGREE):
    if not 0 <= k <= top:
        raise DomainError(f"degree {k} outside the supported range 0..{top}")


def ce_coboundary(alg: lie.LieAlgebra, k: int, module: Module | None = None) -> np.ndarray:
    """Matrix of d^k : C^k -> C^{k+1} (rows index C^{k+1})."""
    _check_degree(k, MAX_DEGREE - 1)
    if module is None:
        module = trivial_module(alg)
    n, dv = alg.dim, module.dim
    src = _combos(n, k)
    dst = _combos(n, k + 1)
    src_index = {J: i for i, J in enumerate(src)}
    c = alg._c
    mats = module.matrices
    d = la.zeros(len(dst) * dv, len(src) * dv)
    for row, I in enumerate(dst):
        # module term: (-1)^t rho(e_{i_t}) w(I without i_t)
        for t, it in enumerate(I):
            rest = I[:t] + I[t + 1:]
            col = src_index[rest]
            if not la.is_zero(mats[it]):
                sgn = 1 if t % 2 == 0 else -1
                for a in range(dv):
                    for b in range(dv):
                        v = mats[it][a, b]
                        if v:
                            d[row * dv + a, col * dv + b] += sgn * v
        # bracket term: (-1)^{s+t} w([e_is, e_it], rest)
        for s in range(len(I)):
            for t in range(s + 1, len(I)):
                rest = I[:s] + I[s + 1:t] + I[t + 1:]
                base = 1 if (s + t) % 2 == 0 else -1
                for l in range(n):
                    v = c[I[s], I[t], l]
                    if not v:
                        continue
                    sgn, J = _sort_sign((l,) + rest)
                    if not sgn:
                        continue
                    col = src_index[J]
                    for a in range(dv):
                        d[row * dv + a, col * dv + a] += base * sgn * v
    return d


def cohomology_dim(alg: lie.LieAlgebra, k: int, module: Module | None = None) -> int:
    """dim H^k = dim ker d^k - rank d^{k-1}, by exact elimination."""
    _check_degree(k, MAX_DEGREE - 1)
    dk = ce_coboundary(alg, k, module)
    ker = dk.shape[1] - la.rank(dk)
    im = la.rank(ce_coboundary(alg, k - 1, module)) if k > 0 else 0
    return ker - im


def cohomology_basis(alg: lie.LieAlgebra, k: int, module: Module | None = None) -> list:
    """Cocycles whose classes form a basis of H^k."""
    _check_degree(k, MAX_DEGREE - 1)
    z = la.nullspace(ce_coboundary(alg, k, module))
    if k == 0:
        return [Cochain(alg, 0, v, module) for v in z]
    b = ce_coboundary(alg, k - 1, module).T
    reps = []
    current = [r for r in b]
    r0 = la.rank(np.array(current, dtype=object)) if current else 0
    for v in z:
        trial = current + [v]
        r1 = la.rank(np.array(trial, dtype=object))
        if r1 > r0:
            reps.append(Cochain(alg, k, v, module))
            current, r0 = trial, r1
    return reps


# --------------------------------------------------------------------------
# cochains


class Cochain:
    """A k-cochain, given by its coefficient vector."""

    def __init__(self, alg: lie.LieAlgebra, degree: int, vector, module: Module | None = None):
        _check_degree(degree)
        self.algebra = alg
        self.degree = degree
        self.module = module
        v = la.frac_array(vector)
        if v.shape != (cochain_dim(alg, degree, module),):
            raise DomainError(
                f"{degree}-cochain needs {cochain_dim(alg, degree, module)} coefficients, got {v.shape}"
            )
        self.vector = v

    @property
    def module_dim(self) -> int:
        return 1 if self.module is None else self.module.dim

    def value(self, I) -> np.ndarray:
        """Value on basis vectors with indices I (any order), as a module vector."""
        sgn, J = _sort_sign(I)
        dv = self.module_dim
        if not sgn:
            return la.zeros(dv)
        pos = _combos(self.algebra.dim, self.degree).index(J)
        return sgn * self.vector[pos * dv:(pos + 1) * dv]

    def d(self) -> Cochain:
        return Cochain(
            self.algebra,
            self.degree + 1,
            ce_coboundary(self.algebra, self.degree, self.module) @ self.vector,
            self.module,
        )

    def is_cocycle(self) -> bool:
        if self.degree >= MAX_DEGREE:
            return True
        return la.is_zero(ce_coboundary(self.algebra, self.degree, self.module) @ self.vector)

    def violation(self):
        """First basis tuple where the cocycle condition fails, or None."""
        if self.degree >= MAX_DEGREE:
            return None
        dv = ce_coboundary(self.algebra, self.degree, self.module) @ self.vector
        dstr = _combos(self.algebra.dim, self.degree + 1)
        for i, v in enumerate(dv):
            if v != 0:
                return tuple(self.algebra.labels[j] for j in dstr[i // self.module_dim])
        return None

    def __sub__(self, other: Cochain) -> Cochain:
        self._compatible(other)
        return type(self)._make(self, self.vector - other.vector)

    def __add__(self, other: Cochain) -> Cochain:
        self._compatible(other)
        return type(self)._make(self, self.vector + other.vector)

    def __neg__(self):
        return type(self)._make(self, -self.vector)

    def _compatible(self, other):
        if self.degree != other.degree or self.algebra != other.algebra:
            raise DomainError("cochains live in different spaces")

    @classmethod
    def _make(cls, like, vector):
        return Cochain(like.algebra, like.degree, vector, like.module)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.algebra == other.algebra
            and np.array_equal(self.vector, other.vector)
        )

    def __hash__(self):
        return hash((self.degree, tuple(self.vector)))

    def __repr__(self):
        return f"Cochain(degree={self.degree}, dim={self.algebra.dim}, nonzero={int(np.count_nonzero(self.vector != 0))})"


class TwoCocycle(Cochain):
    """Antisymmetric bilinear form with trivial coefficients, f(e_i, e_j) = matrix[i, j].

    Antisymmetry is enforced; the cocycle condition is checked by
    :meth:`is_cocycle` rather than at construction.
    """

    def __init__(self, alg: lie.LieAlgebra, matrix):
        m = la.frac_array(matrix)
        n = alg.dim
        if m.shape != (n, n):
            raise DomainError(f"2-cochain matrix must be {n}x{n}")
        for i in range(n):
            for j in range(i, n):
                if m[i, j] != -m[j, i]:
                    raise DomainError(f"2-cochain not antisymmetric at ({i}, {j})")
        vec = [m[i, j] for i, j in _combos(n, 2)]
        super().__init__(alg, 2, vec if vec else la.zeros(0))

    @property
    def matrix(self) -> np.ndarray:
        n = self.algebra.dim
        m = la.zeros(n, n)
        for (i, j), v in zip(_combos(n, 2), self.vector):
            m[i, j] = v
            m[j, i] = -v
        return m

    def __call__(self, x, y):
        return la.dot(x, self.matrix @ y)

    @classmethod
    def _make(cls, like, vector):
        out = Cochain(like.algebra, 2, vector)
        return TwoCocycle(like.algebra, _vector_to_matrix(like.algebra.dim, out.vector))


def _vector_to_matrix(n, vector):
    m = la.zeros(n, n)
    for (i, j), v in zip(_combos(n, 2), vector):
        m[i, j] = v
        m[j, i] = -v
    return m


def one_cochain(alg: lie.LieAlgebra, values, module: Module | None = None) -> Cochain:
    """1-cochain from its values on basis vectors (rows are module vectors)."""
    v = la.frac_array(values)
    return Cochain(alg, 1, v.reshape(-1), module)


@dataclass(frozen=True)
class CoboundaryResult:
    """Outcome of solving d(primitive) = cocycle.

    ``certificate`` is a row y with y @ d = 0 and y . cocycle != 0 whenever
    no primitive exists.
    """

    primitive: Cochain | None
    certificate: np.ndarray | None

    def __bool__(self):
        return self.primitive is not None


def is_coboundary(cocycle: Cochain) -> CoboundaryResult:
    k = cocycle.degree
    if not cocycle.is_cocycle():
        raise DomainError(f"input is not a cocycle; condition fails on {cocycle.violation()}")
    if la.is_zero(cocycle.vector):
        prim = Cochain(cocycle.algebra, k - 1, la.zeros(cochain_dim(cocycle.algebra, k - 1, cocycle.module)), cocycle.module) if k > 0 else None
        return CoboundaryResult(prim, None)
    if k == 0:
        return CoboundaryResult(None, la.frac_array([1]))
    d = ce_coboundary(cocycle.algebra, k - 1, cocycle.module)
    x = la.solve(d, cocycle.vector)
    if x is not None:
        return CoboundaryResult(Cochain(cocycle.algebra, k - 1, x, cocycle.module), None)
    return CoboundaryResult(None, la.left_certificate(d, cocycle.vector))


# --------------------------------------------------------------------------
# group 1-cocycles, numerically


def group_cocycle_residual(theta, g, h, action) -> float:
    """|| theta(gh) - theta(g) - g(theta(h)) ||_inf.

    ``theta(x)`` returns a covector, ``action(g, v)`` applies g to a covector,
    and elements multiply with ``@``.
    """
    tg, th = getattr(g, "tag", None), getattr(h, "tag", None)
    if tg != th:
        raise DomainError(f"group tag mismatch: {tg} vs {th}")
    lhs = np.asarray(theta(g @ h), dtype=float)
    rhs = np.asarray(theta(g), dtype=float) + np.asarray(action(g, theta(h)), dtype=float)
    return float(np.max(np.abs(lhs - rhs), initial=0.0))
