"""Exact linear algebra over the rationals.

Matrices are numpy object arrays holding :class:`fractions.Fraction`.
Forward elimination is fraction-free (Bareiss) on integer-scaled rows, so
intermediate entries stay bounded by minors of the input; rationals only
appear when pivots are normalised at the very end.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (float, np.floating)):
        raise TypeError(f"refusing to convert float {x!r} to an exact rational")
    return Fraction(x)


def frac_array(data, shape=None) -> np.ndarray:
    """Object array of Fractions from nested sequences, ints or 'n/d' strings."""
    arr = np.asarray(data, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = to_fraction(v)
    if shape is not None:
        out = out.reshape(shape)
    return out


def zeros(*shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def unit(n: int, i: int) -> np.ndarray:
    v = zeros(n)
    v[i] = Fraction(1)
    return v


def is_exact(a) -> bool:
    a = np.asarray(a)
    return a.dtype == object


def is_zero(a) -> bool:
    return all(v == 0 for v in np.asarray(a, dtype=object).ravel())


def to_float(a) -> np.ndarray:
    return np.asarray(np.asarray(a, dtype=object).astype(float))


def _integer_rows(mat) -> list[list[int]]:
    rows = []
    for row in np.asarray(mat, dtype=object):
        fr = [to_fraction(v) for v in row]
        den = lcm(*(v.denominator for v in fr)) if fr else 1
        rows.append([int(v * den) for v in fr])
    return rows


def bareiss_echelon(mat) -> tuple[list[list[int]], list[int]]:
    """Integer row echelon form by fraction-free elimination.

    Returns the nonzero echelon rows (integers) and their pivot columns.
    """
    mat = np.asarray(mat, dtype=object)
    a = _integer_rows(mat)
    m, n = mat.shape
    prev = 1
    r = 0
    pivots: list[int] = []
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, m):
            aic = a[i][c]
            row_i = a[i]
            row_r = a[r]
            for j in range(c + 1, n):
                row_i[j] = (piv * row_i[j] - aic * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(mat) -> int:
    mat = np.asarray(mat, dtype=object)
    if mat.size == 0:
        return 0
    return len(bareiss_echelon(mat)[1])


def rref(mat) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; zero rows are dropped."""
    mat = np.asarray(mat, dtype=object)
    if mat.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    n = mat.shape[1]
    if mat.shape[0] == 0 or n == 0:
        return zeros(0, n), []
    ech, pivots = bareiss_echelon(mat)
    rows = [[Fraction(v, r[p]) for v in r] for r, p in zip(ech, pivots)]
    for k in range(len(rows) - 1, -1, -1):
        p = pivots[k]
        for i in range(k):
            f = rows[i][p]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[k])]
    out = frac_array(rows) if rows else zeros(0, n)
    return out.reshape(len(rows), n), pivots


def nullspace(mat, ncols: int | None = None) -> np.ndarray:
    """Basis (as rows) of {x : mat @ x = 0}."""
    mat = np.asarray(mat, dtype=object)
    if ncols is None:
        ncols = mat.shape[1]
    if mat.size == 0:
        return identity(ncols)
    r, pivots = rref(mat)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = zeros(ncols)
        v[f] = Fraction(1)
        for row, p in zip(r, pivots):
            v[p] = -row[f]
        basis.append(v)
    if not basis:
        return zeros(0, ncols)
    return np.array(basis, dtype=object)


def solve(a, b) -> np.ndarray | None:
    """A particular solution of a @ x = b, or None when inconsistent."""
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    m, n = a.shape
    if m == 0:
        return zeros(n)
    aug = np.concatenate([a, b.reshape(m, 1)], axis=1)
    r, pivots = rref(aug)
    if n in pivots:
        return None
    x = zeros(n)
    for row, p in zip(r, pivots):
        x[p] = row[n]
    return x


def left_certificate(a, b) -> np.ndarray | None:
    """A row vector y with y @ a = 0 and y @ b != 0, if a @ x = b is inconsistent."""
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    for y in nullspace(a.T, a.shape[0]):
        if dot(y, b) != 0:
            return y
    return None


def inverse(mat) -> np.ndarray:
    mat = np.asarray(mat, dtype=object)
    n = mat.shape[0]
    if mat.shape != (n, n):
        raise ValueError("inverse expects a square matrix")
    if n == 0:
        return zeros(0, 0)
    r, pivots = rref(np.concatenate([mat, identity(n)], axis=1))
    if pivots[:n] != list(range(n)) or len(pivots) < n or pivots[n - 1] >= n:
        raise ValueError("matrix is singular")
    return r[:, n:]


def dot(x, y):
    s = Fraction(0)
    for a, b in zip(x, y):
        s += a * b
    return s
