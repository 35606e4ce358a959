"""Generated orbit data for property checks.

``vanishing_corpus`` builds data with a|k = 0: the ideal is
aff(1)^m (+) R^q with a = sum of the y_i^*, extended by commuting
derivations D_t = sum_i alpha_{t,i} ad(x_i) (+) diag(delta_t), then
written in a random rational basis.  The stabilizer of a in n is R^q, on
which a vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import lie
from . import linalg as la
from . import obstruction as ob


@dataclass(frozen=True, eq=False)
class CorpusDatum:
    datum: ob.OrbitDatum
    params: dict


def _rational(rng, num: int = 3, den: int = 3) -> Fraction:
    return Fraction(int(rng.integers(-num, num + 1)), int(rng.integers(1, den + 1)))


def random_unimodular(rng, n: int, spread: int = 2) -> np.ndarray:
    """Product of unit lower and upper triangular integer matrices (det 1)."""
    lo, up = la.identity(n), la.identity(n)
    for i in range(n):
        for j in range(i):
            lo[i, j] = Fraction(int(rng.integers(-spread, spread + 1)))
            up[j, i] = Fraction(int(rng.integers(-spread, spread + 1)))
    return lo @ up


def aff_sum(m: int, q: int) -> lie.LieAlgebra:
    """aff(1)^m (+) R^q with [x_i, y_i] = y_i."""
    labels = [f"x{i + 1}" for i in range(m)] + [f"y{i + 1}" for i in range(m)] + [f"r{i + 1}" for i in range(q)]
    return lie.from_brackets(labels, [(i, m + i, m + i, 1) for i in range(m)])


def vanishing_datum(rng, m: int, q: int, s: int, *, rebase: bool = True) -> CorpusDatum:
    n = aff_sum(m, q)
    dn = n.dim
    alpha = [[_rational(rng) for _ in range(m)] for _ in range(s)]
    delta = [[_rational(rng) for _ in range(q)] for _ in range(s)]
    mats = []
    for t in range(s):
        d = la.zeros(dn, dn)
        for i in range(m):
            d = d + alpha[t][i] * lie.ad(n, la.unit(dn, i))
        for i in range(q):
            d[2 * m + i, 2 * m + i] = delta[t][i]
        mats.append(d)
    g = lie.semidirect_sum(n, lie.abelian(s, [f"t{i + 1}" for i in range(s)]), mats)
    a_check = la.zeros(g.dim)
    for i in range(m):
        a_check[m + i] = Fraction(1)
    ideal_rows = [la.unit(g.dim, i) for i in range(dn)]
    p = random_unimodular(rng, g.dim) if rebase else la.identity(g.dim)
    pinv = la.inverse(p)
    g2 = lie.change_basis(g, p)
    ideal = lie.Subspace(g2, [v @ pinv for v in ideal_rows])
    a_new = p @ a_check
    datum = ob.OrbitDatum.build(g2, ideal, lie.restrict(a_new, ideal), name=f"aff{m}+R{q} x| R{s}")
    params = {"m": m, "q": q, "s": s, "alpha": alpha, "delta": delta, "basis_change": p}
    return CorpusDatum(datum.vanishing_choice(), params)


def vanishing_corpus(count: int = 20, seed: int = 0) -> list[CorpusDatum]:
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        m = 1 + i % 2
        q = (i // 2) % 3
        s = 1 + (i // 6) % 2
        out.append(vanishing_datum(rng, m, q, s))
    return out


def random_l_words(rng, datum: ob.OrbitDatum, count: int, max_factors: int = 3) -> list[lie.ExpWord]:
    """Random exact words exp(x_1)...exp(x_r) with x_i in l."""
    basis = datum.l.basis
    words = []
    for _ in range(count):
        factors = []
        for _ in range(int(rng.integers(1, max_factors + 1))):
            coef = [_rational(rng) for _ in range(len(basis))]
            factors.append(la.frac_array(coef) @ basis if len(basis) else la.zeros(datum.alg.dim))
        words.append(lie.ExpWord(datum.alg, tuple(factors)))
    return words


def random_l_complement(rng, datum: ob.OrbitDatum) -> lie.Subspace:
    """Random complement of k inside l (a shear of the canonical one)."""
    rows = datum.l.dim - datum.k.dim
    coeffs = [[_rational(rng) for _ in range(datum.k.dim)] for _ in range(rows)]
    return ob.complement_within(datum.alg, datum.k, datum.l, coeffs if datum.k.dim else None)


def random_n_complement(rng, datum: ob.OrbitDatum) -> lie.Subspace:
    """Random complement of n in g, used to vary a_check."""
    base = datum.ideal.complement()
    vecs = [v + la.frac_array([_rational(rng) for _ in range(datum.ideal.dim)]) @ datum.ideal.basis
            for v in base.basis]
    return lie.Subspace(datum.alg, vecs)
