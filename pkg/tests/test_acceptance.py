"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run with pytest (lines are collected into the terminal summary) or as a
script: ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES, base_algebras  # noqa: E402

from mackey import catalog, corpus, lie  # noqa: E402
from mackey import cohomology as co  # noqa: E402
from mackey import groups as G  # noqa: E402
from mackey import linalg as la  # noqa: E402
from mackey import obstruction as ob  # noqa: E402
from mackey import verify as V  # noqa: E402
from mackey.splitting import analyze_splitting  # noqa: E402

SEED = 20240917
N = 100
FIBER_N = 50
SOLV = G.group("solvable_nonsplit")
GAL = G.group("galilei_ext")


def _rng(k: int) -> np.random.Generator:
    return np.random.default_rng([SEED, k])


def record(n: int, title: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'}  criterion {n:2d}  {title}: {detail}"
    ACCEPTANCE_LINES[n] = line
    print(line)
    assert ok, line


def _display_point(rng):
    return np.r_[rng.uniform(-1, 1, 5), 1.0]


def test_criterion_01_closed_form_action():
    rng = _rng(1)
    worst, t_worst = 0.0, 0.0
    for _ in range(N):
        g, params = catalog.random_solvable_element(rng)
        pt = _display_point(rng)
        generic = G.coadjoint_group_action(g, G.DualPoint(pt, SOLV.tag)).coords
        closed = G.closed_form_solvable_action(params, pt)
        worst = max(worst, np.abs(generic - closed).max())
        unpinned = SOLV.to_display(G.coadjoint_dual(SOLV, g, SOLV.to_dual(pt)))
        t_worst = max(t_worst, abs(unpinned[5] - 1.0))
    record(1, "closed form vs first-principles coadjoint action", worst < 1e-9 and t_worst < 1e-9,
           f"max diff {worst:.2e} over {N} pairs, t = 1 kept to {t_worst:.1e}")


def test_criterion_02_theta_golden():
    rng = _rng(2)
    d = catalog.solvable_datum()
    # exact path, identity component: generic exact theta on words vs the golden formula
    exact_ok = True
    for _ in range(N):
        w = catalog.random_l_word(rng, d.alg)
        v = ob.theta(d, w)
        exact_ok &= v.dtype == object and np.array_equal(v, catalog.theta_word_golden(w))
    # exact path, all components: closed-form action at integer a vs (0, 0, 0, -e, c - a, 0)
    for _ in range(N):
        a = int(rng.integers(-3, 4))
        c, e = (Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 6))) for _ in range(2))
        v = catalog.theta_closed_form_exact(a, (-e, 0), c, e)
        exact_ok &= np.array_equal(v, la.frac_array([0, 0, 0, -e, c - a, 0]))
    num = 0.0
    for _ in range(N):
        l, (a, _, _, c, e, _) = catalog.random_l_element(rng)
        num = max(num, np.abs(SOLV.to_display(ob.theta(d, l)) - catalog.theta_golden_display(c, e, a)).max())
    cocycle = 0.0
    act = lambda g, v: G.coadjoint_dual(SOLV, g, v)  # noqa: E731
    for _ in range(N):
        l1, _ = catalog.random_l_element(rng)
        l2, _ = catalog.random_l_element(rng)
        cocycle = max(cocycle, co.group_cocycle_residual(lambda x: ob.theta(d, x), l1, l2, act))
    record(2, "theta golden value and cocycle identity", exact_ok and num < 1e-9 and cocycle < 1e-8,
           f"exact match {exact_ok} ({2 * N} values), numeric {num:.2e}, cocycle residual {cocycle:.2e}")


def test_criterion_03_kks_coordinate_forms():
    rng = _rng(3)
    X = catalog.entry("solvable_nonsplit").spaces()[0]
    U = catalog.entry("galilei_ext").spaces()[1]
    rx = max(V.kks_coordinate_residual(X, X.sample(rng)) for _ in range(N))
    ru = max(V.kks_coordinate_residual(U, U.sample(rng)) for _ in range(N))
    record(3, "KKS pairing vs coordinate symplectic forms", rx < 1e-9 and ru < 1e-9,
           f"dp^dq+dq^dr+dr^ds {rx:.2e}, M dV^dR {ru:.2e} at {N} points each")


def test_criterion_04_vanishing_law():
    rng = _rng(4)
    data = corpus.vanishing_corpus(20, seed=SEED)
    ok, count = True, 0
    for c in data:
        d = c.datum
        ok &= d.a_vanishes_on_k and la.is_zero(lie.restrict(d.a_check, d.l_complement))
        for w in corpus.random_l_words(rng, d, N):
            v = ob.theta(d, w)
            ok &= v.dtype == object and la.is_zero(v)
            count += 1
    record(4, "theta vanishes exactly when a|k = 0", ok, f"{len(data)} data x {N} witnesses = {count} exact zeros")


def test_criterion_05_class_comparison():
    rng = _rng(5)
    ok, count = True, 0
    for tag in catalog.tags():
        d = catalog.entry(tag).datum()
        ok &= bool(ob.class_comparison(d))
        count += 1
        for _ in range(20):
            d2 = d.with_complement(corpus.random_n_complement(rng, d))
            ok &= bool(ob.class_comparison(d2, corpus.random_l_complement(rng, d2)))
            count += 1
    record(5, "f - f_ext is a coboundary", ok, f"{count} exact solves over {len(catalog.tags())} catalog data")


def test_criterion_06_cohomology_kernel():
    algs = base_algebras() + [c.datum.alg for c in corpus.vanishing_corpus(20, seed=SEED)]
    dd = all(la.is_zero(co.ce_coboundary(a, k + 1) @ co.ce_coboundary(a, k)) for a in algs for k in (0, 1))
    h3 = lie.heisenberg(1)
    h2 = co.cohomology_dim(h3, 2)
    oracle = 3 - la.rank(co.ce_coboundary(h3, 2)) - la.rank(co.ce_coboundary(h3, 1))
    ab = [co.cohomology_dim(lie.abelian(n), 1) for n in range(1, 7)]
    ok = dd and h2 == 2 == oracle and ab == list(range(1, 7))
    record(6, "Chevalley-Eilenberg kernel", ok,
           f"d^2 = 0 on {len(algs)} algebras, H2(h3) = {h2} (rank oracle {oracle}), H1(R^n) = {ab}")


def test_criterion_07_splitting_verdicts():
    want = {"solvable_nonsplit": "NoSplit", "galilei_ext": "SplitsTrivially", "solvable_cover": "NoTrivialSplit"}
    got = {t: analyze_splitting(catalog.entry(t).splitting_input()).verdict for t in want}
    cites = analyze_splitting(catalog.entry("galilei_ext").splitting_input()).citations
    record(7, "splitting verdicts", got == want and "Cor1.iii" in cites,
           ", ".join(f"{t} -> {v}" for t, v in got.items()))


def test_criterion_08_moment_condition():
    worst, min_order, pairs, observed, exact = 0.0, np.inf, 0, 0, 0
    for k, tag in enumerate(catalog.tags()):
        rng = _rng(80 + k)
        for space in catalog.entry(tag).spaces():
            pts = [space.sample(rng) for _ in range(N)]
            for x in space.generators:
                pairs += 1
                orders = []
                for pt in pts:
                    r1, _, order = V.convergence_order(space, x, pt, V.DEFAULT_H)
                    worst = max(worst, r1)
                    if order is not None:
                        orders.append(order)
                if orders:
                    observed += 1
                    min_order = min(min_order, min(orders))
                else:
                    exact += 1
    ok = worst < 1e-6 and (observed == 0 or min_order >= V.ORDER_MIN)
    record(8, "moment-map condition and convergence order", ok,
           f"max residual {worst:.2e} over {pairs} (fixture, space, generator) pairs; "
           f"min order {min_order:.2f} on {observed} pairs, {exact} pairs at roundoff (quadratic moment)")


def test_criterion_09_fiber_decomposition():
    worst, dims, count = 0.0, True, 0
    for k, tag in enumerate(catalog.tags()):
        rng = _rng(90 + k)
        for space in catalog.entry(tag).spaces():
            if space.sample_fiber is None:
                continue
            for _ in range(FIBER_N):
                r, ok = V.fiber_orthogonality_residual(space, space.sample_fiber(rng))
                worst, dims = max(worst, r), dims and ok
                count += 1
    record(9, "symplectically orthogonal fiber decomposition", worst < 1e-8 and dims,
           f"max |omega(n(z), ker)| {worst:.2e}, dimension identity {dims} at {count} fiber points")


def test_criterion_10_koenig_split():
    rng = _rng(10)
    sc = GAL.dual_scale
    X = catalog.entry("galilei_ext").spaces()[0]
    parts = (lambda p: catalog.galilei_orbit_part(p) * sc, lambda p: catalog.galilei_proper_part(p) * sc)
    worst = 0.0
    for i in range(N):
        pt = rng.uniform(-1, 1, 12)
        if i == 0:
            pt[:6] = 0.0
        worst = max(worst, V.koenig_split_residual(X, pt, parts))
    X1, X2 = catalog._galilei_spaces(M=1.0)[0], catalog._galilei_spaces(M=2.0)[0]
    scale = 0.0
    for _ in range(N):
        pt = rng.uniform(-1, 1, 12)
        u1 = catalog.galilei_orbit_part(pt, 1.0) * sc
        z = catalog.galilei_proper_part(pt) * sc
        scale = max(scale, V.koenig_split_residual(X1, pt, (lambda p: u1, lambda p: z)),
                    V.koenig_split_residual(X2, pt, (lambda p: 2 * u1, lambda p: z)))
    record(10, "barycentric (Koenig) split of the moment map", worst < 1e-9 and scale < 1e-9,
           f"max residual {worst:.2e} at {N} points, mass scaling {scale:.2e}")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted((k, v) for k, v in dict(globals()).items() if k.startswith("test_criterion")):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
