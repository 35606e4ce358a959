"""Walk through the obstruction for the solvable fixture.

theta is computed from the coadjoint action on exp-words, compared with
its closed form, and the class of f on l/k is shown to be nontrivial.
"""

import numpy as np

from mackey import catalog
from mackey import cohomology as co
from mackey import obstruction as ob
from mackey.splitting import analyze_splitting

d = catalog.solvable_datum()
print("g labels:", d.alg.labels)
print("a_check  =", ob.rational_row(d.a_check))
print("a on k   =", ob.rational_row(d.a_on_k), "(nonzero, so theta may be nontrivial)")

rng = np.random.default_rng(0)
print("\ntheta on random words in the identity component (exact):")
for _ in range(3):
    w = catalog.random_l_word(rng, d.alg)
    v = ob.theta(d, w)
    assert np.array_equal(v, catalog.theta_word_golden(w))
    print("  ", ob.rational_row(v), " in ann(n):", ob.in_annihilator(d, v))

print("\nclosed form on other components, display coordinates (0, 0, 0, -e, c - a, 0):")
for a, c, e in [(1, 0, 0), (2, 1, 3), (-1, 2, -1)]:
    print(f"   a={a:2d} c={c} e={e:2d}:", ob.rational_row(catalog.theta_closed_form_exact(a, (-e, 0), c, e)))

f = ob.infinitesimal_obstruction(d)
lk = ob.extension_data(d).l_mod_k.algebra
print("\nf on l/k:", [ob.rational_row(r) for r in f.matrix])
print("H2(l/k) =", co.cohomology_dim(lk, 2), " f is a coboundary:", bool(co.is_coboundary(f)))
print("f - f_ext is a coboundary:", bool(ob.class_comparison(d)))
print("splitting verdict:", analyze_splitting(catalog.entry("solvable_nonsplit").splitting_input()).verdict)
