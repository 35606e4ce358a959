"""The centrally extended Galilei group on a free system.

The splitting verdict follows from N being connected and nilpotent; the
finite-difference table then checks the moment maps numerically, including
the split of the total moment into barycentric and proper parts.
"""

import numpy as np

from mackey import catalog
from mackey import obstruction as ob
from mackey import verify as V
from mackey.splitting import analyze_splitting

e = catalog.entry("galilei_ext")
v = analyze_splitting(e.splitting_input())
print("verdict:", v.verdict)
for r in v.justification:
    print(f"  {r.rule} [{r.citation}] {r.detail}")

rep = ob.obstruction_report(e.datum())
print("\nobstruction:", rep["symplectic_obstruction"])
print("infinitesimal class:", rep["infinitesimal_class"])

print("\nresidual table (20 samples):")
for row in V.run_verify("galilei_ext", seed=1, samples=20):
    print(" ", row.line())

X = e.spaces()[0]
sc = catalog.G.group("galilei_ext").dual_scale
pt = np.r_[np.zeros(6), 0.3, -0.1, 0.2, 0.5, 0.4, -0.6]
parts = (lambda p: catalog.galilei_orbit_part(p) * sc, lambda p: catalog.galilei_proper_part(p) * sc)
print("\nat R = V = 0 the barycentric part is", np.round(catalog.galilei_orbit_part(pt), 12))
print("split residual there:", V.koenig_split_residual(X, pt, parts))
