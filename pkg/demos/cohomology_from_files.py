"""Read an algebra and a datum from text files and query them.

Shows the file formats: the Heisenberg algebra has H2 of dimension 2, and
an aff(1) + R datum extended by a derivation with a vanishing on k has theta identically zero.
"""

import tempfile
from pathlib import Path

from mackey import cohomology as co
from mackey import formats
from mackey import obstruction as ob

H3 = """# mackey-algebra v1
dim 3
labels x y z
bracket 0 1 2 1 1
"""

# n = aff(1) + R = span{x, y, r}, extended by t acting on r; a = y* vanishes on k = span{r}
DATUM = """# mackey-datum v1
dim 4
labels x y r t
bracket 0 1 1 1 1
bracket 3 2 2 1 1
ideal 1 0 0 0
ideal 0 1 0 0
ideal 0 0 1 0
a 0 1 0
"""

with tempfile.TemporaryDirectory() as tmp:
    p = Path(tmp) / "h3.alg"
    p.write_text(H3)
    h3 = formats.load_algebra(p)
    for k in (0, 1, 2):
        print(f"H{k}(h3) =", co.cohomology_dim(h3, k))
    for r in co.cohomology_basis(h3, 2):
        print(formats.format_cocycle(r), end="")

    q = Path(tmp) / "aff.dat"
    q.write_text(DATUM)
    d = formats.load_datum(q).datum
    rep = ob.obstruction_report(d)
    print("\na|k vanishes:", rep["a_vanishes_on_k"], " obstruction:", rep["symplectic_obstruction"])
