"""Versioned text formats and the tagged JSON codec.

Every text file starts with a header line ``# mackey-<kind> v1``.  Blank
lines and text after ``#`` on later lines are ignored.  Rationals are
written ``n`` or ``n/d``.

algebra::

    # mackey-algebra v1
    dim 3
    labels x y z
    bracket 0 1 2 1 1        # [e0, e1] = (1/1) e2; i j k numerator denominator

datum (an algebra block, then the orbit data)::

    # mackey-datum v1
    name heis
    dim 3
    labels x y z
    bracket 0 1 2 1 1
    ideal 0 0 1              # one row per spanning vector of n
    a 1                      # values of a on the listed ideal rows
    complement 1 0 0         # optional rows spanning a complement of n
    a_check 0 0 1            # optional; default extends a by 0 on the complement
    flag N_connected yes     # yes / no / unknown
    fact nilpotent yes       # optional declared algebraic facts, checked

cocycle::

    # mackey-cocycle v1
    degree 2
    mode trivial             # or: module <dim>
    dim 3
    labels x y z             # optional
    entry 0 2 0 1 1          # indices i_1..i_k, module index, numerator, denominator

matrix element::

    # mackey-matrix v1
    tag solvable_nonsplit
    size 6
    1 0 0 0 0 0              # row-major floats, any line breaks
    ...

JSON reports tag every number with its arithmetic mode:
``{"mode": "exact", "value": "1/2"}`` or ``{"mode": "approx", "value": 0.5}``,
arrays as ``{"mode": ..., "shape": [...], "value": [...]}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import cohomology as co
from . import groups as G
from . import lie
from . import linalg as la
from . import obstruction as ob
from .errors import DomainError, ParseError
from .splitting import Flags

VERSION = "v1"
KINDS = ("algebra", "datum", "cocycle", "matrix")


# --------------------------------------------------------------------------
# rationals


def parse_rational(tok: str, line: int | None = None, source: str | None = None) -> Fraction:
    try:
        if tok.count("/") > 1 or any(c in tok for c in ".eE"):
            raise ValueError
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {tok!r}", line, source) from None


def format_rational(x) -> str:
    x = la.to_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _row(vals) -> str:
    return " ".join(format_rational(v) for v in vals)


# --------------------------------------------------------------------------
# line reader


@dataclass
class _Line:
    no: int
    key: str
    args: list


def _lines(text: str, kind: str, source: str | None) -> list[_Line]:
    raw = text.splitlines()
    header = next(((i, s.strip()) for i, s in enumerate(raw) if s.strip()), None)
    if header is None:
        raise ParseError("empty file", 1, source)
    i0, h = header
    parts = h.lstrip("#").split()
    if not h.startswith("#") or len(parts) != 2 or not parts[0].startswith("mackey-"):
        raise ParseError(f"missing header line '# mackey-{kind} {VERSION}'", i0 + 1, source)
    if parts[0] != f"mackey-{kind}":
        raise ParseError(f"expected a {kind} file, found {parts[0][7:]!r}", i0 + 1, source)
    if parts[1] != VERSION:
        raise ParseError(f"unsupported format version {parts[1]!r} (expected {VERSION})", i0 + 1, source)
    out = []
    for i, s in enumerate(raw[i0 + 1:], start=i0 + 2):
        s = s.split("#", 1)[0].strip()
        if s:
            toks = s.split()
            out.append(_Line(i, toks[0], toks[1:]))
    return out


def _int(tok, ln: _Line, source, lo=None, hi=None) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", ln.no, source) from None
    if (lo is not None and v < lo) or (hi is not None and v > hi):
        raise ParseError(f"index {v} out of range", ln.no, source)
    return v


def _read_text(path) -> tuple[str, str]:
    p = Path(path)
    try:
        return p.read_text(), str(p)
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", None, str(p)) from None


# --------------------------------------------------------------------------
# algebra


def _algebra_from_lines(lines, source) -> tuple[lie.LieAlgebra, list]:
    dim, labels, brackets, rest = None, None, [], []
    for ln in lines:
        if ln.key == "dim":
            if len(ln.args) != 1:
                raise ParseError("dim takes one integer", ln.no, source)
            dim = _int(ln.args[0], ln, source, lo=0)
        elif ln.key == "labels":
            labels = ln.args
        elif ln.key == "bracket":
            if dim is None:
                raise ParseError("bracket before dim", ln.no, source)
            if len(ln.args) != 5:
                raise ParseError("bracket needs i j k numerator denominator", ln.no, source)
            i, j, k = (_int(t, ln, source, 0, dim - 1) for t in ln.args[:3])
            num = _int(ln.args[3], ln, source)
            den = _int(ln.args[4], ln, source)
            if den == 0:
                raise ParseError("zero denominator", ln.no, source)
            brackets.append((ln.no, i, j, k, Fraction(num, den)))
        else:
            rest.append(ln)
    if dim is None:
        raise ParseError("missing 'dim' line", None, source)
    if labels is not None and len(labels) != dim:
        raise ParseError(f"{len(labels)} labels for dimension {dim}", None, source)
    c = la.zeros(dim, dim, dim)
    for no, i, j, k, v in brackets:
        if i == j and v != 0:
            raise ParseError(f"[e{i}, e{i}] must vanish", no, source)
        if (c[i, j, k] != 0 and c[i, j, k] != v) or (c[j, i, k] != 0 and c[j, i, k] != -v):
            raise ParseError(f"conflicting values for [e{i}, e{j}] component {k}", no, source)
        c[i, j, k] = v
        c[j, i, k] = -v
    # invariant violations (Jacobi) surface as DomainError, not ParseError
    return lie.LieAlgebra(c, labels), rest


def parse_algebra(text: str, source: str | None = None) -> lie.LieAlgebra:
    alg, rest = _algebra_from_lines(_lines(text, "algebra", source), source)
    if rest:
        raise ParseError(f"unknown key {rest[0].key!r}", rest[0].no, source)
    return alg


def _algebra_block(alg: lie.LieAlgebra) -> list[str]:
    out = [f"dim {alg.dim}", "labels " + " ".join(alg.labels)]
    for i, j, k, v in alg.nonzero_brackets():
        v = la.to_fraction(v)
        out.append(f"bracket {i} {j} {k} {v.numerator} {v.denominator}")
    return out


def format_algebra(alg: lie.LieAlgebra) -> str:
    return "\n".join([f"# mackey-algebra {VERSION}"] + _algebra_block(alg)) + "\n"


def load_algebra(path) -> lie.LieAlgebra:
    text, src = _read_text(path)
    return parse_algebra(text, src)


# --------------------------------------------------------------------------
# datum


_TRI = {"yes": True, "no": False, "unknown": None}


@dataclass
class DatumFile:
    datum: ob.OrbitDatum
    flags: Flags = field(default_factory=Flags)
    declared_facts: dict = field(default_factory=dict)


def _rat_row(ln: _Line, source, n: int | None = None) -> np.ndarray:
    vals = [parse_rational(t, ln.no, source) for t in ln.args]
    if n is not None and len(vals) != n:
        raise ParseError(f"{ln.key} row needs {n} entries, got {len(vals)}", ln.no, source)
    return la.frac_array(vals)


def parse_datum(text: str, source: str | None = None) -> DatumFile:
    alg, rest = _algebra_from_lines(_lines(text, "datum", source), source)
    n = alg.dim
    name, ideal_rows, a_vals, comp_rows, a_check = "", [], None, [], None
    flags, facts = {}, {}
    a_line = None
    for ln in rest:
        if ln.key == "name":
            name = " ".join(ln.args)
        elif ln.key == "ideal":
            ideal_rows.append(_rat_row(ln, source, n))
        elif ln.key == "complement":
            comp_rows.append(_rat_row(ln, source, n))
        elif ln.key == "a":
            a_vals, a_line = _rat_row(ln, source), ln
        elif ln.key == "a_check":
            a_check = _rat_row(ln, source, n)
        elif ln.key in ("flag", "fact"):
            if len(ln.args) != 2 or ln.args[1] not in _TRI:
                raise ParseError(f"{ln.key} needs a name and yes/no/unknown", ln.no, source)
            target, names = (flags, Flags.names()) if ln.key == "flag" else (facts, ("abelian", "nilpotent", "solvable"))
            if ln.args[0] not in names:
                raise ParseError(f"unknown {ln.key} {ln.args[0]!r}", ln.no, source)
            target[ln.args[0]] = _TRI[ln.args[1]]
        else:
            raise ParseError(f"unknown key {ln.key!r}", ln.no, source)
    if not ideal_rows:
        raise ParseError("missing 'ideal' rows", None, source)
    if a_vals is None:
        raise ParseError("missing 'a' line", None, source)
    rows = np.array(ideal_rows, dtype=object)
    if la.rank(rows) != len(ideal_rows):
        raise DomainError("ideal rows are linearly dependent")
    if len(a_vals) != len(ideal_rows):
        raise ParseError(f"a needs {len(ideal_rows)} values (one per ideal row)", a_line.no, source)
    ideal = lie.Subspace(alg, ideal_rows)
    xi = la.solve(rows, a_vals)
    a = lie.restrict(xi, ideal)
    comp = lie.Subspace(alg, comp_rows) if comp_rows else None
    datum = ob.OrbitDatum.build(alg, ideal, a, comp, a_check, name=name)
    return DatumFile(datum, Flags(**flags), facts)


def format_datum(datum: ob.OrbitDatum, flags: Flags | None = None, declared_facts: dict | None = None) -> str:
    out = [f"# mackey-datum {VERSION}"]
    if datum.name:
        out.append(f"name {datum.name}")
    out += _algebra_block(datum.alg)
    out += ["ideal " + _row(v) for v in datum.ideal.basis]
    out.append("a " + _row(datum.a))
    out += ["complement " + _row(v) for v in datum.complement.basis]
    out.append("a_check " + _row(datum.a_check))
    for k, v in (flags.as_dict() if flags else {}).items():
        if v is not None:
            out.append(f"flag {k} {'yes' if v else 'no'}")
    for k, v in (declared_facts or {}).items():
        if v is not None:
            out.append(f"fact {k} {'yes' if v else 'no'}")
    return "\n".join(out) + "\n"


def load_datum(path) -> DatumFile:
    text, src = _read_text(path)
    return parse_datum(text, src)


# --------------------------------------------------------------------------
# cocycle


def format_cocycle(cochain: co.Cochain) -> str:
    alg, k = cochain.algebra, cochain.degree
    mod = cochain.module
    out = [f"# mackey-cocycle {VERSION}", f"degree {k}",
           "mode trivial" if mod is None or (mod.dim == 1 and mod.is_trivial) else f"mode module {mod.dim}",
           f"dim {alg.dim}", "labels " + " ".join(alg.labels)]
    md = cochain.module_dim
    for idx, v in enumerate(cochain.vector):
        if v:
            combo = co._combos(alg.dim, k)[idx // md]
            v = la.to_fraction(v)
            out.append("entry " + " ".join(str(i) for i in combo) + f" {idx % md} {v.numerator} {v.denominator}")
    return "\n".join(out) + "\n"


@dataclass
class CocycleFile:
    degree: int
    module_dim: int
    trivial: bool
    dim: int
    labels: list | None
    entries: dict  # (indices tuple, module index) -> Fraction

    def cochain(self, alg: lie.LieAlgebra, module: co.Module | None = None) -> co.Cochain:
        if alg.dim != self.dim:
            raise DomainError(f"cocycle is on a {self.dim}-dimensional algebra, got {alg.dim}")
        if module is None and not self.trivial:
            raise DomainError("module cocycle needs the module")
        md = 1 if module is None else module.dim
        if md != self.module_dim:
            raise DomainError(f"module dimension {md} does not match the file ({self.module_dim})")
        combos = co._combos(alg.dim, self.degree)
        pos = {c: i for i, c in enumerate(combos)}
        vec = la.zeros(len(combos) * md)
        for (idx, m), v in self.entries.items():
            sign, s = co._sort_sign(idx)
            if sign == 0:
                continue
            vec[pos[s] * md + m] += sign * v
        return co.Cochain(alg, self.degree, vec, module)


def parse_cocycle(text: str, source: str | None = None) -> CocycleFile:
    degree = mode = dim = None
    labels, mdim, trivial, entries = None, 1, True, {}
    for ln in _lines(text, "cocycle", source):
        if ln.key == "degree":
            degree = _int(ln.args[0] if ln.args else "", ln, source, 0, co.MAX_DEGREE)
        elif ln.key == "mode":
            if ln.args == ["trivial"]:
                mode, trivial, mdim = "trivial", True, 1
            elif len(ln.args) == 2 and ln.args[0] == "module":
                mode, trivial, mdim = "module", False, _int(ln.args[1], ln, source, 1)
            else:
                raise ParseError("mode is 'trivial' or 'module <dim>'", ln.no, source)
        elif ln.key == "dim":
            dim = _int(ln.args[0] if ln.args else "", ln, source, 0)
        elif ln.key == "labels":
            labels = ln.args
        elif ln.key == "entry":
            if degree is None or dim is None or mode is None:
                raise ParseError("entry before degree, mode and dim", ln.no, source)
            if len(ln.args) != degree + 3:
                raise ParseError(f"entry needs {degree} indices, module index, numerator, denominator", ln.no, source)
            idx = tuple(_int(t, ln, source, 0, dim - 1) for t in ln.args[:degree])
            m = _int(ln.args[degree], ln, source, 0, mdim - 1)
            num, den = _int(ln.args[-2], ln, source), _int(ln.args[-1], ln, source)
            if den == 0:
                raise ParseError("zero denominator", ln.no, source)
            entries[(idx, m)] = entries.get((idx, m), Fraction(0)) + Fraction(num, den)
        else:
            raise ParseError(f"unknown key {ln.key!r}", ln.no, source)
    if degree is None or dim is None or mode is None:
        raise ParseError("cocycle file needs degree, mode and dim", None, source)
    return CocycleFile(degree, mdim, trivial, dim, labels, entries)


def load_cocycle(path) -> CocycleFile:
    text, src = _read_text(path)
    return parse_cocycle(text, src)


# --------------------------------------------------------------------------
# matrix group element


def format_matrix(g: G.MatrixGroupElement) -> str:
    e = np.asarray(g.entries, dtype=float)
    rows = [" ".join(repr(float(v)) for v in r) for r in e]
    return "\n".join([f"# mackey-matrix {VERSION}", f"tag {g.tag}", f"size {e.shape[0]}"] + rows) + "\n"


def parse_matrix(text: str, source: str | None = None) -> G.MatrixGroupElement:
    tag = size = None
    vals = []
    for ln in _lines(text, "matrix", source):
        if ln.key == "tag":
            tag = ln.args[0] if ln.args else None
        elif ln.key == "size":
            size = _int(ln.args[0] if ln.args else "", ln, source, 1)
        else:
            for t in [ln.key] + ln.args:
                try:
                    vals.append(float(t))
                except ValueError:
                    raise ParseError(f"not a float: {t!r}", ln.no, source) from None
    if tag is None or size is None:
        raise ParseError("matrix file needs tag and size", None, source)
    if len(vals) != size * size:
        raise ParseError(f"expected {size * size} entries, got {len(vals)}", None, source)
    return G.MatrixGroupElement(np.array(vals).reshape(size, size), tag)


def load_matrix(path) -> G.MatrixGroupElement:
    text, src = _read_text(path)
    return parse_matrix(text, src)


# --------------------------------------------------------------------------
# tagged JSON


def _is_exact_scalar(x) -> bool:
    return isinstance(x, Fraction)


def encode(obj):
    """Convert a report tree to JSON-ready data with mode-tagged numbers."""
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return {"mode": "exact", "type": "int", "value": str(int(obj))}
    if _is_exact_scalar(obj):
        return {"mode": "exact", "value": format_rational(obj)}
    if isinstance(obj, (float, np.floating)):
        return {"mode": "approx", "value": float(obj)}
    if isinstance(obj, np.ndarray):
        if obj.dtype == object:
            flat = [format_rational(v) for v in obj.ravel()]
            mode = "exact"
        else:
            flat = [float(v) for v in obj.astype(float).ravel()]
            mode = "approx"
        return {"mode": mode, "shape": list(obj.shape), "value": flat}
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def decode(obj):
    """Inverse of :func:`encode`."""
    if isinstance(obj, list):
        return [decode(v) for v in obj]
    if isinstance(obj, dict):
        if set(obj) >= {"mode", "value"} and obj["mode"] in ("exact", "approx") and set(obj) <= {"mode", "value", "shape", "type"}:
            if "shape" in obj:
                shape = tuple(obj["shape"])
                if obj["mode"] == "exact":
                    arr = la.frac_array([Fraction(v) for v in obj["value"]]) if obj["value"] else la.zeros(0)
                    return arr.reshape(shape)
                return np.array(obj["value"], dtype=float).reshape(shape)
            if obj["mode"] == "exact":
                return int(obj["value"]) if obj.get("type") == "int" else Fraction(obj["value"])
            return float(obj["value"])
        return {k: decode(v) for k, v in obj.items()}
    return obj


def dumps(obj) -> str:
    return json.dumps(encode(obj), sort_keys=True, indent=1) + "\n"


def loads(text: str):
    return decode(json.loads(text))


def same(a, b) -> bool:
    """Structural equality for report trees (arrays compared exactly, dtype included)."""
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        if not (isinstance(a, np.ndarray) and isinstance(b, np.ndarray)):
            return False
        return a.shape == b.shape and (a.dtype == object) == (b.dtype == object) and bool(np.all(a == b))
    if isinstance(a, dict) and isinstance(b, dict):
        return a.keys() == b.keys() and all(same(a[k], b[k]) for k in a)
    if isinstance(a, (list, tuple)) and isinstance(b, (list, tuple)):
        return len(a) == len(b) and all(same(x, y) for x, y in zip(a, b))
    if type(a) is not type(b) and not (isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer))):
        if not (isinstance(a, (float, np.floating)) and isinstance(b, (float, np.floating))):
            return False
    return a == b
