"""Analysis, verification and cohomology reports as plain trees.

Reports are dicts of str, bool, int, Fraction, float and numpy arrays, so
that :mod:`formats` can serialize them with mode tags and read them back.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import catalog
from . import cohomology as co
from . import lie
from . import obstruction as ob
from . import verify
from .formats import DatumFile, format_cocycle
from .splitting import Flags, SplittingInput, analyze_splitting

ANALYSIS_FORMAT = "mackey-analysis v1"
VERIFY_FORMAT = "mackey-verify v1"
COHOMOLOGY_FORMAT = "mackey-cohomology v1"


@dataclass
class Source:
    """A datum together with its flags, witnesses and optional fixture tag."""

    datum: ob.OrbitDatum
    flags: Flags
    declared_facts: dict
    witnesses: list | None = None
    extra_theta: tuple = ()
    tag: str | None = None

    @classmethod
    def from_tag(cls, tag: str) -> Source:
        e = catalog.entry(tag)
        return cls(e.datum(), e.flags, {}, list(e.witnesses()), tuple(e.extra_theta()), tag)

    @classmethod
    def from_file(cls, df: DatumFile) -> Source:
        return cls(df.datum, df.flags, df.declared_facts)


def _datum_echo(d: ob.OrbitDatum) -> dict:
    return {
        "name": d.name,
        "dim": d.alg.dim,
        "labels": list(d.alg.labels),
        "brackets": [[i, j, k, v] for i, j, k, v in d.alg.nonzero_brackets()],
        "ideal": d.ideal.basis,
        "a": d.a,
        "a_check": d.a_check,
        "complement": d.complement.basis,
    }


def _verdict_block(inp: SplittingInput) -> dict:
    v = analyze_splitting(inp)
    return {
        "verdict": v.verdict,
        "citations": list(v.citations),
        "justification": [{"rule": r.rule, "citation": r.citation, "detail": r.detail} for r in v.justification],
        "facts": {"abelian": inp.facts.abelian, "nilpotent": inp.facts.nilpotent, "solvable": inp.facts.solvable},
        "flags": {k: ("unknown" if val is None else ("yes" if val else "no")) for k, val in inp.flags.as_dict().items()},
    }


def quotient_l_k(d: ob.OrbitDatum) -> lie.LieAlgebra:
    return ob._l_quotient(d).quotient.algebra


def cohomology_block(alg: lie.LieAlgebra, degrees, module: co.Module | None = None) -> dict:
    out = {}
    for k in degrees:
        reps = co.cohomology_basis(alg, k, module)
        out[f"H{k}"] = {"dim": len(reps), "representatives": [format_cocycle(r) for r in reps]}
    return out


def residual_rows(reports) -> list:
    return [
        {
            "fixture": r.fixture,
            "test": r.test,
            "samples": r.samples,
            "max_residual": r.max_residual,
            "tolerance": r.tolerance,
            "passed": r.passed,
            "detail": {k: v for k, v in r.detail.items() if k != "extra_ok"},
        }
        for r in reports
    ]


def analysis_report(src: Source, *, degrees=(1, 2), samples: int = 0, seed: int | None = None) -> dict:
    d = src.datum
    inp = SplittingInput.from_ideal(d.alg, d.ideal, src.flags, src.declared_facts, presentation=src.tag or d.name)
    verdict = _verdict_block(inp)
    obstruction = ob.obstruction_report(d, src.witnesses, src.extra_theta)
    seed = verify.default_seed() if seed is None else seed
    table = []
    if src.tag is not None and samples > 0:
        table = residual_rows(verify.run_verify(src.tag, seed=seed, samples=samples))
    return {
        "format": ANALYSIS_FORMAT,
        "source": src.tag or "file",
        "datum": _datum_echo(d),
        "stabilizer": {
            "dim_g": d.alg.dim, "dim_n": d.ideal.dim, "dim_l": d.l.dim, "dim_k": d.k.dim, "dim_j": d.j.dim,
            "l": d.l.basis, "k": d.k.basis, "j": d.j.basis,
        },
        "annihilator": {"dim": d.annihilator.dim, "basis": d.annihilator.basis},
        "obstruction": obstruction,
        "cohomology": {"algebra": "l/k", "coefficients": "trivial", **cohomology_block(quotient_l_k(d), degrees)},
        "splitting": verdict,
        "verification": {"seed": seed, "samples": samples, "rows": table},
    }


def verify_report(tag: str, *, seed: int | None = None, samples: int = 100, h: float = verify.DEFAULT_H,
                  moment_tol: float = verify.MOMENT_TOL) -> dict:
    seed = verify.default_seed() if seed is None else seed
    reports = verify.run_verify(tag, seed=seed, samples=samples, h=h, moment_tol=moment_tol)
    rows = residual_rows(reports)
    return {"format": VERIFY_FORMAT, "fixture": tag, "seed": seed, "samples": samples, "h": h,
            "passed": all(r["passed"] for r in rows), "rows": rows}


# --------------------------------------------------------------------------
# text renderings (best effort; the JSON form is the contract)


def _fmt(v) -> str:
    from .formats import format_rational
    import numpy as np

    if isinstance(v, np.ndarray):
        if v.dtype == object:
            if v.ndim == 1:
                return "(" + ", ".join(format_rational(x) for x in v) + ")"
            return "[" + "; ".join(_fmt(r) for r in v) + "]"
        return np.array2string(v, precision=6, separator=", ")
    return str(v)


def analysis_text(rep: dict) -> str:
    d, st, obs, sp = rep["datum"], rep["stabilizer"], rep["obstruction"], rep["splitting"]
    lines = [
        f"analysis of {rep['source']} ({d['name'] or 'unnamed'})",
        f"  g: dim {st['dim_g']}, labels {' '.join(d['labels'])}",
        f"  n: dim {st['dim_n']}   l: dim {st['dim_l']}   k: dim {st['dim_k']}   j: dim {st['dim_j']}",
        f"  a_check = {_fmt(d['a_check'])}",
        f"  a|k = {_fmt(obs['a_on_k'])}  (vanishes: {obs['a_vanishes_on_k']})",
        f"  annihilator of n: dim {rep['annihilator']['dim']}",
        "obstruction",
        f"  symplectic: {obs['symplectic_obstruction']}",
        f"  infinitesimal class on l/k: {obs['infinitesimal_class']}",
        f"  f - f_ext coboundary: {obs['f_minus_f_ext_is_coboundary']}",
        f"  extension k/j -> l/j -> l/k dims: {obs['extension_dims']}",
    ]
    for w in obs["theta_witnesses"]:
        mode = "exact" if w["exact"] else "approx"
        lines.append(f"  theta[{w['witness']}] = {_fmt(w['value'])}  ({mode}, certifies: {w['certifies_class']})")
    coh = rep["cohomology"]
    dims = ", ".join(f"{k} = {v['dim']}" for k, v in coh.items() if k.startswith("H"))
    lines.append(f"cohomology of {coh['algebra']} ({coh['coefficients']}): {dims}")
    lines.append(f"splitting: {sp['verdict']}")
    for j in sp["justification"]:
        lines.append(f"  {j['rule']} [{j['citation']}] {j['detail']}")
    rows = rep["verification"]["rows"]
    if rows:
        lines.append(f"verification (seed {rep['verification']['seed']})")
        lines += ["  " + row_text(r) for r in rows]
    return "\n".join(lines) + "\n"


def row_text(r: dict) -> str:
    mark = "PASS" if r["passed"] else "FAIL"
    return (f"{mark}  {r['fixture']:<18} {r['test']:<28} n={r['samples']:<4d} "
            f"max={r['max_residual']:.3e}  tol={r['tolerance']:.0e}")


def verify_text(rep: dict) -> str:
    head = f"verify {rep['fixture']}  seed={rep['seed']}  samples={rep['samples']}  h={rep['h']:g}"
    tail = "all checks pass" if rep["passed"] else "SOME CHECKS FAILED"
    return "\n".join([head] + [row_text(r) for r in rep["rows"]] + [tail]) + "\n"
