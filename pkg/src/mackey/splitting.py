"""Splitting verdicts for primary spaces from algebraic facts and declared flags.

Topological facts are inputs (tri-state: True, False, None for unknown).
Abelian/nilpotent facts about the ideal are computed from its series and
can't be overridden.

Rules, with stable citation ids:

* R1 (Cor1.i-iv): any sufficient condition for a trivial split fires.
* R2 (Cor2.i): the component group acts nontrivially on the fiber, so the
  space does not split trivially.
* R3 (Cor2.ii): the fiber is connected, so the space does not split
  nontrivially.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields

from . import lie
from .errors import InconsistentFlags

SPLITS_TRIVIALLY = "SplitsTrivially"
NO_TRIVIAL_SPLIT = "NoTrivialSplit"
NO_SPLIT = "NoSplit"
UNKNOWN = "Unknown"
VERDICTS = (SPLITS_TRIVIALLY, NO_TRIVIAL_SPLIT, NO_SPLIT, UNKNOWN)


@dataclass(frozen=True)
class Flags:
    N_connected: bool | None = None
    U_simply_connected: bool | None = None
    stabilizer_connected: bool | None = None
    fiber_connected: bool | None = None
    gamma_acts_trivially: bool | None = None
    N_compact: bool | None = None
    N_exponential: bool | None = None
    N_complex_semisimple_orbit: bool | None = None

    @classmethod
    def names(cls) -> tuple:
        return tuple(f.name for f in fields(cls))

    def as_dict(self) -> dict:
        return {f: getattr(self, f) for f in self.names()}


@dataclass(frozen=True)
class AlgebraFacts:
    abelian: bool
    nilpotent: bool
    solvable: bool

    @classmethod
    def of(cls, alg: lie.LieAlgebra) -> AlgebraFacts:
        s = lie.series(alg)
        return cls(s.is_abelian, s.is_nilpotent, s.is_solvable)


@dataclass(frozen=True)
class SplittingInput:
    facts: AlgebraFacts
    flags: Flags = field(default_factory=Flags)
    presentation: str = ""

    @classmethod
    def from_ideal(cls, alg: lie.LieAlgebra, ideal: lie.Subspace, flags: Flags | None = None,
                   declared_facts: dict | None = None, presentation: str = "") -> SplittingInput:
        """Fill the algebraic facts from the ideal's series.

        ``declared_facts`` (e.g. ``{"nilpotent": False}``) is checked against
        the computed values and rejected on disagreement.
        """
        facts = AlgebraFacts.of(lie.subalgebra(alg, ideal))
        for name, val in (declared_facts or {}).items():
            if val is not None and getattr(facts, name) != val:
                raise InconsistentFlags(
                    f"declared {name}={val} contradicts the computed value {getattr(facts, name)}"
                )
        return cls(facts, flags or Flags(), presentation)


@dataclass(frozen=True)
class Rule:
    rule: str
    citation: str
    detail: str


@dataclass(frozen=True)
class SplittingVerdict:
    verdict: str
    justification: tuple

    @property
    def citations(self) -> tuple:
        return tuple(r.citation for r in self.justification)


def _r1(inp: SplittingInput) -> list[Rule]:
    f, a = inp.flags, inp.facts
    out = []
    if f.stabilizer_connected is True:
        out.append(Rule("R1", "Cor1.i", "points of U have connected stabilizers in N"))
    if f.N_connected is True and f.U_simply_connected is True:
        out.append(Rule("R1", "Cor1.ii", "N connected and U simply connected"))
    if f.N_connected is True:
        kinds = [name for name, ok in (
            ("abelian", a.abelian),
            ("nilpotent", a.nilpotent),
            ("compact", f.N_compact is True),
            ("exponential", f.N_exponential is True),
        ) if ok]
        if kinds:
            out.append(Rule("R1", "Cor1.iii", "N connected and " + " and ".join(kinds)))
        if f.N_complex_semisimple_orbit is True:
            out.append(Rule("R1", "Cor1.iv", "N connected complex semisimple, U semisimple orbit"))
    return out


def analyze_splitting(inp: SplittingInput) -> SplittingVerdict:
    r1 = _r1(inp)
    r2 = inp.flags.gamma_acts_trivially is False
    r3 = inp.flags.fiber_connected is True
    rule2 = Rule("R2", "Cor2.i", "component group acts nontrivially on the fiber, so no trivial split")
    rule3 = Rule("R3", "Cor2.ii", "fiber is connected, so no nontrivial split")
    if r1 and r2:
        raise InconsistentFlags(
            f"rules {r1[0].rule} ({r1[0].citation}) and R2 (Cor2.i) both fire: "
            "a trivially split space has a trivially acting component group"
        )
    if r1:
        rules = list(r1) + ([rule3] if r3 else [])
        return SplittingVerdict(SPLITS_TRIVIALLY, tuple(rules))
    if r2 and r3:
        return SplittingVerdict(NO_SPLIT, (rule2, rule3))
    if r2:
        return SplittingVerdict(NO_TRIVIAL_SPLIT, (rule2,))
    if r3:
        return SplittingVerdict(UNKNOWN, (rule3, Rule("none", "none", "no rule decides triviality")))
    return SplittingVerdict(UNKNOWN, (Rule("none", "none", "no rule fired on the given flags"),))
