import pytest
from hypothesis import given
from hypothesis import strategies as st

from mackey import catalog, lie
from mackey import splitting as S
from mackey.errors import InconsistentFlags

tri = st.sampled_from([True, False, None])
ORDER = {S.UNKNOWN: 0, S.NO_TRIVIAL_SPLIT: 1, S.NO_SPLIT: 2, S.SPLITS_TRIVIALLY: 1}


def _input(alg=None, ideal=None, **flags):
    alg = alg or lie.abelian(2)
    ideal = ideal or lie.whole(alg)
    return S.SplittingInput.from_ideal(alg, ideal, S.Flags(**flags))


@pytest.mark.parametrize("tag,verdict", [
    ("solvable_nonsplit", S.NO_SPLIT),
    ("galilei_ext", S.SPLITS_TRIVIALLY),
    ("solvable_cover", S.NO_TRIVIAL_SPLIT),
    ("kodaira_thurston", S.NO_SPLIT),
])
def test_catalog_verdicts(tag, verdict):
    assert S.analyze_splitting(catalog.entry(tag).splitting_input()).verdict == verdict


def test_galilei_cites_nilpotent_rule():
    v = S.analyze_splitting(catalog.entry("galilei_ext").splitting_input())
    assert "Cor1.iii" in v.citations
    rule = next(r for r in v.justification if r.citation == "Cor1.iii")
    assert "nilpotent" in rule.detail


def test_solvable_cites_both_obstructions():
    v = S.analyze_splitting(catalog.entry("solvable_nonsplit").splitting_input())
    assert v.citations == ("Cor2.i", "Cor2.ii")


def test_nilpotency_is_computed_not_declared():
    h = lie.heisenberg(1)
    inp = S.SplittingInput.from_ideal(h, lie.whole(h), S.Flags(N_connected=True))
    assert inp.facts.nilpotent and not inp.facts.abelian
    assert S.analyze_splitting(inp).verdict == S.SPLITS_TRIVIALLY
    with pytest.raises(InconsistentFlags, match="nilpotent"):
        S.SplittingInput.from_ideal(h, lie.whole(h), declared_facts={"nilpotent": False})
    S.SplittingInput.from_ideal(h, lie.whole(h), declared_facts={"nilpotent": True, "abelian": None})


def test_contradictory_flags_name_both_rules():
    with pytest.raises(InconsistentFlags, match=r"R1.*R2"):
        S.analyze_splitting(_input(N_connected=True, gamma_acts_trivially=False))


def test_unknown_without_flags():
    assert S.analyze_splitting(_input()).verdict == S.UNKNOWN
    assert S.analyze_splitting(_input(fiber_connected=True)).verdict == S.UNKNOWN


def test_each_sufficient_condition_fires():
    assert "Cor1.i" in S.analyze_splitting(_input(stabilizer_connected=True)).citations
    assert "Cor1.ii" in S.analyze_splitting(_input(N_connected=True, U_simply_connected=True)).citations
    sl2 = lie.from_brackets(["h", "x", "y"], [("h", "x", "x", 2), ("h", "y", "y", -2), ("x", "y", "h", 1)])
    v = S.analyze_splitting(_input(sl2, N_connected=True, N_compact=True))
    assert v.verdict == S.SPLITS_TRIVIALLY and "compact" in v.justification[0].detail
    v = S.analyze_splitting(_input(sl2, N_connected=True, N_complex_semisimple_orbit=True))
    assert "Cor1.iv" in v.citations
    # a connected but non-nilpotent N with no further facts decides nothing
    assert S.analyze_splitting(_input(sl2, N_connected=True)).verdict == S.UNKNOWN


@given(st.tuples(*[tri] * 8), st.integers(0, 7), st.booleans())
def test_adding_information_never_retracts_a_verdict(vals, i, new):
    # refining an unknown flag either keeps the verdict, sharpens it, or is inconsistent
    sl2 = lie.from_brackets(["h", "x", "y"], [("h", "x", "x", 2), ("h", "y", "y", -2), ("x", "y", "h", 1)])
    names = S.Flags.names()
    flags = dict(zip(names, vals))
    try:
        before = S.analyze_splitting(_input(sl2, **flags)).verdict
    except InconsistentFlags:
        return
    if flags[names[i]] is not None:
        return
    flags[names[i]] = new
    try:
        after = S.analyze_splitting(_input(sl2, **flags)).verdict
    except InconsistentFlags:
        return
    if before != S.UNKNOWN:
        assert after == before or (before == S.NO_TRIVIAL_SPLIT and after == S.NO_SPLIT)


@given(st.tuples(*[tri] * 8))
def test_verdict_is_well_formed(vals):
    flags = dict(zip(S.Flags.names(), vals))
    try:
        v = S.analyze_splitting(_input(lie.heisenberg(1), **flags))
    except InconsistentFlags:
        assert flags["gamma_acts_trivially"] is False
        return
    assert v.verdict in S.VERDICTS and v.justification
    if v.verdict == S.SPLITS_TRIVIALLY:
        assert flags["gamma_acts_trivially"] is not False
