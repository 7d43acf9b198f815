import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_chain.catalog import builtin_entries, find_entry
from spectral_chain.engine import (
    BOUNDARY_ARROWS,
    INCLUSIONS,
    RULES,
    SpectraProfile,
    SpectrumKind as K,
    apply_rules,
    bw_simply_connected_check,
    derived_kinds,
    meromorphic_check,
    subsets,
    supersets,
    verify_all,
    verify_boundary_diagrams,
    verify_eta_theorem,
    verify_moved_boundary,
    verify_omega,
)
from spectral_chain.engine.expr import Acc, Guard, Int, Join, Ref
from spectral_chain.errors import InconsistentProfile, InvalidInput, MissingKinds, RuleConflict
from spectral_chain.region import Circle, ClosedDisk, Point, Segment, SpectralRegion, region, subset
from spectral_chain.scalar import ExactScalar

O = ExactScalar(0)
CIRCLE = region(Circle(O, 1))
DISK = region(ClosedDisk(O, 1))
EMPTY = SpectralRegion.empty()
ORIGIN = region(Point(O))
FULL_ENTRIES = [e for e in builtin_entries() if not e.is_membership_entry]


def profile(**kinds):
    return SpectraProfile.from_given("T", {K.parse(k): v for k, v in kinds.items()})


def full(name):
    return apply_rules(find_entry(name).given)


# ---------------------------------------------------------------- kinds


def test_kind_vocabulary():
    assert len(K) == 30
    assert K.parse("Phi+") is K.PHI_PLUS
    with pytest.raises(InvalidInput):
        K.parse("nope")


def test_standing_chain_in_lattice():
    chain = [K.TUD, K.QPHI, K.KT, K.BPHI, K.BW, K.D]
    for lo, hi in zip(chain, chain[1:]):
        assert hi in supersets(lo) and lo in subsets(hi)
    assert K.SIGMA in supersets(K.TUD)


def test_inclusions_carry_citations():
    assert all(c for _, _, c in INCLUSIONS)


# ---------------------------------------------------------------- rules


def test_rules_are_data_with_citations():
    for rule in RULES:
        assert rule.id and rule.citation
        assert rule.to_json()["id"] == rule.id


def test_forward_shift_example_uses_cor_dra_1():
    out = apply_rules(profile(ap=CIRCLE, TUD=CIRCLE))
    assert out[K.LD] == CIRCLE
    assert out.provenance[K.LD].rule == "cor-Dra-1"


def test_descent_example_uses_cor_dra_2():
    out = apply_rules(profile(su=DISK, TUD=CIRCLE))
    assert out[K.DSC] == DISK
    assert out.provenance[K.DSC].rule == "cor-Dra-2"


def test_finite_matrix_profile_has_empty_drazin_spectrum():
    pts = region(Point(O), Point(ExactScalar(1, 1)))
    out = apply_rules(profile(sigma=pts, TUD=EMPTY))
    for kind in (K.D, K.LD, K.RD, K.BW, K.BPHI):
        assert out[kind] == EMPTY


def test_every_derived_entry_records_its_rule():
    out = full("cesaro")
    for kind in derived_kinds(out):
        prov = out.provenance[kind]
        assert prov.rule and prov.inputs


def test_rule_conflict_is_fatal_in_strict_mode():
    # consistent with the lattice, but the descent formula forces the whole disk
    given = {K.SU: DISK, K.TUD: CIRCLE, K.DSC: region(Circle(O, 1), Point(O))}
    with pytest.raises(RuleConflict):
        apply_rules(SpectraProfile.from_given("T", given))
    lenient = apply_rules(SpectraProfile.from_given("T", given, strict=False), strict=False)
    assert any(d.code == "RULE_CONFLICT" for d in lenient.diagnostics)


def test_lattice_checked_on_insert():
    with pytest.raises(InconsistentProfile):
        profile(TUD=DISK, D=CIRCLE)
    lenient = SpectraProfile.from_given("T", {K.TUD: DISK, K.D: CIRCLE}, strict=False)
    assert lenient.diagnostics


def test_line_rule_guard():
    seg = region(Segment(ExactScalar(-1), ExactScalar(1)))
    out = apply_rules(profile(W=region(Segment(ExactScalar(-1), ExactScalar(1)), Point(ExactScalar(5))), TUD=seg))
    assert out[K.BW] == out[K.D] == seg
    # a segment of Weyl spectrum cannot sit outside the TUD spectrum: both routes fire and disagree
    with pytest.raises(RuleConflict):
        apply_rules(profile(W=seg, TUD=EMPTY))
    # circles never count as lying in a line
    assert not Guard("contained-in-line", Ref(K.W)).holds({K.W: CIRCLE})


def test_one_component_rule():
    out = apply_rules(profile(BW=DISK))
    assert out[K.D] == DISK
    assert out.provenance[K.D].rule in ("one-component-rule", "squeeze")


def test_boundary_acc_rule():
    out = apply_rules(profile(ap=CIRCLE))
    assert out[K.TUD] == CIRCLE


def test_acc_and_int_forms_agree_on_catalog():
    for entry in FULL_ENTRIES:
        out = apply_rules(entry.given)
        for rule in RULES:
            if rule.dual is None or not rule.inputs() <= set(out.kinds()):
                continue
            env = dict(out.assigned)
            assert rule.expression.evaluate(env) == rule.dual.evaluate(env), (entry.name, rule.id)


def test_expression_printing():
    e = Join(Ref(K.TUD), Acc(Ref(K.SIGMA)))
    assert str(e) == "σ_TUD ∪ acc σ_sigma"
    assert Join(Ref(K.TUD), Int(Ref(K.SIGMA))).evaluate({K.TUD: CIRCLE, K.SIGMA: DISK}) == DISK


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([e.name for e in FULL_ENTRIES]))
def test_rule_order_confluence(seed, name):
    entry = find_entry(name)
    order = list(RULES)
    random.Random(seed).shuffle(order)
    a = apply_rules(entry.given)
    b = apply_rules(entry.given, rules=order)
    assert a.assigned == b.assigned


@pytest.mark.parametrize("name", [e.name for e in FULL_ENTRIES])
def test_derived_profiles_respect_lattice(name):
    out = full(name)
    for lo, hi, _ in INCLUSIONS:
        if lo in out and hi in out:
            assert subset(out[lo], out[hi]), (lo, hi)


# ---------------------------------------------------------------- verification


@pytest.mark.parametrize("name", ["forward-shift", "backward-shift", "bilateral-shifts", "cesaro", "quasinilpotent"])
def test_eta_theorem_on_catalog(name):
    out = full(name)
    rep = verify_eta_theorem(out)
    assert rep.passed
    assert rep.common_hull == verify_eta_theorem(out).hulls[K.D]


def test_eta_common_hulls():
    assert verify_eta_theorem(full("forward-shift")).common_hull == DISK
    cesaro = find_entry("cesaro")
    gamma = cesaro.expected[K.BW]
    assert verify_eta_theorem(full("cesaro")).common_hull == gamma


def test_eta_finite_profile():
    pts = region(Point(O), Point(ExactScalar(2)))
    out = apply_rules(profile(sigma=pts, TUD=EMPTY))
    rep = verify_eta_theorem(out)
    assert rep.passed and rep.common_hull == EMPTY


def test_eta_missing_kinds():
    with pytest.raises(MissingKinds):
        verify_eta_theorem(profile(TUD=CIRCLE))


def test_boundary_diagrams():
    assert len(BOUNDARY_ARROWS) == 42
    rep = verify_boundary_diagrams(full("backward-shift"))
    assert rep.passed and rep.counts()["fail"] == 0
    single = verify_boundary_diagrams(profile(TUD=CIRCLE))
    assert single.counts()["skipped"] == len(BOUNDARY_ARROWS)


def test_boundary_diagrams_detect_corruption():
    bad = full("forward-shift").replaced(K.TUD, region(ClosedDisk(O, Fraction(1, 2))))
    rep = verify_boundary_diagrams(bad)
    assert not rep.passed
    assert any("∂σ_LD ⊆ ∂σ_TUD" in a.name for a in rep.failing)


def test_moved_boundary():
    rep = verify_moved_boundary(full("cesaro"))
    assert rep.passed
    assert verify_moved_boundary(profile()).passed
    assert verify_moved_boundary(full("forward-shift")).passed


def test_meromorphic_examples():
    assert meromorphic_check(full("quasinilpotent"))
    assert not meromorphic_check(full("forward-shift"))
    assert meromorphic_check(apply_rules(profile(sigma=ORIGIN, TUD=EMPTY)))
    with pytest.raises(MissingKinds):
        meromorphic_check(profile(sigma=DISK))
    with pytest.raises(InconsistentProfile):
        meromorphic_check(SpectraProfile.from_given("T", {K.TUD: ORIGIN, K.D: CIRCLE}, strict=False))


def test_bw_simply_connected():
    rep = bw_simply_connected_check(profile(BW=DISK))
    assert rep.applicable and rep.profile[K.D] == DISK
    assert not bw_simply_connected_check(profile(BW=CIRCLE)).applicable
    pts = region(Point(O), Point(ExactScalar(1)))
    assert bw_simply_connected_check(profile(BW=pts)).profile[K.D] == pts


def test_omega_needs_poles():
    assert verify_omega(full("forward-shift")).to_json()["status"] == "skipped"
    pts = region(Point(O), Point(ExactScalar(1)))
    prof = SpectraProfile.from_given("M", {K.SIGMA: pts, K.TUD: EMPTY}, poles=pts)
    rep = verify_omega(apply_rules(prof))
    assert rep.to_json()["status"] == "pass"


def test_verify_all_shape():
    out = verify_all(full("forward-shift"))
    assert set(out) == {"eta", "boundary", "moved", "meromorphic", "omega"}
    assert out["eta"]["passed"] and out["meromorphic"] is False


def test_profile_json_round_trip():
    out = full("cesaro")
    back = SpectraProfile.from_json(out.to_json())
    assert back.assigned == out.assigned
    with pytest.raises(InvalidInput):
        SpectraProfile.from_json({"sigma": DISK.to_json()})
