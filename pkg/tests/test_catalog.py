import json
from fractions import Fraction
from importlib import resources

import pytest

from spectral_chain.catalog import (
    CatalogEntry,
    builtin_entries,
    catalog_entries,
    cesaro_entry,
    corrupted,
    find_entry,
    fixture_name,
    isometry_entry,
    run_catalog_validation,
    validate_entry,
)
from spectral_chain.engine import SpectrumKind as K
from spectral_chain.engine import apply_rules
from spectral_chain.errors import InvalidInput
from spectral_chain.region import Circle, ClosedDisk, Point, region
from spectral_chain.scalar import ExactScalar

O = ExactScalar(0)
C = region(Circle(O, 1))
D = region(ClosedDisk(O, 1))

# stated values, written out independently of the catalog module
STATED = {
    "forward-shift": {
        **dict.fromkeys([K.TUD, K.QPHI, K.LDE, K.BW_PLUS, K.LD, K.AP, K.BPHI, K.KT, K.DSCE, K.RDE], C),
        **dict.fromkeys([K.DSC, K.RD, K.BW_MINUS, K.BW], D),
    },
    "backward-shift": {
        **dict.fromkeys([K.RD, K.DSC, K.DSCE, K.RDE, K.BW_MINUS, K.LDE, K.TUD], C),
        **dict.fromkeys([K.LD, K.BW_PLUS, K.BW], D),
    },
    "bilateral-shifts": dict.fromkeys([K.D, K.TUD], C),
    "quasinilpotent": {K.TUD: region(Point(O))},
}


def test_all_entries_validate():
    report = run_catalog_validation()
    assert report.passed, [m.to_json() for m in report.mismatches]
    assert {e.name for e in report.entries} == {e.name for e in builtin_entries()}


@pytest.mark.parametrize("name", sorted(STATED))
def test_stated_values_are_derived(name):
    derived = apply_rules(find_entry(name).given)
    for kind, value in STATED[name].items():
        assert derived[kind] == value, kind


def test_cesaro_region_is_disk_on_half_parameter():
    entry = cesaro_entry()
    gamma = region(ClosedDisk(ExactScalar(1), 1))
    derived = apply_rules(entry.given)
    for kind in (K.BW_MINUS, K.BW, K.RD, K.DSC):
        assert derived[kind] == gamma
    for kind in (K.TUD, K.QPHI, K.LDE, K.BW_PLUS, K.LD, K.BPHI, K.DSCE, K.RDE):
        assert derived[kind] == region(Circle(ExactScalar(1), 1))


def test_cesaro_other_parameter_validates():
    entry = cesaro_entry(3)
    assert validate_entry(entry).passed
    assert entry.expected[K.BW] == region(ClosedDisk(ExactScalar(Fraction(3, 2)), Fraction(3, 2)))


def test_isometry_radius_parameter():
    entry = isometry_entry(Fraction(1, 2))
    assert validate_entry(entry).passed
    derived = apply_rules(entry.given)
    assert derived[K.LD] == derived[K.TUD] == region(Circle(O, Fraction(1, 2)))


def test_quasinilpotent_is_meromorphic():
    entry = find_entry("quasinilpotent")
    assert entry.meromorphic is True
    assert validate_entry(entry).checks["meromorphic"] is True


def test_primer_is_membership_only():
    entry = find_entry("primer")
    assert entry.is_membership_entry and entry.given is None
    result = validate_entry(entry)
    assert result.passed
    facts = {(m.kind, m.member) for m in entry.memberships}
    assert (K.TUD, False) in facts and (K.RD, True) in facts and (K.RDE, True) in facts and (K.QPHI, True) in facts


def test_corrupted_tud_reports_ld_mismatch():
    entry = corrupted(find_entry("forward-shift"), K.TUD, D)
    result = validate_entry(entry)
    assert not result.passed
    ld = [m for m in result.mismatches if m.kind == "LD" and m.derived is not None]
    assert ld and ld[0].rule == "cor-Dra-1" and ld[0].expected == C and ld[0].derived == D


def test_empty_catalog_passes():
    report = run_catalog_validation([])
    assert report.passed and report.to_json()["entry_count"] == 0


def test_fixtures_match_builtin_entries():
    files = sorted(p.name for p in resources.files("spectral_chain.catalog_data").iterdir() if p.name.endswith(".json"))
    entries = builtin_entries()
    assert files == [fixture_name(i, e) for i, e in enumerate(entries)]
    for name, entry in zip(files, entries):
        text = resources.files("spectral_chain.catalog_data").joinpath(name).read_text(encoding="utf-8")
        assert json.loads(text) == entry.to_json(), name


def test_entry_json_round_trip():
    for entry in catalog_entries():
        back = CatalogEntry.from_json(entry.to_json())
        assert back.to_json() == entry.to_json()


def test_unknown_entry():
    with pytest.raises(InvalidInput):
        find_entry("no-such-operator")
    with pytest.raises(InvalidInput):
        corrupted(find_entry("primer"), K.TUD, D)
