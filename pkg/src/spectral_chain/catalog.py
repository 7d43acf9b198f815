"""Concrete operators with their known spectra, shipped as JSON fixtures.

Each profile entry stores base spectra (``given``) and the further values the
literature states (``expected``); validation derives from ``given`` and demands
exact equality with ``expected``. Membership entries store only point
memberships and are checked for consistency with the inclusion lattice.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable

from .engine import (
    ETA_KINDS,
    SpectraProfile,
    SpectrumKind,
    apply_rules,
    meromorphic_check,
    verify_boundary_diagrams,
    verify_eta_theorem,
    verify_moved_boundary,
)
from .engine.kinds import subsets, supersets
from .engine.profile import SCHEMA
from .errors import InvalidInput, MissingKinds, SpectralChainError
from .region import Circle, ClosedDisk, Point, SpectralRegion, region
from .scalar import ZERO, ExactScalar

K = SpectrumKind


@dataclass(frozen=True)
class Membership:
    kind: SpectrumKind
    point: ExactScalar
    member: bool

    def to_json(self) -> dict:
        return {"kind": str(self.kind), "point": self.point.to_json(), "member": self.member}

    @classmethod
    def from_json(cls, data: dict) -> "Membership":
        return cls(SpectrumKind.parse(data["kind"]), ExactScalar.from_json(data["point"]), bool(data["member"]))

    def __str__(self) -> str:
        return f"{self.point} {'∈' if self.member else '∉'} σ_{self.kind}"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    given: SpectraProfile | None
    expected: SpectraProfile | None
    citations: tuple[str, ...]
    meromorphic: bool | None = None
    memberships: tuple[Membership, ...] = ()
    expected_memberships: tuple[Membership, ...] = ()
    parameters: dict = field(default_factory=dict)

    @property
    def is_membership_entry(self) -> bool:
        return self.given is None

    def to_json(self) -> dict:
        out: dict = {
            "schema": SCHEMA,
            "name": self.name,
            "description": self.description,
            "citations": list(self.citations),
            "parameters": {k: str(v) for k, v in sorted(self.parameters.items())},
        }
        if self.given is not None:
            out["given"] = _spectra_json(self.given)
            out["expected"] = _spectra_json(self.expected)
        if self.meromorphic is not None:
            out["meromorphic"] = self.meromorphic
        if self.memberships:
            out["memberships"] = [m.to_json() for m in self.memberships]
            out["expected_memberships"] = [m.to_json() for m in self.expected_memberships]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "CatalogEntry":
        if data.get("schema") != SCHEMA:
            raise InvalidInput(f"catalog entry has unsupported schema {data.get('schema')!r}")
        name = data["name"]
        given = expected = None
        if "given" in data:
            given = _profile(name, data["given"])
            expected = _profile(name, data.get("expected", {}))
        return cls(
            name=name,
            description=data.get("description", ""),
            given=given,
            expected=expected,
            citations=tuple(data.get("citations", ())),
            meromorphic=data.get("meromorphic"),
            memberships=tuple(Membership.from_json(m) for m in data.get("memberships", ())),
            expected_memberships=tuple(Membership.from_json(m) for m in data.get("expected_memberships", ())),
            parameters={k: Fraction(v) for k, v in data.get("parameters", {}).items()},
        )


def _spectra_json(p: SpectraProfile) -> dict:
    return {str(k): p[k].to_json() for k in p.kinds()}


def _profile(name: str, spectra: dict) -> SpectraProfile:
    return SpectraProfile.from_given(name, {K.parse(k): SpectralRegion.from_json(v) for k, v in spectra.items()})


def _entry(name, description, given, expected, citations, **kw) -> CatalogEntry:
    return CatalogEntry(
        name,
        description,
        SpectraProfile.from_given(name, given),
        SpectraProfile.from_given(name, expected),
        tuple(citations),
        **kw,
    )


def _same(value: SpectralRegion, *kinds: SpectrumKind) -> dict:
    return {k: value for k in kinds}


# ---------------------------------------------------------------- constructors

_ORIGIN = ExactScalar(0)
_SHIFTS = "Example on unilateral shifts (c_0, c, ℓ_∞, ℓ_p over ℕ)"


def forward_shift_entry() -> CatalogEntry:
    disk, circle = region(ClosedDisk(_ORIGIN, Fraction(1))), region(Circle(_ORIGIN, Fraction(1)))
    given = {K.SIGMA: disk, K.AP: circle, K.SU: disk, K.PHI: circle, K.TUD: circle}
    expected = {
        **_same(circle, K.TUD, K.QPHI, K.LDE, K.BW_PLUS, K.LD, K.AP, K.BPHI, K.KT, K.PHI_MINUS, K.DSCE, K.RDE),
        **_same(disk, K.DSC, K.RD, K.W_MINUS, K.W, K.BW_MINUS, K.BW, K.D),
    }
    return _entry(
        "forward-shift",
        "forward unilateral shift U",
        given,
        expected,
        [_SHIFTS, "Corollary (skoro)", "Corollary (cor-Dra) (2), (3)", "Corollary (cor-W) (2), (3)"],
        meromorphic=False,
    )


def backward_shift_entry() -> CatalogEntry:
    disk, circle = region(ClosedDisk(_ORIGIN, Fraction(1))), region(Circle(_ORIGIN, Fraction(1)))
    given = {K.SIGMA: disk, K.AP: disk, K.SU: circle, K.PHI: circle, K.TUD: circle}
    expected = {
        **_same(
            circle, K.TUD, K.QPHI, K.RDE, K.BW_MINUS, K.RD, K.DSC, K.DSCE, K.SU,
            K.BPHI, K.KT, K.PHI_PLUS, K.LDE,
        ),
        **_same(disk, K.LD, K.W_PLUS, K.W, K.BW_PLUS, K.BW, K.D),
    }
    return _entry(
        "backward-shift",
        "backward unilateral shift V",
        given,
        expected,
        [_SHIFTS, "Corollary (skoro)", "Corollary (cor-W) (1), (3)"],
        meromorphic=False,
    )


def bilateral_shift_entry() -> CatalogEntry:
    circle = region(Circle(_ORIGIN, Fraction(1)))
    return _entry(
        "bilateral-shifts",
        "forward and backward bilateral shifts W1, W2 on c_0(ℤ) and ℓ_p(ℤ)",
        {K.SIGMA: circle},
        {K.D: circle, K.TUD: circle},
        ["Example on bilateral shifts", "Remark (poslednja)"],
        meromorphic=False,
    )


def cesaro_entry(p: Fraction | int = 2) -> CatalogEntry:
    """Cesàro operator on the Hardy space H_p; its spectrum is the disk centered p/2 with radius p/2."""
    p = Fraction(p)
    if p <= 1:
        raise InvalidInput("the Cesàro example needs p > 1")
    centre = ExactScalar(p / 2)
    disk, circle = region(ClosedDisk(centre, p / 2)), region(Circle(centre, p / 2))
    given = {K.SIGMA: disk, K.AP: circle, K.KT: circle, K.PHI: circle}
    expected = {
        **_same(circle, K.TUD, K.QPHI, K.LDE, K.BW_PLUS, K.LD, K.BPHI, K.DSCE, K.RDE),
        **_same(disk, K.SU, K.W_MINUS, K.W, K.BW_MINUS, K.BW, K.D, K.RD, K.DSC),
    }
    name = "cesaro" if p == 2 else f"cesaro-p={p}"
    return _entry(
        name,
        f"Cesàro operator C_p on H_p, p = {p}",
        given,
        expected,
        ["Example on the Cesàro operator", "Corollary (skoro)", "Corollary (cor-W) (2), (3)"],
        meromorphic=False,
        parameters={"p": p},
    )


def isometry_entry(r: Fraction | int = 1) -> CatalogEntry:
    r = Fraction(r)
    if r <= 0:
        raise InvalidInput("spectral radius of a non-invertible isometry must be positive")
    disk, circle = region(ClosedDisk(_ORIGIN, r)), region(Circle(_ORIGIN, r))
    name = "isometry" if r == 1 else f"isometry-r={r}"
    return _entry(
        name,
        f"non-invertible isometry with spectral radius {r}",
        {K.SIGMA: disk, K.AP: circle},
        _same(circle, K.TUD, K.QPHI, K.LDE, K.BW_PLUS, K.LD, K.AP),
        ["Example on non-invertible isometries", "Corollary (isom)"],
        meromorphic=False,
        parameters={"r": r},
    )


def quasinilpotent_entry() -> CatalogEntry:
    origin = region(Point(ZERO))
    return _entry(
        "quasinilpotent",
        "compact quasinilpotent weighted shift Q on ℓ_2",
        {K.SIGMA: origin, K.QPHI: origin},
        {K.TUD: origin, K.QPHI: origin},
        ["Example on the quasinilpotent weighted shift", "Theorem (eta) (2)", "meromorphic characterization"],
        meromorphic=True,
    )


def primer_entry() -> CatalogEntry:
    def m(kind, member):
        return Membership(kind, ZERO, member)

    given = (
        m(K.TUD, False), m(K.DSC, False), m(K.DSCE, False),
        m(K.RD, True), m(K.RDE, True), m(K.QPHI, True),
    )
    # consequences through the inclusion lattice
    expected = (
        m(K.KT, True), m(K.BPHI, True), m(K.BW_MINUS, True), m(K.D, True),
        m(K.SU, True), m(K.PHI_MINUS, True), m(K.LDE, True), m(K.SIGMA, True),
    )
    return CatalogEntry(
        "primer",
        "operator on a Hilbert space with basis e_ij and R(T) = R(T^2) not closed: "
        "finite descent and TUD, yet neither right Drazin nor right essentially Drazin invertible",
        None,
        None,
        ("Example (primer)",),
        memberships=given,
        expected_memberships=expected,
    )


BUILTIN = (
    forward_shift_entry,
    backward_shift_entry,
    bilateral_shift_entry,
    cesaro_entry,
    isometry_entry,
    quasinilpotent_entry,
    primer_entry,
)


def builtin_entries() -> list[CatalogEntry]:
    """The entries built in code (the JSON fixtures are generated from these)."""
    return [make() for make in BUILTIN]


def fixture_name(index: int, entry: CatalogEntry) -> str:
    return f"{index + 1:02d}-{entry.name}.json"


def write_fixtures(directory: Path) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for i, entry in enumerate(builtin_entries()):
        path = directory / fixture_name(i, entry)
        path.write_text(json.dumps(entry.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + "\n")
        paths.append(path)
    return paths


def catalog_entries() -> list[CatalogEntry]:
    """Entries loaded from the shipped JSON fixtures, in file-name order."""
    root = resources.files("spectral_chain") / "catalog_data"
    files = sorted((f for f in root.iterdir() if f.name.endswith(".json")), key=lambda f: f.name)
    return [CatalogEntry.from_json(json.loads(f.read_text(encoding="utf-8"))) for f in files]


def find_entry(name: str, entries: Iterable[CatalogEntry] | None = None) -> CatalogEntry:
    for e in entries if entries is not None else catalog_entries():
        if e.name == name:
            return e
    raise InvalidInput(f"no catalog entry named {name!r}")


# ---------------------------------------------------------------- validation


@dataclass(frozen=True)
class Mismatch:
    entry: str
    kind: str
    rule: str | None
    expected: SpectralRegion | None
    derived: SpectralRegion | None
    message: str

    def to_json(self) -> dict:
        return {
            "entry": self.entry,
            "kind": self.kind,
            "rule": self.rule,
            "expected": self.expected.to_json() if self.expected is not None else None,
            "derived": self.derived.to_json() if self.derived is not None else None,
            "message": self.message,
        }


@dataclass(frozen=True)
class EntryResult:
    name: str
    passed: bool
    mismatches: tuple[Mismatch, ...]
    checks: dict
    derived_count: int = 0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "derived_count": self.derived_count,
            "mismatches": [m.to_json() for m in self.mismatches],
            "checks": self.checks,
        }


@dataclass(frozen=True)
class CatalogReport:
    entries: tuple[EntryResult, ...]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def mismatches(self) -> list[Mismatch]:
        return [m for e in self.entries for m in e.mismatches]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "passed": self.passed,
            "entry_count": len(self.entries),
            "entries": [e.to_json() for e in self.entries],
        }


def _membership_closure(facts: Iterable[Membership]) -> tuple[dict, list[str]]:
    """Propagate memberships through the lattice; report contradictions."""
    known: dict[tuple[SpectrumKind, ExactScalar], bool] = {}
    conflicts: list[str] = []
    for f in facts:
        spread = supersets(f.kind) if f.member else subsets(f.kind)
        for k in (f.kind, *spread):
            key = (k, f.point)
            if known.get(key, f.member) != f.member:
                conflicts.append(f"{f} contradicts another assertion about σ_{k}")
            known[key] = f.member
    return known, conflicts


def _validate_memberships(entry: CatalogEntry) -> EntryResult:
    known, conflicts = _membership_closure(entry.memberships)
    mismatches = [Mismatch(entry.name, "", None, None, None, c) for c in conflicts]
    for m in entry.expected_memberships:
        got = known.get((m.kind, m.point))
        if got != m.member:
            mismatches.append(
                Mismatch(entry.name, str(m.kind), "lattice", None, None, f"{m} does not follow from the given memberships")
            )
    return EntryResult(entry.name, not mismatches, tuple(mismatches), {"memberships": len(known)})


FATAL_DIAGNOSTICS = frozenset({"RULE_CONFLICT", "INCLUSION_VIOLATED", "DUALITY_MISMATCH", "CHECK_FAILED"})


def _validate_profile(entry: CatalogEntry) -> EntryResult:
    derived = apply_rules(entry.given, strict=False)
    mismatches = []
    for kind in entry.expected.kinds():
        want = entry.expected[kind]
        got = derived.get(kind)
        prov = derived.provenance.get(kind)
        rule = None if prov is None else (prov.rule or "given")
        if got is None:
            mismatches.append(Mismatch(entry.name, str(kind), None, want, None, f"σ_{kind} was not derived"))
        elif got != want:
            mismatches.append(Mismatch(entry.name, str(kind), rule, want, got, f"σ_{kind} differs from the expected value"))
    checks: dict = {}
    ok = not mismatches
    if all(k in derived for k in ETA_KINDS):
        try:
            eta = verify_eta_theorem(derived)
            checks["eta"] = eta.passed
            ok &= eta.passed
        except SpectralChainError as exc:
            checks["eta"] = f"error: {exc.message}"
            ok = False
    else:
        checks["eta"] = "skipped: not every hull kind is derivable"
    for label, fn in (("boundary", verify_boundary_diagrams), ("moved", verify_moved_boundary)):
        rep = fn(derived)
        checks[label] = rep.passed
        ok &= rep.passed
        for item in rep.failing:
            name = getattr(item, "name", getattr(item, "id", "?"))
            mismatches.append(Mismatch(entry.name, "", label, None, None, f"{name}: {item.status}"))
    if entry.meromorphic is not None:
        try:
            mero = meromorphic_check(derived)
        except MissingKinds:
            mero = None
        except SpectralChainError as exc:
            mero = f"error: {exc.message}"
        checks["meromorphic"] = mero
        if mero != entry.meromorphic:
            ok = False
            mismatches.append(
                Mismatch(entry.name, "", "meromorphic", None, None, f"meromorphic is {mero}, expected {entry.meromorphic}")
            )
    diags = [d for d in derived.diagnostics if d.code not in ("GUARD_UNDECIDED", "DUALITY_UNDECIDED")]
    if diags:
        checks["diagnostics"] = [d.to_json() for d in diags]
    for d in diags:
        if d.code in FATAL_DIAGNOSTICS:
            ok = False
            mismatches.append(Mismatch(entry.name, str(d.kind or ""), d.rule, None, None, f"{d.code}: {d.message}"))
    return EntryResult(entry.name, ok and not mismatches, tuple(mismatches), checks, len(derived.assigned))


def validate_entry(entry: CatalogEntry) -> EntryResult:
    return _validate_memberships(entry) if entry.is_membership_entry else _validate_profile(entry)


def run_catalog_validation(entries: Iterable[CatalogEntry] | None = None) -> CatalogReport:
    """Derive every entry from its base spectra and compare with the stated values."""
    todo = catalog_entries() if entries is None else list(entries)
    return CatalogReport(tuple(validate_entry(e) for e in todo))


def corrupted(entry: CatalogEntry, kind: SpectrumKind, value: SpectralRegion) -> CatalogEntry:
    """``entry`` with one given spectrum replaced, bypassing consistency checks."""
    if entry.given is None:
        raise InvalidInput("membership entries have no spectra to corrupt")
    return CatalogEntry(
        entry.name,
        entry.description,
        entry.given.replaced(kind, value),
        entry.expected,
        entry.citations,
        entry.meromorphic,
        parameters=entry.parameters,
    )
