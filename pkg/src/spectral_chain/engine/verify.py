"""Verification of the hull, boundary and moved-boundary relations on a profile."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import (
    InconsistentProfile,
    MissingKinds,
    PreconditionViolated,
    RuleConflict,
    UnsupportedConfiguration,
)
from ..region import Point, SpectralRegion, check_pocetna, region
from ..region.hull import hole_inside, hole_misses
from ..region.primitives import _pt, probe_points
from ..scalar import ZERO
from . import ops
from .expr import Acc, Bd, Expr, Meet, Ref
from .kinds import ETA_KINDS, SpectrumKind, sorted_kinds
from .profile import Provenance, SpectraProfile

K = SpectrumKind

PASS, FAIL, SKIPPED, UNDECIDED = "pass", "fail", "skipped", "undecided"


def _require(profile: SpectraProfile, kinds) -> None:
    missing = [str(k) for k in kinds if k not in profile]
    if missing:
        raise MissingKinds(f"profile lacks {', '.join(missing)}", missing=missing)


# ---------------------------------------------------------------- hulls


@dataclass(frozen=True)
class EtaReport:
    hulls: dict[str, SpectralRegion]
    common_hull: SpectralRegion | None
    hulls_equal: bool
    pocetna: dict[str, bool]
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return self.hulls_equal and all(self.pocetna.values())

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "hulls_equal": self.hulls_equal,
            "common_hull": self.common_hull.to_json() if self.common_hull is not None else None,
            "hulls": {k: v.to_json() for k, v in self.hulls.items()},
            "pocetna": dict(self.pocetna),
            "failures": list(self.failures),
        }


def verify_eta_theorem(profile: SpectraProfile) -> EtaReport:
    """All fourteen hulls agree, and σ_D is each of them with some holes filled."""
    _require(profile, ETA_KINDS)
    hulls = {str(k): ops.hull(profile[k]) for k in ETA_KINDS}
    distinct = set(hulls.values())
    equal = len(distinct) == 1
    failures = []
    if not equal:
        ref = hulls[str(K.TUD)]
        failures += [f"ησ_{k} differs from ησ_TUD" for k, h in hulls.items() if h != ref]
    pocetna: dict[str, bool] = {}
    d = profile[K.D]
    for k in ETA_KINDS:
        if k == K.D:
            continue
        try:
            ok = check_pocetna(profile[k], d).passed
            if not ok:
                failures.append(f"σ_D is not σ_{k} with some holes filled")
        except PreconditionViolated as exc:
            ok = False
            failures.append(f"σ_{k}: {exc.message}")
        pocetna[str(k)] = ok
    return EtaReport(hulls, distinct.pop() if equal else None, equal, pocetna, tuple(failures))


# ---------------------------------------------------------------- arrows


@dataclass(frozen=True)
class ArrowResult:
    group: str
    source: str
    target: str
    status: str
    source_boundary: SpectralRegion | None = None
    target_boundary: SpectralRegion | None = None
    note: str = ""

    @property
    def name(self) -> str:
        return f"{self.group}: ∂σ_{self.source} ⊆ ∂σ_{self.target}"

    def to_json(self) -> dict:
        out: dict = {"arrow": self.name, "group": self.group, "status": self.status}
        if self.source_boundary is not None:
            out["source_boundary"] = self.source_boundary.to_json()
        if self.target_boundary is not None:
            out["target_boundary"] = self.target_boundary.to_json()
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class CheckListReport:
    items: tuple

    @property
    def passed(self) -> bool:
        return all(i.status in (PASS, SKIPPED) for i in self.items)

    @property
    def failing(self) -> list:
        return [i for i in self.items if i.status not in (PASS, SKIPPED)]

    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, SKIPPED: 0, UNDECIDED: 0}
        for i in self.items:
            out[i.status] += 1
        return out

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "counts": self.counts(),
            "items": [i.to_json() for i in self.items],
        }


_D1 = "Theorem (eta) (1), first diagram"
_D2 = "Theorem (eta) (1), second diagram"
_D3 = "Theorem (eta) (1), third diagram"
_R1 = "Corollary (pocetna-rub) (1)"
_R2 = "Corollary (pocetna-rub) (2)"

BOUNDARY_ARROWS: tuple[tuple[str, SpectrumKind, SpectrumKind], ...] = (
    *((_D1, a, b) for a, b in (
        (K.D, K.LD), (K.D, K.BW), (K.D, K.DSC), (K.LD, K.BW_PLUS), (K.BW, K.BW_PLUS),
        (K.BW_PLUS, K.LDE), (K.BW, K.BPHI), (K.BPHI, K.LDE), (K.BPHI, K.TUD), (K.BPHI, K.DSCE),
        (K.LDE, K.TUD), (K.DSC, K.DSCE), (K.DSCE, K.TUD),
    )),
    *((_D2, a, b) for a, b in (
        (K.D, K.LD), (K.D, K.BW), (K.D, K.RD), (K.LD, K.BW_PLUS), (K.BW, K.BW_PLUS),
        (K.BW_PLUS, K.LDE), (K.BW, K.BPHI), (K.BPHI, K.LDE), (K.BPHI, K.QPHI), (K.LDE, K.QPHI),
        (K.RD, K.BW_MINUS), (K.BW, K.BW_MINUS), (K.BW_MINUS, K.RDE), (K.BPHI, K.RDE), (K.RDE, K.QPHI),
    )),
    *((_D3, a, b) for a, b in ((K.D, K.BW), (K.BW, K.BPHI), (K.BPHI, K.KT))),
    *((_R1, a, K.TUD) for a in (K.BW_PLUS, K.BW, K.LDE, K.DSCE, K.BPHI, K.LD, K.DSC, K.D)),
    *((_R2, a, K.QPHI) for a in (K.BW_MINUS, K.RD, K.RDE)),
)


def verify_boundary_diagrams(profile: SpectraProfile) -> CheckListReport:
    items = []
    for group, src, tgt in BOUNDARY_ARROWS:
        missing = [str(k) for k in (src, tgt) if k not in profile]
        if missing:
            items.append(ArrowResult(group, str(src), str(tgt), SKIPPED, note=f"missing {', '.join(missing)}"))
            continue
        try:
            bs, bt = ops.boundary(profile[src]), ops.boundary(profile[tgt])
            ok = ops.subset(bs, bt)
        except UnsupportedConfiguration as exc:
            items.append(ArrowResult(group, str(src), str(tgt), UNDECIDED, note=exc.message))
            continue
        items.append(ArrowResult(group, str(src), str(tgt), PASS if ok else FAIL, bs, bt))
    return CheckListReport(tuple(items))


# ---------------------------------------------------------------- moved boundaries


@dataclass(frozen=True)
class ChainResult:
    id: str
    citation: str
    statement: str
    status: str
    values: tuple[SpectralRegion, ...] = ()
    failed_link: int | None = None
    note: str = ""

    def to_json(self) -> dict:
        out: dict = {"id": self.id, "citation": self.citation, "statement": self.statement, "status": self.status}
        if self.values:
            out["values"] = [v.to_json() for v in self.values]
        if self.failed_link is not None:
            out["failed_link"] = self.failed_link
        if self.note:
            out["note"] = self.note
        return out


def _r(k: SpectrumKind) -> Expr:
    return Ref(k)


def _bd_acc(k):
    return Meet(Bd(_r(k)), Acc(_r(k)))


def _bd_meet(k, other):
    return Meet(Bd(_r(k)), other)


_TUD_BD = Bd(_r(K.TUD))
_SUB, _EQ = "⊆", "="

# (id, citation, terms, relations between consecutive terms)
MOVED_CHAINS: tuple[tuple[str, str, tuple[Expr, ...], tuple[str, ...]], ...] = (
    ("cor-W-moved-1", "Corollary (cor-W-moved) (1)",
     (_bd_acc(K.W_PLUS), _bd_meet(K.W_PLUS, _r(K.BW_PLUS)), _TUD_BD), (_SUB, _SUB)),
    ("cor-W-moved-2", "Corollary (cor-W-moved) (2)", (_bd_acc(K.W_MINUS), _TUD_BD), (_SUB,)),
    ("cor-W-moved-3", "Corollary (cor-W-moved) (3)",
     (_bd_acc(K.BW_MINUS), _bd_meet(K.BW_MINUS, Acc(_r(K.W_MINUS))), _TUD_BD), (_SUB, _SUB)),
    ("cor-W-moved-4", "Corollary (cor-W-moved) (4)",
     (_bd_acc(K.W), _bd_meet(K.W, _r(K.BW)), _TUD_BD), (_SUB, _SUB)),
    ("cor-LDe-moved-1", "Corollary (cor-LDe-moved) (1)",
     (_bd_acc(K.PHI_PLUS), _bd_meet(K.PHI_PLUS, _r(K.LDE)), _TUD_BD), (_SUB, _SUB)),
    ("cor-LDe-moved-2", "Corollary (cor-LDe-moved) (2)",
     (_bd_acc(K.PHI_MINUS), _bd_meet(K.PHI_MINUS, _r(K.DSCE)), _TUD_BD), (_SUB, _SUB)),
    ("cor-LDe-moved-3", "Corollary (cor-LDe-moved) (3)",
     (_bd_acc(K.RDE), _bd_meet(K.RDE, Acc(_r(K.PHI_MINUS))), _bd_meet(K.RDE, _r(K.DSCE)),
      _bd_meet(K.RDE, _r(K.TUD)), _TUD_BD), (_SUB, _SUB, _EQ, _SUB)),
    ("cor-LDe-moved-4", "Corollary (cor-LDe-moved) (4)",
     (_bd_meet(K.PHI_MINUS, _r(K.RDE)), _bd_meet(K.PHI_MINUS, _r(K.QPHI)), Bd(_r(K.QPHI))), (_EQ, _SUB)),
    ("cor-LDe-moved-5", "Corollary (cor-LDe-moved) (5)",
     (_bd_acc(K.PHI), _bd_meet(K.PHI, _r(K.BPHI)), _TUD_BD), (_SUB, _SUB)),
    ("cor-a-moved-1", "Corollary (cor-a-moved) (1)",
     (_bd_acc(K.AP), _bd_meet(K.AP, _r(K.LD)), _TUD_BD), (_SUB, _SUB)),
    ("cor-a-moved-2", "Corollary (cor-a-moved) (2)",
     (_bd_acc(K.B_PLUS), _bd_meet(K.B_PLUS, _r(K.LD)), _TUD_BD), (_SUB, _SUB)),
    ("cor-a-moved-3", "Corollary (cor-a-moved) (3)",
     (_bd_acc(K.P), _bd_meet(K.P, _r(K.LD)), _r(K.TUD)), (_SUB, _SUB)),
    ("cor-a-moved-4", "Corollary (cor-a-moved) (4)",
     (_bd_acc(K.SU), _bd_meet(K.SU, _r(K.DSC)), _TUD_BD), (_SUB, _SUB)),
    ("cor-a-moved-5", "Corollary (cor-a-moved) (5)",
     (_bd_acc(K.CP), _bd_meet(K.CP, _r(K.DSC)), _r(K.TUD)), (_SUB, _SUB)),
    ("cor-a-moved-6", "Corollary (cor-a-moved) (6)",
     (_bd_acc(K.B_MINUS), _bd_meet(K.B_MINUS, _r(K.DSC)), _TUD_BD), (_SUB, _SUB)),
    ("cor-a-moved-7", "Corollary (cor-a-moved) (7)",
     (_bd_acc(K.RD), _bd_meet(K.RD, _r(K.DSC)), _bd_meet(K.RD, _r(K.TUD)), _TUD_BD), (_SUB, _EQ, _SUB)),
    ("cor-a-moved-8", "Corollary (cor-a-moved) (8)",
     (_bd_meet(K.SU, _r(K.RD)), Bd(_r(K.QPHI))), (_SUB,)),
    ("cor-a-moved-9", "Corollary (cor-a-moved) (9)",
     (_bd_meet(K.CP, _r(K.RD)), _bd_meet(K.CP, _r(K.QPHI)), _r(K.QPHI)), (_EQ, _SUB)),
    ("cor-a-moved-10", "Corollary (cor-a-moved) (10)",
     (_bd_acc(K.SIGMA), _bd_meet(K.SIGMA, _r(K.D)), _TUD_BD), (_SUB, _SUB)),
    ("cor-a-moved-11", "Corollary (cor-a-moved) (11)",
     (_bd_acc(K.B), _bd_meet(K.B, _r(K.D)), _TUD_BD), (_SUB, _SUB)),
)


def _statement(terms, rels) -> str:
    parts = [str(terms[0])]
    for rel, t in zip(rels, terms[1:]):
        parts += [rel, str(t)]
    return " ".join(parts)


def verify_moved_boundary(profile: SpectraProfile) -> CheckListReport:
    items = []
    env = profile.assigned
    for cid, cite, terms, rels in MOVED_CHAINS:
        stmt = _statement(terms, rels)
        refs = frozenset().union(*(t.refs() for t in terms))
        missing = [str(k) for k in sorted_kinds(refs - env.keys())]
        if missing:
            items.append(ChainResult(cid, cite, stmt, SKIPPED, note=f"missing {', '.join(missing)}"))
            continue
        try:
            values = tuple(t.closed(env) for t in terms)
            bad = None
            for i, (rel, a, b) in enumerate(zip(rels, values, values[1:])):
                ok = a == b if rel == _EQ else ops.subset(a, b)
                if not ok:
                    bad = i
                    break
        except UnsupportedConfiguration as exc:
            items.append(ChainResult(cid, cite, stmt, UNDECIDED, note=exc.message))
            continue
        items.append(ChainResult(cid, cite, stmt, PASS if bad is None else FAIL, values, bad))
    return CheckListReport(tuple(items))


# ---------------------------------------------------------------- single-purpose checks

MEROMORPHIC_KINDS = (K.TUD, K.BPHI, K.D)


def meromorphic_check(profile: SpectraProfile) -> bool:
    """Whether each assigned one of σ_TUD, σ_BΦ, σ_D lies in {0}; they must agree."""
    present = [k for k in MEROMORPHIC_KINDS if k in profile]
    if not present:
        raise MissingKinds("none of TUD, BPhi, D is assigned", missing=[str(k) for k in MEROMORPHIC_KINDS])
    origin = region(Point(ZERO))
    verdicts = {str(k): ops.subset(profile[k], origin) for k in present}
    if len(set(verdicts.values())) > 1:
        raise InconsistentProfile("meromorphy criteria disagree", verdicts=verdicts)
    return next(iter(verdicts.values()))


@dataclass(frozen=True)
class SimplyConnectedReport:
    applicable: bool
    reason: str
    profile: SpectraProfile

    def to_json(self) -> dict:
        out = {"applicable": self.applicable, "reason": self.reason}
        if self.applicable:
            out["D"] = self.profile[K.D].to_json()
        return out


def bw_simply_connected_check(profile: SpectraProfile) -> SimplyConnectedReport:
    """If σ_BW has no holes then σ_D = σ_BW."""
    _require(profile, (K.BW,))
    bw = profile[K.BW]
    if not ops.has_no_holes(bw):
        return SimplyConnectedReport(False, "σ_BW has a hole", profile)
    current = profile.get(K.D)
    if current is not None and current != bw:
        raise RuleConflict("σ_BW has no holes but the assigned σ_D differs", existing=current, derived=bw)
    out = profile.copy()
    if current is None:
        out.assign(K.D, bw, Provenance.derived("bw-simply-connected", ("BW",)))
    return SimplyConnectedReport(True, "σ_BW has no holes, so σ_D = ησ_BW = σ_BW (Theorem (eta))", out)


@dataclass(frozen=True)
class OmegaReport:
    status: str
    components: tuple[dict, ...] = ()
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status in (PASS, SKIPPED)

    def to_json(self) -> dict:
        return {"status": self.status, "components": list(self.components), "note": self.note}


def verify_omega(profile: SpectraProfile) -> OmegaReport:
    """Each component of the TUD resolvent lies in σ_D or, off the poles, in the resolvent.

    Needs σ_TUD, σ_D, σ and the pole set; skipped when any is absent.
    """
    needed = (K.TUD, K.D, K.SIGMA)
    if profile.poles is None or any(k not in profile for k in needed):
        return OmegaReport(SKIPPED, note="needs σ_TUD, σ_D, σ and the pole set")
    tud, d, sigma, poles = profile[K.TUD], profile[K.D], profile[K.SIGMA], profile.poles
    pole_set = set(poles.points())

    def off_poles(prims) -> bool:
        return all(isinstance(p, Point) and p.center in pole_set for p in prims)

    comps = []
    status = PASS
    try:
        report = ops.connected_hull(tud)
        for i, hole in enumerate(report.holes):
            if hole_inside(hole, d):
                comps.append({"component": i, "verdict": "inside σ_D"})
                continue
            if not hole_misses(hole, d, tud):
                comps.append({"component": i, "verdict": "meets σ_D without lying in it"})
                status = FAIL
                continue
            stray = [p for p in sigma.primitives if any(hole.contains(z) for z in _probe(p))]
            ok = off_poles(stray)
            comps.append({"component": i, "verdict": "resolvent off the poles" if ok else "spectrum off the poles"})
            status = status if ok else FAIL
        outside = [p for p in sigma.primitives if not ops.subset(region(p), report.hull)]
        ok = off_poles(outside)
        comps.append({"component": "unbounded", "verdict": "resolvent off the poles" if ok else "spectrum off the poles"})
        status = status if ok else FAIL
    except UnsupportedConfiguration as exc:
        return OmegaReport(UNDECIDED, tuple(comps), exc.message)
    return OmegaReport(status, tuple(comps))


def _probe(p):
    return list(probe_points(p)) + ([_pt(p.center)] if hasattr(p, "center") else [])


# ---------------------------------------------------------------- bundle


def verify_all(profile: SpectraProfile, which: str = "all") -> dict:
    out: dict = {}
    if which in ("eta", "all"):
        try:
            out["eta"] = verify_eta_theorem(profile).to_json()
        except MissingKinds as exc:
            out["eta"] = {"passed": None, "skipped": exc.message}
    if which in ("boundary", "all"):
        out["boundary"] = verify_boundary_diagrams(profile).to_json()
    if which in ("moved", "all"):
        out["moved"] = verify_moved_boundary(profile).to_json()
    if which == "all":
        try:
            out["meromorphic"] = meromorphic_check(profile)
        except MissingKinds:
            out["meromorphic"] = None
        out["omega"] = verify_omega(profile).to_json()
    return out


__all__ = [
    "ArrowResult",
    "BOUNDARY_ARROWS",
    "ChainResult",
    "CheckListReport",
    "EtaReport",
    "MOVED_CHAINS",
    "OmegaReport",
    "SimplyConnectedReport",
    "bw_simply_connected_check",
    "meromorphic_check",
    "verify_all",
    "verify_boundary_diagrams",
    "verify_eta_theorem",
    "verify_moved_boundary",
    "verify_omega",
]
