"""Named spectra of one operator, with provenance and lattice-checked insertion."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ..errors import InconsistentProfile, InvalidInput, UnsupportedConfiguration
from ..region import SpectralRegion
from . import ops
from .kinds import INCLUSIONS, SpectrumKind, sorted_kinds, subsets, supersets

SCHEMA = "spectral-chain/1"


@dataclass(frozen=True)
class Provenance:
    source: str  # "given" or "derived"
    rule: str | None = None
    inputs: tuple[str, ...] = ()

    @classmethod
    def given(cls) -> "Provenance":
        return cls("given")

    @classmethod
    def derived(cls, rule: str, inputs: Iterable[str] = ()) -> "Provenance":
        return cls("derived", rule, tuple(inputs))

    def to_json(self) -> dict:
        if self.source == "given":
            return {"source": "given"}
        return {"source": "derived", "rule": self.rule, "inputs": list(self.inputs)}


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    kind: str | None = None
    rule: str | None = None
    regions: tuple[tuple[str, SpectralRegion], ...] = ()

    def to_json(self) -> dict:
        out: dict = {"code": self.code, "message": self.message}
        if self.kind is not None:
            out["kind"] = self.kind
        if self.rule is not None:
            out["rule"] = self.rule
        if self.regions:
            out["regions"] = {name: r.to_json() for name, r in self.regions}
        return out


def _citation(lo: SpectrumKind, hi: SpectrumKind) -> str:
    for a, b, cite in INCLUSIONS:
        if a == lo and b == hi:
            return cite
    return "transitive closure of the inclusion lattice"


@dataclass
class SpectraProfile:
    """Spectra of one operator keyed by kind.

    ``assign`` refuses (strict) or records (lenient) any value that breaks a
    lattice inclusion against an already assigned kind. ``poles`` is the
    optional finite set of resolvent poles.
    """

    operator_name: str
    assigned: dict[SpectrumKind, SpectralRegion] = field(default_factory=dict)
    provenance: dict[SpectrumKind, Provenance] = field(default_factory=dict)
    poles: SpectralRegion | None = None
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @classmethod
    def from_given(
        cls,
        operator_name: str,
        given: Mapping[SpectrumKind | str, SpectralRegion],
        poles: SpectralRegion | None = None,
        strict: bool = True,
    ) -> "SpectraProfile":
        prof = cls(operator_name, poles=poles)
        for kind, reg in given.items():
            prof.assign(SpectrumKind.parse(kind) if isinstance(kind, str) else kind, reg, Provenance.given(), strict)
        return prof

    def copy(self) -> "SpectraProfile":
        return SpectraProfile(
            self.operator_name, dict(self.assigned), dict(self.provenance), self.poles, list(self.diagnostics)
        )

    def __contains__(self, kind: SpectrumKind) -> bool:
        return kind in self.assigned

    def __getitem__(self, kind: SpectrumKind) -> SpectralRegion:
        return self.assigned[kind]

    def get(self, kind: SpectrumKind) -> SpectralRegion | None:
        return self.assigned.get(kind)

    def kinds(self) -> list[SpectrumKind]:
        return sorted_kinds(self.assigned)

    def violations(self, kind: SpectrumKind, value: SpectralRegion) -> list[Diagnostic]:
        """Lattice inclusions that ``kind = value`` would break (undecided ones included)."""
        out = []
        pairs = [(kind, value, h, self.assigned[h]) for h in supersets(kind) if h in self.assigned]
        pairs += [(lo, self.assigned[lo], kind, value) for lo in subsets(kind) if lo in self.assigned]
        for lo, lo_r, hi, hi_r in pairs:
            try:
                ok = ops.subset(lo_r, hi_r)
            except UnsupportedConfiguration as exc:
                out.append(
                    Diagnostic("INCLUSION_UNDECIDED", f"cannot decide {lo} ⊆ {hi}: {exc.message}", str(kind))
                )
                continue
            if not ok:
                out.append(
                    Diagnostic(
                        "INCLUSION_VIOLATED",
                        f"{lo} ⊆ {hi} fails ({_citation(lo, hi)})",
                        str(kind),
                        regions=((str(lo), lo_r), (str(hi), hi_r)),
                    )
                )
        return out

    def assign(
        self, kind: SpectrumKind, value: SpectralRegion, prov: Provenance, strict: bool = True
    ) -> None:
        bad = [d for d in self.violations(kind, value) if d.code == "INCLUSION_VIOLATED"]
        if bad and strict:
            raise InconsistentProfile(bad[0].message, kind=str(kind), violations=[d.to_json() for d in bad])
        self.diagnostics.extend(bad)
        self.assigned[kind] = value
        self.provenance[kind] = prov

    def replaced(self, kind: SpectrumKind, value: SpectralRegion) -> "SpectraProfile":
        """A copy with ``kind`` overwritten and no consistency check (for fault injection)."""
        out = self.copy()
        out.assigned[kind] = value
        out.provenance[kind] = Provenance.given()
        return out

    # ------------------------------------------------------------------ JSON

    @classmethod
    def from_json(cls, data: object, strict: bool = True) -> "SpectraProfile":
        if not isinstance(data, dict):
            raise InvalidInput("profile JSON must be an object")
        schema = data.get("schema", SCHEMA)
        if schema != SCHEMA:
            raise InvalidInput(f"unsupported schema {schema!r}")
        unknown = sorted(set(data) - {"schema", "operator", "spectra", "poles", "provenance", "diagnostics"})
        if unknown:
            raise InvalidInput(f"unknown profile keys {unknown}")
        if "spectra" not in data:
            raise InvalidInput("profile JSON needs a 'spectra' object")
        spectra = data["spectra"]
        if not isinstance(spectra, dict):
            raise InvalidInput("'spectra' must map kind names to regions")
        poles = data.get("poles")
        return cls.from_given(
            str(data.get("operator", "T")),
            {SpectrumKind.parse(k): SpectralRegion.from_json(v) for k, v in spectra.items()},
            poles=SpectralRegion.from_json(poles) if poles is not None else None,
            strict=strict,
        )

    def to_json(self, with_provenance: bool = True) -> dict:
        out: dict = {
            "schema": SCHEMA,
            "operator": self.operator_name,
            "spectra": {str(k): self.assigned[k].to_json() for k in self.kinds()},
        }
        if self.poles is not None:
            out["poles"] = self.poles.to_json()
        if with_provenance:
            out["provenance"] = {str(k): self.provenance[k].to_json() for k in self.kinds()}
        if self.diagnostics:
            out["diagnostics"] = [d.to_json() for d in self.diagnostics]
        return out
