"""Spectrum kinds and the standing inclusion lattice between them."""

from __future__ import annotations

from enum import Enum
from functools import lru_cache


class SpectrumKind(str, Enum):
    SIGMA = "sigma"
    AP = "ap"
    SU = "su"
    P = "p"
    CP = "cp"
    PHI_PLUS = "Phi+"
    PHI_MINUS = "Phi-"
    PHI = "Phi"
    W_PLUS = "W+"
    W_MINUS = "W-"
    W = "W"
    B_PLUS = "B+"
    B_MINUS = "B-"
    B = "B"
    LD = "LD"
    RD = "RD"
    D = "D"
    LDE = "LDe"
    RDE = "RDe"
    DSC = "dsc"
    DSCE = "dsce"
    BPHI_PLUS = "BPhi+"
    BPHI_MINUS = "BPhi-"
    BPHI = "BPhi"
    BW_PLUS = "BW+"
    BW_MINUS = "BW-"
    BW = "BW"
    TUD = "TUD"
    QPHI = "qPhi"
    KT = "Kt"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, name: str) -> "SpectrumKind":
        try:
            return cls(name)
        except ValueError:
            from ..errors import InvalidInput

            raise InvalidInput(f"unknown spectrum kind {name!r}") from None


K = SpectrumKind

ORDER = {k: i for i, k in enumerate(SpectrumKind)}

# The fourteen kinds whose connected hulls all coincide.
ETA_KINDS: tuple[SpectrumKind, ...] = (
    K.TUD, K.QPHI, K.KT, K.BPHI, K.BW, K.D, K.LDE, K.BW_PLUS,
    K.LD, K.RDE, K.BW_MINUS, K.RD, K.DSCE, K.DSC,
)

DIAGRAM = "inclusion diagram preceding Theorem eta"
CLASSICAL = "standard inclusions between operator classes"
IDENTIFICATION = "identifications sigma_LD^e = sigma_BPhi+, sigma_RD^e = sigma_BPhi-"

# (smaller, larger, citation)
INCLUSIONS: tuple[tuple[SpectrumKind, SpectrumKind, str], ...] = (
    (K.TUD, K.QPHI, DIAGRAM),
    (K.QPHI, K.KT, DIAGRAM),
    (K.KT, K.BPHI, DIAGRAM),
    (K.BPHI, K.BW, DIAGRAM),
    (K.BW, K.D, DIAGRAM),
    (K.QPHI, K.LDE, DIAGRAM),
    (K.LDE, K.BW_PLUS, DIAGRAM),
    (K.BW_PLUS, K.LD, DIAGRAM),
    (K.LDE, K.BPHI, DIAGRAM),
    (K.BW_PLUS, K.BW, DIAGRAM),
    (K.LD, K.D, DIAGRAM),
    (K.QPHI, K.RDE, DIAGRAM),
    (K.RDE, K.BW_MINUS, DIAGRAM),
    (K.BW_MINUS, K.RD, DIAGRAM),
    (K.RDE, K.BPHI, DIAGRAM),
    (K.BW_MINUS, K.BW, DIAGRAM),
    (K.RD, K.D, DIAGRAM),
    (K.TUD, K.DSCE, DIAGRAM),
    (K.DSCE, K.DSC, DIAGRAM),
    (K.DSCE, K.RDE, DIAGRAM),
    (K.DSC, K.RD, DIAGRAM),
    (K.P, K.AP, CLASSICAL),
    (K.AP, K.SIGMA, CLASSICAL),
    (K.CP, K.SU, CLASSICAL),
    (K.SU, K.SIGMA, CLASSICAL),
    (K.PHI_PLUS, K.PHI, CLASSICAL),
    (K.PHI_MINUS, K.PHI, CLASSICAL),
    (K.PHI_PLUS, K.W_PLUS, CLASSICAL),
    (K.PHI_MINUS, K.W_MINUS, CLASSICAL),
    (K.PHI, K.W, CLASSICAL),
    (K.W_PLUS, K.W, CLASSICAL),
    (K.W_MINUS, K.W, CLASSICAL),
    (K.W_PLUS, K.B_PLUS, CLASSICAL),
    (K.W_MINUS, K.B_MINUS, CLASSICAL),
    (K.W, K.B, CLASSICAL),
    (K.B_PLUS, K.B, CLASSICAL),
    (K.B_MINUS, K.B, CLASSICAL),
    (K.B_PLUS, K.AP, CLASSICAL),
    (K.B_MINUS, K.SU, CLASSICAL),
    (K.B, K.SIGMA, CLASSICAL),
    (K.LDE, K.PHI_PLUS, CLASSICAL),
    (K.RDE, K.PHI_MINUS, CLASSICAL),
    (K.BPHI, K.PHI, CLASSICAL),
    (K.BW_PLUS, K.W_PLUS, CLASSICAL),
    (K.BW_MINUS, K.W_MINUS, CLASSICAL),
    (K.BW, K.W, CLASSICAL),
    (K.LD, K.B_PLUS, CLASSICAL),
    (K.RD, K.B_MINUS, CLASSICAL),
    (K.D, K.B, CLASSICAL),
    (K.DSC, K.SU, CLASSICAL),
    (K.DSCE, K.PHI_MINUS, CLASSICAL),
    (K.LDE, K.BPHI_PLUS, IDENTIFICATION),
    (K.BPHI_PLUS, K.LDE, IDENTIFICATION),
    (K.RDE, K.BPHI_MINUS, IDENTIFICATION),
    (K.BPHI_MINUS, K.RDE, IDENTIFICATION),
)


@lru_cache(maxsize=None)
def _closure() -> dict[SpectrumKind, frozenset[SpectrumKind]]:
    up: dict[SpectrumKind, set[SpectrumKind]] = {k: set() for k in SpectrumKind}
    for lo, hi, _ in INCLUSIONS:
        up[lo].add(hi)
    changed = True
    while changed:
        changed = False
        for k in SpectrumKind:
            extra = set()
            for h in up[k]:
                extra |= up[h]
            extra.discard(k)
            if not extra <= up[k]:
                up[k] |= extra
                changed = True
    return {k: frozenset(v) for k, v in up.items()}


def supersets(kind: SpectrumKind) -> frozenset[SpectrumKind]:
    """Kinds that always contain ``kind`` (transitively)."""
    return _closure()[kind]


def subsets(kind: SpectrumKind) -> frozenset[SpectrumKind]:
    return frozenset(k for k, ups in _closure().items() if kind in ups)


def sorted_kinds(kinds) -> list[SpectrumKind]:
    return sorted(kinds, key=ORDER.__getitem__)
