"""Rule-based derivation and verification over named spectra."""

from .kinds import ETA_KINDS, INCLUSIONS, SpectrumKind, subsets, supersets
from .profile import SCHEMA, Diagnostic, Provenance, SpectraProfile
from .rules import CHECKS, RULES, CheckRule, DerivationRule, apply_rules, derived_kinds, rule_ids
from .verify import (
    BOUNDARY_ARROWS,
    MOVED_CHAINS,
    bw_simply_connected_check,
    meromorphic_check,
    verify_all,
    verify_boundary_diagrams,
    verify_eta_theorem,
    verify_moved_boundary,
    verify_omega,
)

__all__ = [
    "BOUNDARY_ARROWS",
    "CHECKS",
    "CheckRule",
    "DerivationRule",
    "Diagnostic",
    "ETA_KINDS",
    "INCLUSIONS",
    "MOVED_CHAINS",
    "Provenance",
    "RULES",
    "SCHEMA",
    "SpectraProfile",
    "SpectrumKind",
    "apply_rules",
    "bw_simply_connected_check",
    "derived_kinds",
    "meromorphic_check",
    "rule_ids",
    "subsets",
    "supersets",
    "verify_all",
    "verify_boundary_diagrams",
    "verify_eta_theorem",
    "verify_moved_boundary",
    "verify_omega",
]
