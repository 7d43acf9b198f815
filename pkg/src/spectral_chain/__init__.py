"""Symbolic spectral-chain toolkit.

Exact finite-dimensional chain invariants, a calculus of compact plane
regions, and a rule engine that derives named spectra of an operator from
partial knowledge.
"""

__version__ = "0.1.0"

from .chain import chain_report, classify_point, drazin, rational_eigenvalues
from .errors import ERROR_CODES, SpectralChainError
from .linalg import ExactMatrix
from .scalar import ExactScalar

__all__ = [
    "ERROR_CODES",
    "ExactMatrix",
    "ExactScalar",
    "SpectralChainError",
    "__version__",
    "chain_report",
    "classify_point",
    "drazin",
    "rational_eigenvalues",
]
