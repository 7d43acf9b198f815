"""Error hierarchy. Every exception carries a stable machine-readable ``code``."""

from __future__ import annotations


class SpectralChainError(Exception):
    code = "SPECTRAL_CHAIN_ERROR"

    def __init__(self, message: str, **details: object) -> None:
        super().__init__(message)
        self.message = message
        self.details = details

    def to_json(self) -> dict:
        out: dict = {"code": self.code, "message": self.message}
        if self.details:
            out["details"] = {k: _jsonable(v) for k, v in sorted(self.details.items())}
        return out


def _jsonable(value: object) -> object:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    to_json = getattr(value, "to_json", None)
    if callable(to_json):
        return to_json()
    return str(value)


class InvalidInput(SpectralChainError, ValueError):
    """Input does not match the declared schema (bad fraction, bad shape, ...)."""

    code = "INVALID_INPUT"


class DimensionMismatch(SpectralChainError, ValueError):
    """Operand shapes do not fit the operation."""

    code = "DIMENSION_MISMATCH"


class NonSquareMatrix(SpectralChainError, ValueError):
    """The operation needs a square matrix."""

    code = "NON_SQUARE_MATRIX"


class IncompleteFactorization(SpectralChainError):
    """The characteristic polynomial has roots outside the Gaussian rationals."""

    code = "INCOMPLETE_FACTORIZATION"


class UnsupportedConfiguration(SpectralChainError):
    """A region question falls outside the exactly decidable configurations."""

    code = "UNSUPPORTED_CONFIGURATION"


class PreconditionViolated(SpectralChainError):
    """An operation was called outside its stated precondition."""

    code = "PRECONDITION_VIOLATED"


class RuleConflict(SpectralChainError):
    """Two derivations produced different regions for one spectrum kind."""

    code = "RULE_CONFLICT"


class InconsistentProfile(SpectralChainError):
    """A standing inclusion between two assigned spectra fails."""

    code = "INCONSISTENT_PROFILE"


class MissingKinds(SpectralChainError):
    """A check needs spectrum kinds the profile does not assign."""

    code = "MISSING_KINDS"


class InternalInvariantViolated(SpectralChainError, AssertionError):
    """Two independent computations of the same quantity disagreed."""

    code = "INTERNAL_INVARIANT_VIOLATED"


ERROR_CODES: dict[str, str] = {
    cls.code: (cls.__doc__ or cls.__name__).strip().splitlines()[0]
    for cls in (
        InvalidInput,
        DimensionMismatch,
        NonSquareMatrix,
        IncompleteFactorization,
        UnsupportedConfiguration,
        PreconditionViolated,
        RuleConflict,
        InconsistentProfile,
        MissingKinds,
        InternalInvariantViolated,
    )
}
