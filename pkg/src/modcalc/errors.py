"""Exception hierarchy shared by every modcalc module."""

from __future__ import annotations


class ModcalcError(Exception):
    """Base class for all library errors."""


class InvalidSignature(ModcalcError, ValueError):
    pass


class InvalidIndex(ModcalcError, ValueError):
    pass


class SignatureMismatch(ModcalcError, ValueError):
    pass


class ConflictingEntry(ModcalcError, ValueError):
    pass


class ParameterError(ModcalcError, ValueError):
    """An operation would leave the space of B-affine values, or a sign is undecidable."""


class ParameterAmbiguous(ParameterError):
    pass


class SlopeUndefined(ModcalcError, ValueError):
    pass


class InvalidMap(ModcalcError, ValueError):
    pass


class UnsupportedIndex(ModcalcError, RuntimeError):
    pass


class InvalidSpec(ModcalcError, ValueError):
    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(f"{v} violated" for v in self.violations))


class ConsistencyFailure(ModcalcError, RuntimeError):
    pass


class NonCoveringCertificate(ModcalcError, ValueError):
    pass


class CrossTermNegative(ModcalcError, ValueError):
    pass


class NoConvergence(ModcalcError, RuntimeError):
    pass


class DecompositionFailure(ModcalcError, RuntimeError):
    pass


class StageFailure(ModcalcError, RuntimeError):
    def __init__(self, stage: str, detail: str):
        self.stage = stage
        self.detail = detail
        super().__init__(f"stage {stage!r} failed: {detail}")


class FaceCheckFailure(ModcalcError, RuntimeError):
    pass


class RatioMismatch(ModcalcError, RuntimeError):
    pass


class SerializationError(ModcalcError, ValueError):
    pass
