"""
Error types for circle-rep

Every failure carries a machine-readable code. Mathematical failures (the input is
well formed but has no representation of the requested kind) exit the CLI with 2,
usage and IO failures with 1.
"""

from enum import Enum
from typing import Any, Dict, Optional


class ErrorCode(str, Enum):
    """Machine-readable error codes"""
    INVALID_INPUT = "InvalidInput"
    TV_NOT_CONVERGED = "TVNotConverged"
    DERIVATIVE_UNAVAILABLE = "DerivativeUnavailable"
    NOT_ANTIPODAL = "NotAntipodal"
    RECONSTRUCTION_FAILED = "ReconstructionFailed"
    NOT_REPRESENTABLE_BY_MEASURE = "NotRepresentableByMeasure"
    NEGATIVE_MASS = "NegativeMass"
    NOT_A_REPRESENTATION = "NotARepresentation"
    PROBLEM_TOO_LARGE = "ProblemTooLarge"
    BOUNDARY_POINT = "BoundaryPoint"
    UNKNOWN_FIXTURE = "UnknownFixture"
    EMBEDDING_FAILED = "EmbeddingFailed"
    SCHEMA_ERROR = "SchemaError"


class CircleRepError(Exception):
    """Base class for all circle-rep failures"""

    code: ErrorCode = ErrorCode.INVALID_INPUT
    exit_code: int = 1

    def __init__(self, message: str = "", details: Optional[Dict[str, Any]] = None):
        super().__init__(message or self.code.value)
        self.message = message or self.code.value
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "code": self.code.value,
            "message": self.message,
            "details": self.details,
        }


class MathematicalFailure(CircleRepError):
    """Well-formed input without a representation of the requested kind"""
    exit_code = 2


class InvalidInput(CircleRepError, ValueError):
    code = ErrorCode.INVALID_INPUT


class SchemaError(CircleRepError):
    code = ErrorCode.SCHEMA_ERROR


class UnknownFixture(CircleRepError):
    code = ErrorCode.UNKNOWN_FIXTURE


class ProblemTooLarge(CircleRepError):
    code = ErrorCode.PROBLEM_TOO_LARGE


class BoundaryPoint(CircleRepError):
    code = ErrorCode.BOUNDARY_POINT


class TVNotConverged(MathematicalFailure):
    code = ErrorCode.TV_NOT_CONVERGED


class DerivativeUnavailable(MathematicalFailure):
    code = ErrorCode.DERIVATIVE_UNAVAILABLE


class NotAntipodal(MathematicalFailure):
    code = ErrorCode.NOT_ANTIPODAL


class ReconstructionFailed(MathematicalFailure):
    code = ErrorCode.RECONSTRUCTION_FAILED


class NegativeMass(MathematicalFailure):
    code = ErrorCode.NEGATIVE_MASS


class NotARepresentation(MathematicalFailure):
    code = ErrorCode.NOT_A_REPRESENTATION


class NotRepresentableByMeasure(MathematicalFailure):
    """TV(∂₋f) exceeds 4C; carries both numbers"""
    code = ErrorCode.NOT_REPRESENTABLE_BY_MEASURE

    def __init__(self, tv: float, four_c: float, message: str = ""):
        super().__init__(
            message or f"total variation {tv:.12g} exceeds 4C = {four_c:.12g}",
            {"tv": tv, "fourC": four_c},
        )
        self.tv = tv
        self.four_c = four_c


class EmbeddingFailed(MathematicalFailure):
    code = ErrorCode.EMBEDDING_FAILED
