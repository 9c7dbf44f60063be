"""
Report models for circle-rep
"""

import hashlib
import json
from enum import Enum
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field

SCHEMA_VERSION = "1.0"


class Verdict(str, Enum):
    """Representability verdicts"""
    REPRESENTABLE = "representable"
    NOT_REPRESENTABLE = "not_representable"
    UNDECIDED = "undecided"


class ConditionReport(BaseModel):
    """Conditions (A) and (B) with the tv vs 4C gate numbers for one function"""
    model_config = ConfigDict(use_enum_values=True)

    C: float
    defect: float
    lipschitz: float
    lipschitz_exact: bool
    tv: Optional[float] = None
    four_c: float = Field(..., serialization_alias="fourC")
    condition_a: bool
    condition_b: bool
    injective_hull: bool

    signed: Verdict = Verdict.UNDECIDED
    nonneg: Verdict = Verdict.UNDECIDED

    notes: str = ""


class Report(BaseModel):
    """Versioned JSON envelope written by every CLI command"""
    schema_version: str = SCHEMA_VERSION
    command: str
    inputs_digest: str = ""
    outputs: Dict[str, Any] = Field(default_factory=dict)
    error: Optional[Dict[str, Any]] = None
    timing_seconds: float = 0.0

    @staticmethod
    def digest(payload: Any) -> str:
        """sha256 of the canonical JSON form of the inputs"""
        text = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
        return hashlib.sha256(text.encode("utf-8")).hexdigest()
