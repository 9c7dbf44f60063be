"""
Models package initialization
"""

from .geometry import Angle, Arc, HemispherePoint, SpherePoint
from .measure import Atom, Density, JordanPair, SignedMeasure
from .function import AntipodalReport, CircleFunction, PLFunction, SmoothFunction
from .transport import Coupling, DiscreteProbability, ProbabilityMeasure
from .representation import IsometryReport, NonnegRepresentation, Representation
from .report import SCHEMA_VERSION, ConditionReport, Report, Verdict

__all__ = [
    "Angle",
    "Arc",
    "HemispherePoint",
    "SpherePoint",
    "Atom",
    "Density",
    "JordanPair",
    "SignedMeasure",
    "AntipodalReport",
    "CircleFunction",
    "PLFunction",
    "SmoothFunction",
    "Coupling",
    "DiscreteProbability",
    "ProbabilityMeasure",
    "IsometryReport",
    "NonnegRepresentation",
    "Representation",
    "SCHEMA_VERSION",
    "ConditionReport",
    "Report",
    "Verdict",
]
