"""
Tools package initialization
"""

from .function_analyzer import FunctionAnalyzer
from .fubini import FubiniChecker, PhiKind
from .wasserstein import WassersteinSolver
from .fixtures import FixtureId, FixtureName, make_fixture

__all__ = [
    "FunctionAnalyzer",
    "FubiniChecker",
    "PhiKind",
    "WassersteinSolver",
    "FixtureId",
    "FixtureName",
    "make_fixture",
]
