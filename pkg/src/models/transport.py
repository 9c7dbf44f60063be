"""
Probability measures and couplings for transport on S^1
"""

import math
from functools import cached_property
from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from src.circle_geometry import normalize_angle
from src.models.geometry import Angle
from src.models.measure import SignedMeasure

MASS_TOL = 1e-10
WEIGHT_SUM_TOL = 1e-12


class ProbabilityMeasure(BaseModel):
    """Non-negative measure of total mass 1"""
    model_config = ConfigDict(frozen=True)

    measure: SignedMeasure

    @model_validator(mode="after")
    def _check_probability(self) -> "ProbabilityMeasure":
        if not self.measure.is_nonnegative(tol=1e-12):
            raise ValueError("probability measure has a negative atom or density segment")
        mass = self.measure.total_mass()
        if abs(mass - 1.0) > MASS_TOL:
            raise ValueError(f"probability measure has total mass {mass!r}")
        return self


class DiscreteProbability(BaseModel):
    """Finitely supported probability measure with sorted, distinct support"""
    model_config = ConfigDict(frozen=True)

    support: List[Angle]
    weights: List[float]

    @model_validator(mode="after")
    def _check_weights(self) -> "DiscreteProbability":
        if not self.support:
            raise ValueError("support is empty")
        if len(self.support) != len(self.weights):
            raise ValueError("support and weights differ in length")
        if any(b <= a for a, b in zip(self.support, self.support[1:])):
            raise ValueError("support must be sorted and distinct")
        if any(not math.isfinite(w) or w < 0.0 for w in self.weights):
            raise ValueError("weights must be finite and non-negative")
        total = math.fsum(self.weights)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights sum to {total!r}, expected 1")
        return self

    @classmethod
    def from_atoms(cls, angles, weights) -> "DiscreteProbability":
        """Normalize, sort and merge coincident locations; weights are rescaled to sum to 1"""
        a = np.asarray(normalize_angle(np.asarray(angles, dtype=float)), dtype=float).ravel()
        w = np.asarray(weights, dtype=float).ravel()
        measure = SignedMeasure.from_arrays(a, w)
        a, w = measure.atom_angles, measure.atom_weights
        return cls(support=a.tolist(), weights=(w / w.sum()).tolist())

    @classmethod
    def dirac(cls, angle: float) -> "DiscreteProbability":
        return cls.from_atoms([angle], [1.0])

    @cached_property
    def points(self) -> np.ndarray:
        return np.asarray(self.support, dtype=float)

    @cached_property
    def masses(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)

    def rotate(self, beta: float) -> "DiscreteProbability":
        return DiscreteProbability.from_atoms(self.points + beta, self.masses)

    def to_measure(self) -> SignedMeasure:
        return SignedMeasure.from_arrays(self.points, self.masses)


class Coupling(BaseModel):
    """Joint masses indexed by (source support) x (target support)"""
    model_config = ConfigDict(frozen=True)

    source: List[Angle]
    target: List[Angle]
    matrix: List[List[float]]

    @cached_property
    def plan(self) -> np.ndarray:
        return np.asarray(self.matrix, dtype=float).reshape(len(self.source), len(self.target))

    def marginal_defect(self, mu: DiscreteProbability, nu: DiscreteProbability) -> float:
        """Largest violation of the row sum, column sum and sign constraints"""
        plan = self.plan
        return float(max(
            np.max(np.abs(plan.sum(axis=1) - mu.masses)),
            np.max(np.abs(plan.sum(axis=0) - nu.masses)),
            max(0.0, -float(plan.min())),
        ))

    def cost(self, cost_matrix: np.ndarray) -> float:
        return float(np.sum(self.plan * cost_matrix))

