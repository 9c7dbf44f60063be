"""
Geometric value types for circle-rep
"""

import math
from typing import Annotated, Tuple

import numpy as np
from pydantic import AfterValidator, BaseModel, ConfigDict, Field, field_validator

from src.circle_geometry import PI, TWO_PI, antipode, normalize_angle


def _normalized(t: float) -> float:
    t = float(t)
    if -PI <= t < PI:
        return t
    return normalize_angle(t)


# Radians, normalized into [-π, π) on validation
Angle = Annotated[float, AfterValidator(_normalized)]


class SpherePoint(BaseModel):
    """Unit vector in R^3"""
    model_config = ConfigDict(frozen=True)

    coordinates: Tuple[float, float, float]

    @field_validator("coordinates")
    @classmethod
    def _unit_norm(cls, v: Tuple[float, float, float]) -> Tuple[float, float, float]:
        norm = math.sqrt(sum(c * c for c in v))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"coordinates must have unit norm, got {norm!r}")
        return v

    @classmethod
    def on_equator(cls, t: float) -> "SpherePoint":
        """The point q(t) of S^1 seen inside S^2"""
        return cls(coordinates=(math.cos(t), math.sin(t), 0.0))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coordinates, dtype=float)


class Arc(BaseModel):
    """Half-open arc [start, start +_q length)"""
    model_config = ConfigDict(frozen=True)

    start: Angle
    length: float = Field(..., ge=0.0, le=TWO_PI)

    def antipodal(self) -> "Arc":
        return Arc(start=antipode(self.start), length=self.length)


class HemispherePoint(BaseModel):
    """
    Point of the closed upper hemisphere H+ in polar coordinates

    alpha is the angle from the north pole; alpha = π/2 puts the point on S^1.
    """
    model_config = ConfigDict(frozen=True)

    theta: Angle = 0.0
    alpha: float = Field(0.0, ge=0.0, le=PI / 2)

    @property
    def on_boundary(self) -> bool:
        return math.isclose(self.alpha, PI / 2, rel_tol=0.0, abs_tol=1e-12)

    def to_sphere_point(self) -> SpherePoint:
        s = math.sin(self.alpha)
        x, y, z = s * math.cos(self.theta), s * math.sin(self.theta), math.cos(self.alpha)
        # renormalize so rounding never trips the unit-norm check
        n = math.sqrt(x * x + y * y + z * z)
        return SpherePoint(coordinates=(x / n, y / n, z / n))

    def rotated(self, beta: float) -> "HemispherePoint":
        """Rotation about the polar axis"""
        return HemispherePoint(theta=self.theta + beta, alpha=self.alpha)
