"""
Representation Models - certified integral representations of circle functions
"""

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from src.models.geometry import HemispherePoint
from src.models.measure import SignedMeasure


class Representation(BaseModel):
    """
    f = f_{λ̄} with λ̄ = lambda + C·H^1 and T_#lambda = -lambda

    Attributes:
        lambda_: antisymmetric representer, serialized as "lambda"
        C: total mass of λ̄
        tv: total variation of ∂₋f
        residual: sup of |f_{λ̄} - f| over the verification set
    """
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    lambda_: SignedMeasure = Field(..., alias="lambda")
    C: float
    tv: float = Field(..., ge=0.0)
    residual: float = Field(0.0, ge=0.0)

    @property
    def lambda_bar(self) -> SignedMeasure:
        return self.lambda_ + SignedMeasure.uniform(self.C)


class NonnegRepresentation(BaseModel):
    """f = f_{mubar} with mubar a non-negative measure of mass C"""
    model_config = ConfigDict(frozen=True)

    mu: SignedMeasure
    C: float
    mubar: SignedMeasure
    tv: float = Field(..., ge=0.0)
    residual: float = Field(0.0, ge=0.0)


class IsometryReport(BaseModel):
    """Pairwise residuals of the hemisphere embedding against the spherical distance"""
    points: List[HemispherePoint]
    n: int
    sphere_distances: List[List[float]]
    w1_distances: List[List[float]]
    residuals: List[List[float]]
    supnorm_residuals: List[List[float]]
    dirac_residuals: List[float] = Field(default_factory=list)
    max_residual: float = 0.0
    max_supnorm_residual: float = 0.0
    max_dirac_residual: Optional[float] = None
