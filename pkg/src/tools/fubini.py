"""
Fubini Checker Tool - layer-cake identity for distance test functions

For g(x) = d(x0, x) and an absolutely continuous φ,

    ∫ φ(g) dλ = φ(T)·λ(S^1) - ∫_{-T}^{T} φ'(t)·λ({g < t}) dt,

the left side computed in closed form and the right side by adaptive quadrature.
"""

import logging
from enum import Enum
from typing import Union

import numpy as np
from scipy import integrate

from src.circle_geometry import PI, TWO_PI, circle_distance, zigzag_primitive
from src.exceptions import InvalidInput
from src.models import SignedMeasure

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


class PhiKind(str, Enum):
    """Test functions with known derivative"""
    CONSTANT = "constant"
    IDENTITY = "identity"
    SQUARE = "square"
    COS = "cos"


def phi(kind: PhiKind, t: ArrayLike) -> ArrayLike:
    t = np.asarray(t, dtype=float)
    if kind == PhiKind.CONSTANT:
        return np.ones_like(t)
    if kind == PhiKind.IDENTITY:
        return t
    if kind == PhiKind.SQUARE:
        return t * t
    return np.cos(t)


def phi_prime(kind: PhiKind, t: ArrayLike) -> ArrayLike:
    t = np.asarray(t, dtype=float)
    if kind == PhiKind.CONSTANT:
        return np.zeros_like(t)
    if kind == PhiKind.IDENTITY:
        return np.ones_like(t)
    if kind == PhiKind.SQUARE:
        return 2.0 * t
    return -np.sin(t)


def composed_primitive(kind: PhiKind, u: ArrayLike) -> np.ndarray:
    """Antiderivative of φ(z(u)) for the 2π-periodic zigzag z(u) = |u| on [-π, π), zero at 0"""
    u = np.asarray(u, dtype=float)
    k = np.floor((u + PI) / TWO_PI)
    r = u - TWO_PI * k
    if kind == PhiKind.CONSTANT:
        return u
    if kind == PhiKind.IDENTITY:
        return zigzag_primitive(u)
    if kind == PhiKind.SQUARE:
        return k * (2.0 * PI ** 3 / 3.0) + r ** 3 / 3.0
    return np.sin(r)


class FubiniChecker:
    """Evaluates both sides of the layer-cake identity"""

    def __init__(self, epsabs: float = 1e-13, epsrel: float = 1e-12, limit: int = 200) -> None:
        self.epsabs = epsabs
        self.epsrel = epsrel
        self.limit = limit

    def lhs(self, measure: SignedMeasure, x0: float, kind: PhiKind) -> float:
        """∫ φ(d(x0, y)) λ(dy), exact for atoms and constant-density segments"""
        kind = PhiKind(kind)
        total = 0.0
        if measure.atoms:
            d = circle_distance(x0, measure.atom_angles)
            total += float(np.dot(phi(kind, d), measure.atom_weights))
        dens = measure.density
        live = dens.levels != 0.0
        if np.any(live):
            upper = composed_primitive(kind, dens.ends[live] - x0)
            lower = composed_primitive(kind, dens.starts[live] - x0)
            total += float(np.dot(upper - lower, dens.levels[live]))
        return total

    def rhs(self, measure: SignedMeasure, x0: float, kind: PhiKind, T: float) -> float:
        """φ(T)·λ(S^1) minus the quadrature of φ'(t)·λ({g < t}) over [0, T]"""
        kind = PhiKind(kind)
        if T < PI:
            raise InvalidInput(f"T must be at least π so that d(x0, ·) maps into [-T, T], got {T!r}")
        mass = measure.total_mass()
        head = float(phi(kind, T)) * mass
        if kind == PhiKind.CONSTANT:
            return head

        # λ({g < t}) is smooth between these radii
        radii = [0.0, PI]
        if measure.atoms:
            radii.extend(np.asarray(circle_distance(x0, measure.atom_angles)).tolist())
        radii.extend(np.asarray(circle_distance(x0, measure.density.starts)).tolist())
        knots = np.unique(np.clip(radii, 0.0, PI))

        def integrand(t: float) -> float:
            return float(phi_prime(kind, t)) * measure.open_ball_measure(x0, t)

        body = 0.0
        for a, b in zip(knots[:-1], knots[1:]):
            if b - a <= 0.0:
                continue
            value, err = integrate.quad(
                integrand, a, b, epsabs=self.epsabs, epsrel=self.epsrel, limit=self.limit
            )
            body += value
        # beyond π the sublevel set is all of S^1
        if T > PI:
            body += (float(phi(kind, T)) - float(phi(kind, PI))) * mass
        return head - body

    def residual(self, measure: SignedMeasure, x0: float, kind: PhiKind, T: float = PI) -> float:
        left = self.lhs(measure, x0, kind)
        right = self.rhs(measure, x0, kind, T)
        logger.debug(f"Fubini {PhiKind(kind).value}: lhs={left:.15g} rhs={right:.15g}")
        return abs(left - right)
