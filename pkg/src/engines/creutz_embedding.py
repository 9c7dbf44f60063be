"""
Creutz Embedding Engine - isometric embedding of the closed upper hemisphere into P(S^1)

Φ(p) is the non-negative representer of the spherical distance profile
f_p(t) = d_{S^2}(p, q(t)); boundary points go to Dirac measures.
"""

import logging
import math
from typing import List, Optional, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from config import current_config
from src.circle_geometry import TWO_PI, covering_map, sphere_distance, uniform_grid
from src.exceptions import BoundaryPoint, CircleRepError, EmbeddingFailed, InvalidInput
from src.models import (
    CircleFunction,
    DiscreteProbability,
    HemispherePoint,
    IsometryReport,
    ProbabilityMeasure,
    SignedMeasure,
    SmoothFunction,
)
from src.tools import WassersteinSolver
from src.tools.fixtures import dirac_distance
from src.engines.representation_engine import RepresentationEngine

logger = logging.getLogger(__name__)

MIN_BINS = 16


def _profile_callbacks(s: float, theta: float):
    def value(t):
        return np.arccos(np.clip(s * np.cos(t - theta), -1.0, 1.0))

    def first(t):
        u = t - theta
        return s * np.sin(u) / np.sqrt(1.0 - (s * np.cos(u)) ** 2)

    def second(t):
        c = np.cos(t - theta)
        return s * c * (1.0 - s * s) / (1.0 - (s * c) ** 2) ** 1.5

    return value, first, second


class CreutzEmbedding:
    """
    Creutz Embedding

    Responsibilities:
    - Distance profiles f_p of hemisphere points with analytic derivatives
    - Φ(p) through the non-negative representation
    - Sup-norm and W1 isometry reports against d_{S^2}
    """

    def __init__(
        self,
        engine: Optional[RepresentationEngine] = None,
        solver: Optional[WassersteinSolver] = None,
        bins: Optional[int] = None,
    ) -> None:
        self.engine = engine if engine is not None else RepresentationEngine()
        self.solver = solver if solver is not None else WassersteinSolver()
        self.bins = current_config.GRID_SIZE if bins is None else bins

        logger.info(f"Creutz embedding initialized with {self.bins} bins")

    def _bins(self, n: Optional[int]) -> int:
        n = self.bins if n is None else n
        if n < MIN_BINS:
            raise InvalidInput(f"embedding needs at least {MIN_BINS} bins, got {n}")
        if n % 2:
            raise InvalidInput(f"embedding needs an even bin count, got {n}")
        return n

    def distance_function(self, p: HemispherePoint) -> SmoothFunction:
        """
        f_p(t) = arccos(sin α · cos(t - θ)) with analytic h' and h''

        Raises:
            BoundaryPoint: for α = π/2, where f_p is the PL function d_θ
        """
        if p.on_boundary:
            raise BoundaryPoint(
                f"p on the equator (theta={p.theta:.6g}) has a PL profile",
                {"theta": p.theta, "alpha": p.alpha},
            )
        value, first, second = _profile_callbacks(math.sin(p.alpha), p.theta)
        return SmoothFunction(
            name=f"f_p(theta={p.theta:.6g}, alpha={p.alpha:.6g})",
            eval_fn=value,
            d1_fn=first,
            d2_fn=second,
        )

    def profile(self, p: HemispherePoint) -> CircleFunction:
        """f_p for any p, the PL distance d_θ on the boundary"""
        if p.on_boundary:
            return dirac_distance(p.theta)
        return self.distance_function(p)

    def embed(self, p: HemispherePoint, n: Optional[int] = None) -> ProbabilityMeasure:
        """
        Φ(p): δ_θ on the boundary, otherwise the non-negative representer of f_p on n bins

        Raises:
            InvalidInput: for fewer than 16 or an odd number of bins
            EmbeddingFailed: if the representation engine rejects f_p or Φ(p) is not a probability measure
        """
        n = self._bins(n)
        if p.on_boundary:
            return ProbabilityMeasure(measure=SignedMeasure.dirac(p.theta))

        f = self.distance_function(p)
        try:
            rep = self.engine.represent_nonneg(f, n=n)
        except CircleRepError as exc:
            logger.critical(f"Representation of {f.name} failed on {n} bins: {exc.code.value}: {exc.message}")
            raise EmbeddingFailed(
                f"Φ(p) could not be built for {f.name}: {exc.message}",
                {"cause": exc.code.value, "n": n, **exc.details},
            ) from exc

        mubar = rep.mubar
        if not mubar.is_nonnegative(tol=1e-12) or abs(mubar.total_mass() - 1.0) > 1e-10:
            logger.critical(
                f"Φ(p) for {f.name} is not a probability measure "
                f"(mass {mubar.total_mass():.15g}, min density {mubar.density.levels.min():.3e})"
            )
            raise EmbeddingFailed(f"Φ(p) for {f.name} is not a probability measure")
        logger.info(f"Embedded {f.name} on {n} bins (residual {rep.residual:.3e})")
        return ProbabilityMeasure(measure=mubar)

    def supnorm_distance(self, p: HemispherePoint, q: HemispherePoint, n: Optional[int] = None) -> float:
        """‖f_p - f_q‖_∞: grid maximum polished by bounded Brent search around the argmax"""
        n = self._bins(n)
        fp, fq = self.profile(p), self.profile(q)

        def gap(t):
            return np.abs(np.asarray(fp.evaluate(t)) - np.asarray(fq.evaluate(t)))

        grid = uniform_grid(n)
        values = gap(grid)
        k = int(np.argmax(values))
        best = float(values[k])
        if best == 0.0:
            return 0.0
        step = TWO_PI / n
        polished = minimize_scalar(
            lambda t: -float(gap(t)),
            bounds=(grid[k] - step, grid[k] + step),
            method="bounded",
            options={"xatol": 1e-10},
        )
        return max(best, -float(polished.fun))

    def isometry_report(
        self,
        points: Sequence[HemispherePoint],
        n: Optional[int] = None,
        dirac_samples: int = 32,
    ) -> IsometryReport:
        """
        Pairwise |W1(Φ(p), Φ(q)) - d_{S^2}(p, q)| and |‖f_p - f_q‖_∞ - d_{S^2}(p, q)|,
        plus |W1(Φ(p), δ_x) - f_p(x)| on a grid of x
        """
        n = self._bins(n)
        points = list(points)
        if len(points) < 2:
            raise InvalidInput("isometry report needs at least 2 points")

        quantized: List[DiscreteProbability] = [
            self.solver.quantize(self.embed(p, n), n) for p in points
        ]
        m = len(points)
        sphere = np.zeros((m, m))
        w1 = np.zeros((m, m))
        sup_res = np.zeros((m, m))
        for i in range(m):
            for j in range(i + 1, m):
                d = sphere_distance(points[i].to_sphere_point(), points[j].to_sphere_point())
                sphere[i, j] = sphere[j, i] = d
                w1[i, j] = w1[j, i] = self.solver.w1_circle(quantized[i], quantized[j])
                sup_res[i, j] = sup_res[j, i] = abs(self.supnorm_distance(points[i], points[j], n) - d)
        residuals = np.abs(w1 - sphere)

        dirac_res = []
        xs = uniform_grid(dirac_samples)
        equator = covering_map(xs)
        for p, mu in zip(points, quantized):
            sp = p.to_sphere_point()
            worst = max(
                abs(self.solver.w1_circle(mu, DiscreteProbability.dirac(x)) - sphere_distance(sp, q))
                for x, q in zip(xs, equator)
            )
            dirac_res.append(float(worst))

        logger.info(f"Isometry report on {m} points: max W1 residual {residuals.max():.3e}")
        return IsometryReport(
            points=points,
            n=n,
            sphere_distances=sphere.tolist(),
            w1_distances=w1.tolist(),
            residuals=residuals.tolist(),
            supnorm_residuals=sup_res.tolist(),
            dirac_residuals=dirac_res,
            max_residual=float(residuals.max()),
            max_supnorm_residual=float(sup_res.max()),
            max_dirac_residual=max(dirac_res) if dirac_res else None,
        )
