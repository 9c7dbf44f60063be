"""
Function Analyzer Tool - Lipschitz constants, antipodal constants and total variation
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from config import current_config
from src.circle_geometry import PI, antipode, uniform_grid
from src.exceptions import InvalidInput, TVNotConverged
from src.models import (
    AntipodalReport, CircleFunction, ConditionReport, PLFunction, SmoothFunction, Verdict
)

logger = logging.getLogger(__name__)


class FunctionAnalyzer:
    """Checks conditions (A) and (B) for integral representability of a circle function"""

    def __init__(
        self,
        grid_size: Optional[int] = None,
        antipodal_tol: Optional[float] = None,
        tv_rel_tol: Optional[float] = None,
        tv_initial_samples: Optional[int] = None,
        tv_max_samples: Optional[int] = None,
        gate_tol: float = 1e-9,
    ) -> None:
        self.grid_size = current_config.GRID_SIZE if grid_size is None else grid_size
        self.antipodal_tol = current_config.ANTIPODAL_TOL if antipodal_tol is None else antipodal_tol
        self.tv_rel_tol = current_config.TV_REL_TOL if tv_rel_tol is None else tv_rel_tol
        self.tv_initial_samples = (
            current_config.TV_INITIAL_SAMPLES if tv_initial_samples is None else tv_initial_samples
        )
        self.tv_max_samples = current_config.TV_MAX_SAMPLES if tv_max_samples is None else tv_max_samples
        self.gate_tol = gate_tol
        for label in ("grid_size", "antipodal_tol", "tv_rel_tol", "tv_initial_samples", "tv_max_samples"):
            if getattr(self, label) <= 0:
                raise InvalidInput(f"{label} must be positive, got {getattr(self, label)!r}")

    def test_points(self, f: CircleFunction) -> np.ndarray:
        """Breakpoints (or kinks), their antipodes and the uniform grid"""
        grid = uniform_grid(self.grid_size)
        if isinstance(f, PLFunction):
            special = f.knots
        else:
            special = np.array([k.angle for k in f.kinks], dtype=float)
        return np.concatenate([special, np.asarray(antipode(special)), grid])

    def lipschitz_constant(self, f: CircleFunction) -> Tuple[float, bool]:
        """
        Lipschitz constant of f with respect to the arc-length metric

        Returns:
            (value, exact): exact for PL functions; for smooth functions the maximum
            of |∂₋h| over the grid, which is a lower bound
        """
        if isinstance(f, PLFunction):
            return float(np.max(np.abs(f.slopes))), True
        values = np.abs(np.asarray(f.left_derivative(self.test_points(f))))
        return float(np.max(values)), False

    def antipodal_constant(self, f: CircleFunction, tol: Optional[float] = None) -> AntipodalReport:
        """C = (f(0) + f(-π))/π and the largest defect of f(x) + f(-x) = πC on the test points"""
        tol = self.antipodal_tol if tol is None else tol
        if not tol > 0.0:
            raise InvalidInput(f"condition (A) tolerance must be positive, got {tol!r}")
        c = (float(f.evaluate(0.0)) + float(f.evaluate(-PI))) / PI
        t = self.test_points(f)
        sums = np.asarray(f.evaluate(t)) + np.asarray(f.evaluate(antipode(t)))
        defect = float(np.max(np.abs(sums - PI * c)))
        satisfied = defect <= tol
        if not satisfied:
            logger.warning(f"Condition (A) fails: C={c:.12g}, defect={defect:.3e} > tol={tol:.1e}")
        return AntipodalReport(C=c, defect=defect, tol=tol, satisfied=satisfied)

    def tv_left_derivative(self, f: CircleFunction) -> float:
        """
        Total variation of ∂₋f over S^1

        Exact sum of absolute slope jumps for PL functions. For smooth functions the
        uniform partition is doubled until two successive sums agree to tv_rel_tol.

        Raises:
            TVNotConverged: if the refinement reaches tv_max_samples without agreeing
        """
        if isinstance(f, PLFunction):
            return float(np.sum(np.abs(f.slope_jumps)))
        return self._refined_tv(f)

    def _refined_tv(self, f: SmoothFunction) -> float:
        n = self.tv_initial_samples
        previous = self._partition_tv(f, n)
        while n < self.tv_max_samples:
            n *= 2
            current = self._partition_tv(f, n)
            logger.debug(f"{f.name}: TV on {n} samples = {current:.15g}")
            if abs(current - previous) < self.tv_rel_tol * max(current, 1.0):
                return current
            previous = current
        logger.error(f"{f.name}: TV refinement did not settle within {self.tv_max_samples} samples")
        raise TVNotConverged(
            f"total variation of {f.name} did not converge",
            {"samples": n, "last": previous},
        )

    @staticmethod
    def _partition_tv(f: SmoothFunction, n: int) -> float:
        d1 = np.asarray(f.left_derivative(uniform_grid(n)))
        return float(np.sum(np.abs(np.diff(np.append(d1, d1[0])))))

    def injective_hull_membership(self, f: CircleFunction, tol: float = 1e-9) -> bool:
        """E(S^1): 1-Lipschitz with f(x) + f(-x) = π"""
        lip, _ = self.lipschitz_constant(f)
        report = self.antipodal_constant(f, tol)
        return lip <= 1.0 + tol and report.satisfied and abs(report.C - 1.0) <= tol

    def check_conditions(self, f: CircleFunction) -> ConditionReport:
        """Full verdict on conditions (A), (B) and the tv <= 4C measure gate"""
        antipodal = self.antipodal_constant(f)
        lip, exact = self.lipschitz_constant(f)
        notes = []
        try:
            tv: Optional[float] = self.tv_left_derivative(f)
        except TVNotConverged as exc:
            tv = None
            notes.append(exc.message)

        condition_b = math.isfinite(lip) and tv is not None
        four_c = 4.0 * antipodal.C
        hull = (
            antipodal.satisfied and abs(antipodal.C - 1.0) <= self.gate_tol
            and lip <= 1.0 + self.gate_tol
        )

        if not antipodal.satisfied:
            signed = nonneg = Verdict.NOT_REPRESENTABLE
            notes.append("condition (A) fails")
        elif not condition_b:
            signed = nonneg = Verdict.UNDECIDED
        else:
            signed = Verdict.REPRESENTABLE
            if antipodal.C < 0.0 or tv > four_c + self.gate_tol:
                nonneg = Verdict.NOT_REPRESENTABLE
                notes.append(f"TV {tv:.12g} exceeds 4C {four_c:.12g}" if antipodal.C >= 0.0
                             else "negative total mass")
                logger.warning(f"Measure gate rejects: tv={tv:.12g}, 4C={four_c:.12g}")
            else:
                nonneg = Verdict.REPRESENTABLE

        return ConditionReport(
            C=antipodal.C,
            defect=antipodal.defect,
            lipschitz=lip,
            lipschitz_exact=exact,
            tv=tv,
            four_c=four_c,
            condition_a=antipodal.satisfied,
            condition_b=condition_b,
            injective_hull=hull,
            signed=signed,
            nonneg=nonneg,
            notes="; ".join(notes),
        )
