"""
Functions on the circle - exact piecewise-linear and sampled-smooth classes

Both classes are read through their lift h = f ∘ q on [-π, π).
"""

import logging
import math
from functools import cached_property
from typing import Callable, List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from config import current_config
from src.circle_geometry import PI, TWO_PI, circle_distance, normalize_angle
from src.exceptions import DerivativeUnavailable
from src.models.geometry import Angle
from src.models.measure import Atom

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


def _wrap_output(out: np.ndarray, t: ArrayLike) -> ArrayLike:
    if np.ndim(t) == 0:
        return float(np.asarray(out).reshape(-1)[0])
    return np.asarray(out, dtype=float).reshape(np.shape(t))


class PLFunction(BaseModel):
    """
    Continuous piecewise-linear function on S^1

    values[i] is the value at breakpoints[i]; the function is linear in the angle
    between consecutive breakpoints and the last segment wraps to the first.
    """
    model_config = ConfigDict(frozen=True)

    type: Literal["pl"] = "pl"
    breakpoints: List[Angle]
    values: List[float]

    @model_validator(mode="after")
    def _check_shape(self) -> "PLFunction":
        if len(self.breakpoints) < 2:
            raise ValueError("a PL function needs at least 2 breakpoints")
        if len(self.breakpoints) != len(self.values):
            raise ValueError("breakpoints and values differ in length")
        if any(b2 <= b1 for b1, b2 in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing in [-π, π)")
        if not all(math.isfinite(v) for v in self.values):
            raise ValueError("values must be finite")
        return self

    @classmethod
    def from_arrays(cls, breakpoints, values) -> "PLFunction":
        """Normalize, sort and merge breakpoints closer than the atom merge tolerance"""
        b = np.asarray(normalize_angle(np.asarray(breakpoints, dtype=float)), dtype=float).ravel()
        v = np.asarray(values, dtype=float).ravel()
        order = np.argsort(b, kind="stable")
        b, v = b[order], v[order]
        keep = np.concatenate([[True], np.diff(b) > current_config.ATOM_MERGE_TOL])
        return cls(breakpoints=b[keep].tolist(), values=v[keep].tolist())

    @classmethod
    def constant(cls, c: float) -> "PLFunction":
        return cls(breakpoints=[-PI, 0.0], values=[c, c])

    @cached_property
    def knots(self) -> np.ndarray:
        return np.asarray(self.breakpoints, dtype=float)

    @cached_property
    def levels(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    @cached_property
    def slopes(self) -> np.ndarray:
        """Slope of the segment starting at each breakpoint"""
        ends = np.append(self.knots[1:], self.knots[0] + TWO_PI)
        rises = np.roll(self.levels, -1) - self.levels
        return rises / (ends - self.knots)

    @cached_property
    def slope_jumps(self) -> np.ndarray:
        """slope_after(b) - slope_before(b) at each breakpoint, cyclically"""
        return self.slopes - np.roll(self.slopes, 1)

    def evaluate(self, t: ArrayLike) -> ArrayLike:
        """f(q(t)) by cyclic linear interpolation"""
        tn = np.atleast_1d(np.asarray(normalize_angle(np.asarray(t, dtype=float)), dtype=float))
        idx = np.searchsorted(self.knots, tn, side="right") - 1
        local = np.where(idx < 0, tn + TWO_PI, tn) - self.knots[idx]
        return _wrap_output(self.levels[idx] + self.slopes[idx] * local, t)

    def left_derivative(self, t: ArrayLike) -> ArrayLike:
        """∂₋h(t): slope of the segment whose closed right end or interior holds t"""
        tn = np.atleast_1d(np.asarray(normalize_angle(np.asarray(t, dtype=float)), dtype=float))
        idx = np.searchsorted(self.knots, tn, side="left") - 1
        return _wrap_output(self.slopes[idx], t)

    def rotate(self, beta: float) -> "PLFunction":
        """g with g(t + beta) = f(t)"""
        return PLFunction.from_arrays(self.knots + beta, self.levels)

    def scale(self, factor: float) -> "PLFunction":
        return PLFunction(breakpoints=self.breakpoints, values=(factor * self.levels).tolist())

    def shift(self, c: float) -> "PLFunction":
        return PLFunction(breakpoints=self.breakpoints, values=(self.levels + c).tolist())

    def combine(self, other: "PLFunction", a: float = 1.0, b: float = 1.0) -> "PLFunction":
        """a·self + b·other on the merged breakpoint set"""
        knots = np.concatenate([self.knots, other.knots])
        return PLFunction.from_arrays(
            knots, a * np.asarray(self.evaluate(knots)) + b * np.asarray(other.evaluate(knots))
        )

    def distance_to_breakpoints(self, t: ArrayLike) -> ArrayLike:
        t = np.asarray(t, dtype=float)
        return np.min(circle_distance(t[..., None], self.knots), axis=-1)


class SmoothFunction(BaseModel):
    """
    Function given by numpy-vectorized evaluators of h, ∂₋h and (optionally) h''

    kinks lists jumps of ∂₋h, as atoms whose weight is the jump size.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    type: Literal["smooth"] = "smooth"
    name: str = "smooth"
    eval_fn: Callable = Field(..., exclude=True)
    d1_fn: Callable = Field(..., exclude=True)
    d2_fn: Optional[Callable] = Field(None, exclude=True)
    kinks: List[Atom] = Field(default_factory=list)

    @model_validator(mode="after")
    def _spot_check(self) -> "SmoothFunction":
        h = current_config.FD_STEP
        tol = current_config.FD_TOL
        t = -PI + TWO_PI * (np.arange(16) + 0.37) / 16
        if self.kinks:
            kink_angles = np.array([k.angle for k in self.kinks])
            far = np.min(circle_distance(t[:, None], kink_angles[None, :]), axis=1) > 1e-3
            t = t[far]
        gap = abs(float(self._call(self.eval_fn, -PI)) - float(self._call(self.eval_fn, PI)))
        if gap > tol:
            raise ValueError(f"{self.name}: evaluator is not 2π-periodic (gap {gap:.3g})")
        fd1 = (self._call(self.eval_fn, t + h) - self._call(self.eval_fn, t - h)) / (2 * h)
        d1 = self._call(self.d1_fn, t)
        if np.any(np.abs(fd1 - d1) > tol * np.maximum(1.0, np.abs(d1))):
            raise ValueError(f"{self.name}: first derivative disagrees with finite differences")
        if self.d2_fn is not None:
            fd2 = (self._call(self.d1_fn, t + h) - self._call(self.d1_fn, t - h)) / (2 * h)
            d2 = self._call(self.d2_fn, t)
            if np.any(np.abs(fd2 - d2) > tol * np.maximum(1.0, np.abs(d2))):
                raise ValueError(f"{self.name}: second derivative disagrees with finite differences")
        return self

    @staticmethod
    def _call(fn: Callable, t: ArrayLike) -> np.ndarray:
        return np.asarray(fn(np.asarray(t, dtype=float)), dtype=float)

    def evaluate(self, t: ArrayLike) -> ArrayLike:
        tn = normalize_angle(np.asarray(t, dtype=float))
        return _wrap_output(self._call(self.eval_fn, np.atleast_1d(tn)), t)

    def left_derivative(self, t: ArrayLike) -> ArrayLike:
        tn = normalize_angle(np.asarray(t, dtype=float))
        return _wrap_output(self._call(self.d1_fn, np.atleast_1d(tn)), t)

    def second_derivative(self, t: ArrayLike) -> ArrayLike:
        if self.d2_fn is None:
            raise DerivativeUnavailable(f"{self.name}: no second derivative supplied")
        tn = normalize_angle(np.asarray(t, dtype=float))
        return _wrap_output(self._call(self.d2_fn, np.atleast_1d(tn)), t)


CircleFunction = Union[PLFunction, SmoothFunction]


class AntipodalReport(BaseModel):
    """Condition (A): f(x) + f(-x) = πC, certified on a finite test set"""
    C: float
    defect: float = Field(..., ge=0.0)
    tol: float
    satisfied: bool
