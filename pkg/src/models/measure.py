"""
Signed Borel measures on S^1 - atoms plus a piecewise-constant density

The density is stored per radian on the cyclic segments [b_i, b_{i+1}) of its
breakpoints, the last segment wrapping to b_0 + 2π. The normalized Hausdorff
measure H^1 is the uniform density 1/(2π).
"""

import logging
import math
from functools import cached_property
from typing import List, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from config import current_config
from src.circle_geometry import (
    PI,
    TWO_PI,
    arc_contains,
    circle_distance,
    normalize_angle,
    sorted_unique_angles,
    zigzag_primitive,
)
from src.models.geometry import Angle, Arc

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# rows x columns of the distance kernel evaluated at once
_KERNEL_BLOCK = 1 << 21


class Atom(BaseModel):
    """Point mass"""
    model_config = ConfigDict(frozen=True)

    angle: Angle
    weight: float = Field(..., allow_inf_nan=False)


class Density(BaseModel):
    """Piecewise-constant density, mass per radian"""
    model_config = ConfigDict(frozen=True)

    breakpoints: List[Angle] = Field(default_factory=lambda: [-PI])
    values: List[float] = Field(default_factory=lambda: [0.0])

    @model_validator(mode="after")
    def _check_segments(self) -> "Density":
        if len(self.breakpoints) < 1:
            raise ValueError("density needs at least one breakpoint")
        if len(self.breakpoints) != len(self.values):
            raise ValueError("density breakpoints and values differ in length")
        if any(b2 <= b1 for b1, b2 in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("density breakpoints must be strictly increasing in [-π, π)")
        if not all(math.isfinite(v) for v in self.values):
            raise ValueError("density values must be finite")
        return self

    @cached_property
    def starts(self) -> np.ndarray:
        return np.asarray(self.breakpoints, dtype=float)

    @cached_property
    def levels(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    @cached_property
    def ends(self) -> np.ndarray:
        """Unwrapped right endpoints; the last segment ends at b_0 + 2π"""
        return np.append(self.starts[1:], self.starts[0] + TWO_PI)

    @cached_property
    def lengths(self) -> np.ndarray:
        return self.ends - self.starts

    @cached_property
    def midpoints(self) -> np.ndarray:
        return normalize_angle(0.5 * (self.starts + self.ends))

    @cached_property
    def _cumulative(self) -> np.ndarray:
        # mass from b_0 up to each breakpoint
        return np.concatenate([[0.0], np.cumsum(self.levels * self.lengths)[:-1]])

    @cached_property
    def _mass_before_first(self) -> float:
        # the wrap segment covers [-π, b_0)
        return float(self.levels[-1] * (self.starts[0] + PI))

    @property
    def mass(self) -> float:
        return float(np.dot(self.levels, self.lengths))

    def value_at(self, t: ArrayLike) -> ArrayLike:
        t_arr = np.asarray(normalize_angle(np.asarray(t, dtype=float)), dtype=float)
        idx = np.searchsorted(self.starts, t_arr, side="right") - 1
        out = self.levels[idx]
        return float(out) if np.ndim(t) == 0 else out

    def primitive(self, u: ArrayLike) -> np.ndarray:
        """P(u) = ∫_{-π}^{u} density, extended to all of R with P(u + 2π) = P(u) + mass"""
        u = np.asarray(u, dtype=float)
        k = np.floor((u + PI) / TWO_PI)
        r = u - TWO_PI * k
        r = np.where(r >= PI, PI, r)
        idx = np.searchsorted(self.starts, r, side="right") - 1
        before = idx < 0
        safe = np.where(before, 0, idx)
        inside = (
            self._mass_before_first
            + self._cumulative[safe]
            + self.levels[safe] * (r - self.starts[safe])
        )
        head = self.levels[-1] * (r + PI)
        return k * self.mass + np.where(before, head, inside)


def _coalesce_atoms(angles: np.ndarray, weights: np.ndarray, tol: float):
    """Sort atoms and merge locations within tol of each other (cyclically)"""
    if angles.size == 0:
        return angles, weights
    order = np.argsort(angles, kind="stable")
    angles, weights = angles[order], weights[order]
    group = np.concatenate([[0], np.cumsum(np.diff(angles) > tol)])
    if angles.size > 1 and angles[0] + TWO_PI - angles[-1] <= tol:
        group[group == group[-1]] = 0
    n_groups = int(group.max()) + 1
    merged_w = np.zeros(n_groups)
    np.add.at(merged_w, group, weights)
    first = np.full(n_groups, -1)
    for i, g in enumerate(group):
        if first[g] < 0:
            first[g] = i
    merged_a = angles[first]
    keep = merged_w != 0.0
    merged_a, merged_w = merged_a[keep], merged_w[keep]
    order = np.argsort(merged_a, kind="stable")
    return merged_a[order], merged_w[order]


def _compact_density(starts: np.ndarray, levels: np.ndarray, tol: float):
    """Normalize, sort, drop degenerate segments and merge equal neighbours"""
    starts = np.asarray(normalize_angle(np.asarray(starts, dtype=float)), dtype=float).ravel()
    levels = np.asarray(levels, dtype=float).ravel()
    if starts.size == 0:
        return np.array([-PI]), np.array([0.0])
    order = np.argsort(starts, kind="stable")
    starts, levels = starts[order], levels[order]
    # a segment shorter than tol is dropped in favour of its successor
    keep = np.append(np.diff(starts) > tol, True)
    starts, levels = starts[keep], levels[keep]
    if starts.size > 1 and starts[0] + TWO_PI - starts[-1] <= tol:
        starts, levels = starts[:-1], levels[:-1]
    changed = levels != np.roll(levels, 1)
    if not np.any(changed):
        return np.array([-PI]), levels[:1].copy()
    return starts[changed], levels[changed]


class SignedMeasure(BaseModel):
    """Finitely presented signed Borel measure on S^1"""
    model_config = ConfigDict(frozen=True)

    atoms: List[Atom] = Field(default_factory=list)
    density: Density = Field(default_factory=Density)

    @field_validator("atoms")
    @classmethod
    def _merge_atoms(cls, atoms: List[Atom]) -> List[Atom]:
        if len(atoms) < 2:
            return [a for a in atoms if a.weight != 0.0]
        angles = np.array([a.angle for a in atoms], dtype=float)
        weights = np.array([a.weight for a in atoms], dtype=float)
        angles, weights = _coalesce_atoms(angles, weights, current_config.ATOM_MERGE_TOL)
        return [Atom(angle=float(a), weight=float(w)) for a, w in zip(angles, weights)]

    # ---------- construction ----------

    @classmethod
    def from_arrays(
        cls,
        atom_angles: Sequence[float] = (),
        atom_weights: Sequence[float] = (),
        density_breakpoints: Optional[Sequence[float]] = None,
        density_values: Optional[Sequence[float]] = None,
    ) -> "SignedMeasure":
        """Build a measure from raw arrays, merging atoms and compacting the density"""
        tol = current_config.ATOM_MERGE_TOL
        angles = np.asarray(normalize_angle(np.asarray(atom_angles, dtype=float)), dtype=float).ravel()
        weights = np.asarray(atom_weights, dtype=float).ravel()
        if angles.shape != weights.shape:
            raise ValueError("atom angles and weights differ in length")
        angles, weights = _coalesce_atoms(angles, weights, tol)
        if density_breakpoints is None:
            starts, levels = np.array([-PI]), np.array([0.0])
        else:
            starts, levels = _compact_density(
                np.asarray(density_breakpoints, dtype=float),
                np.asarray(density_values, dtype=float),
                tol,
            )
        return cls(
            atoms=[Atom(angle=float(a), weight=float(w)) for a, w in zip(angles, weights)],
            density=Density(breakpoints=starts.tolist(), values=levels.tolist()),
        )

    @classmethod
    def zero(cls) -> "SignedMeasure":
        return cls()

    @classmethod
    def dirac(cls, angle: float, weight: float = 1.0) -> "SignedMeasure":
        return cls.from_arrays([angle], [weight])

    @classmethod
    def uniform(cls, mass: float = 1.0) -> "SignedMeasure":
        """mass · H^1"""
        return cls.from_arrays(density_breakpoints=[-PI], density_values=[mass / TWO_PI])

    # ---------- numpy views ----------

    @cached_property
    def atom_angles(self) -> np.ndarray:
        return np.array([a.angle for a in self.atoms], dtype=float)

    @cached_property
    def atom_weights(self) -> np.ndarray:
        return np.array([a.weight for a in self.atoms], dtype=float)

    @property
    def is_atomic(self) -> bool:
        return bool(np.all(self.density.levels == 0.0))

    # ---------- algebra ----------

    def _combine(self, other: "SignedMeasure", a: float, b: float) -> "SignedMeasure":
        angles = np.concatenate([self.atom_angles, other.atom_angles])
        weights = np.concatenate([a * self.atom_weights, b * other.atom_weights])
        starts = _dedupe(np.concatenate([self.density.starts, other.density.starts]))
        mids = _midpoints(starts)
        levels = a * self.density.value_at(mids) + b * other.density.value_at(mids)
        return SignedMeasure.from_arrays(angles, weights, starts, levels)

    def scaled(self, factor: float) -> "SignedMeasure":
        return SignedMeasure.from_arrays(
            self.atom_angles,
            factor * self.atom_weights,
            self.density.starts,
            factor * self.density.levels,
        )

    def __add__(self, other: "SignedMeasure") -> "SignedMeasure":
        return self._combine(other, 1.0, 1.0)

    def __sub__(self, other: "SignedMeasure") -> "SignedMeasure":
        return self._combine(other, 1.0, -1.0)

    def __neg__(self) -> "SignedMeasure":
        return self.scaled(-1.0)

    def __mul__(self, factor: float) -> "SignedMeasure":
        return self.scaled(float(factor))

    __rmul__ = __mul__

    def rotate(self, beta: float) -> "SignedMeasure":
        """Push-forward under the rotation x -> x +_q beta"""
        return SignedMeasure.from_arrays(
            self.atom_angles + beta,
            self.atom_weights,
            self.density.starts + beta,
            self.density.levels,
        )

    # ---------- operations ----------

    def total_mass(self) -> float:
        """λ(S^1)"""
        return float(np.sum(self.atom_weights)) + self.density.mass

    def tv_norm(self) -> float:
        """|λ|(S^1)"""
        return float(np.sum(np.abs(self.atom_weights))) + float(
            np.dot(np.abs(self.density.levels), self.density.lengths)
        )

    def pushforward_antipodal(self) -> "SignedMeasure":
        """T_# λ for the antipodal map T(x) = -x"""
        return self.rotate(PI)

    def antisymmetric_part(self) -> "SignedMeasure":
        """λ^a = (λ - T_#λ)/2"""
        return self._combine(self.pushforward_antipodal(), 0.5, -0.5)

    def symmetric_part(self) -> "SignedMeasure":
        """λ^s = (λ + T_#λ)/2"""
        return self._combine(self.pushforward_antipodal(), 0.5, 0.5)

    def jordan_decomposition(self) -> "JordanPair":
        """λ = λ^+ - λ^- with mutually singular non-negative parts"""
        w = self.atom_weights
        v = self.density.levels
        positive = SignedMeasure.from_arrays(
            self.atom_angles[w > 0], w[w > 0], self.density.starts, np.maximum(v, 0.0)
        )
        negative = SignedMeasure.from_arrays(
            self.atom_angles[w < 0], -w[w < 0], self.density.starts, np.maximum(-v, 0.0)
        )
        return JordanPair(positive=positive, negative=negative)

    def density_at(self, t: ArrayLike) -> ArrayLike:
        return self.density.value_at(t)

    def arc_measure(self, arc: Arc) -> float:
        """λ of the half-open arc [start, start +_q length)"""
        mass = 0.0
        if self.atoms:
            mass += float(np.sum(self.atom_weights[arc_contains(arc, self.atom_angles)]))
        p = self.density.primitive(np.array([arc.start, arc.start + arc.length]))
        return mass + float(p[1] - p[0])

    def open_ball_measure(self, center: float, radius: float) -> float:
        """λ({y : d(center, y) < radius})"""
        if radius <= 0.0:
            return 0.0
        if radius > PI:
            return self.total_mass()
        mass = 0.0
        if self.atoms:
            inside = circle_distance(center, self.atom_angles) < radius
            mass += float(np.sum(self.atom_weights[inside]))
        p = self.density.primitive(np.array([center - radius, center + radius]))
        return mass + float(p[1] - p[0])

    def integrate_distance(self, x: ArrayLike) -> ArrayLike:
        """
        f_λ(x) = ∫ d_{S^1}(x, y) λ(dy), exact for atoms and constant-density segments

        Args:
            x: angle or array of angles

        Returns:
            value(s) of f_λ at x
        """
        xs = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
        out = np.zeros_like(xs)
        a, w = self.atom_angles, self.atom_weights
        live = self.density.levels != 0.0
        s, e, v = self.density.starts[live], self.density.ends[live], self.density.levels[live]
        width = max(1, a.size + s.size)
        block = max(1, _KERNEL_BLOCK // width)
        for lo in range(0, xs.size, block):
            chunk = xs[lo:lo + block, None]
            acc = np.zeros(chunk.shape[0])
            if a.size:
                acc += circle_distance(chunk, a[None, :]) @ w
            if s.size:
                acc += (zigzag_primitive(e[None, :] - chunk) - zigzag_primitive(s[None, :] - chunk)) @ v
            out[lo:lo + block] = acc
        if np.ndim(x) == 0:
            return float(out[0])
        return out.reshape(np.shape(x))

    def is_nonnegative(self, tol: float = 0.0) -> bool:
        return bool(np.all(self.atom_weights >= -tol) and np.all(self.density.levels >= -tol))

    def agrees_with(self, other: "SignedMeasure", tol: float) -> bool:
        """
        Equality predicate for measures of this class

        Two such measures agree on every half-open arc of length <= π exactly when
        their difference vanishes, which is tested through its total variation.
        """
        return (self - other).tv_norm() <= tol


def _dedupe(starts: np.ndarray) -> np.ndarray:
    return sorted_unique_angles(starts, current_config.ATOM_MERGE_TOL)


def _midpoints(starts: np.ndarray) -> np.ndarray:
    ends = np.append(starts[1:], starts[0] + TWO_PI)
    return np.asarray(normalize_angle(0.5 * (starts + ends)), dtype=float)


class JordanPair(BaseModel):
    """Jordan decomposition λ = positive - negative"""
    model_config = ConfigDict(frozen=True)

    positive: SignedMeasure
    negative: SignedMeasure
