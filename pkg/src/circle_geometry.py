"""
Circle geometry - canonical coordinates, covering map, arcs and spherical distances

Angles live in the half-open fundamental domain [-π, π). All functions accept
Python floats or numpy arrays and return the same kind.
"""

import logging
import math
from typing import Any, Sequence, Union

import numpy as np

from src.exceptions import InvalidInput

logger = logging.getLogger(__name__)

PI = math.pi
TWO_PI = 2.0 * math.pi

ArrayLike = Union[float, np.ndarray]


def _as_output(result: np.ndarray, like: Any) -> ArrayLike:
    if np.ndim(like) == 0:
        return float(result)
    return result


def normalize_angle(t: ArrayLike) -> ArrayLike:
    """
    Map radians to the unique representative in [-π, π) congruent mod 2π

    Raises:
        InvalidInput: if any input is NaN or infinite
    """
    arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise InvalidInput(f"angle must be finite, got {t!r}")
    r = np.mod(arr + PI, TWO_PI) - PI
    # np.mod can round up to the divisor for tiny negative arguments
    r = np.where(r >= PI, r - TWO_PI, r)
    # canonical inputs pass through untouched so normalization is idempotent
    r = np.where((arr >= -PI) & (arr < PI), arr, r)
    return _as_output(r, t)


def antipode(a: ArrayLike) -> ArrayLike:
    """Antipodal map T(x) = -x in angle coordinates"""
    return normalize_angle(np.asarray(a, dtype=float) + PI)


def circle_distance(a: ArrayLike, b: ArrayLike) -> ArrayLike:
    """Length of the shorter arc between two angles, in [0, π]"""
    diff = np.mod(np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)), TWO_PI)
    d = np.minimum(diff, TWO_PI - diff)
    if np.ndim(a) == 0 and np.ndim(b) == 0:
        return float(d)
    return d


def covering_map(t: ArrayLike) -> np.ndarray:
    """q(t) = (cos t, sin t) embedded in the equatorial plane of R^3"""
    t = np.asarray(t, dtype=float)
    return np.stack([np.cos(t), np.sin(t), np.zeros_like(t)], axis=-1)


def _unit_vector(p: Any) -> np.ndarray:
    coords = getattr(p, "coordinates", p)
    v = np.asarray(coords, dtype=float)
    if v.shape != (3,):
        raise InvalidInput(f"expected a vector in R^3, got shape {v.shape}")
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > 1e-12:
        raise InvalidInput(f"expected a unit vector, got norm {norm!r}")
    return v


def sphere_distance(p: Any, x: Any) -> float:
    """
    Spherical distance d_{S^2}(p, x) = arccos <p, x>

    Args:
        p: SpherePoint or unit 3-vector
        x: SpherePoint or unit 3-vector

    Returns:
        Distance in [0, π]
    """
    u = _unit_vector(p)
    v = _unit_vector(x)
    # clamp before arccos: rounding pushes antipodal inner products past -1
    inner = float(np.clip(np.dot(u, v), -1.0, 1.0))
    return math.acos(inner)


def arc_offset(start: ArrayLike, t: ArrayLike) -> ArrayLike:
    """Offset s in [0, 2π) with t = start +_q s"""
    s = np.mod(np.asarray(t, dtype=float) - np.asarray(start, dtype=float), TWO_PI)
    s = np.where(s >= TWO_PI, 0.0, s)
    if np.ndim(start) == 0 and np.ndim(t) == 0:
        return float(s)
    return s


def arc_contains(arc: Any, t: ArrayLike) -> Union[bool, np.ndarray]:
    """
    Membership in the half-open arc [start, start +_q length)

    The left endpoint belongs to the arc, the right endpoint does not
    (unless the arc is the full circle).
    """
    if arc.length >= TWO_PI:
        return True if np.ndim(t) == 0 else np.ones(np.shape(t), dtype=bool)
    inside = np.asarray(arc_offset(arc.start, t)) < arc.length
    if np.ndim(t) == 0:
        return bool(inside)
    return inside


def uniform_grid(n: int) -> np.ndarray:
    """n equally spaced angles -π + 2πk/n"""
    return -PI + TWO_PI * np.arange(n) / n


def bin_midpoints(n: int) -> np.ndarray:
    """Midpoints of the n uniform bins of [-π, π)"""
    return -PI + TWO_PI * (np.arange(n) + 0.5) / n


def sorted_unique_angles(angles: Sequence[float], tol: float = 0.0) -> np.ndarray:
    """Normalize, sort and drop angles within tol of their predecessor (cyclically)"""
    arr = np.sort(np.asarray(normalize_angle(np.asarray(angles, dtype=float)), dtype=float).ravel())
    if arr.size == 0:
        return arr
    keep = np.concatenate([[True], np.diff(arr) > tol])
    arr = arr[keep]
    if arr.size > 1 and arr[0] + TWO_PI - arr[-1] <= tol:
        arr = arr[:-1]
    return arr


def zigzag_primitive(u: ArrayLike) -> ArrayLike:
    """
    Antiderivative Z of the 2π-periodic zigzag z(u) = |u| on [-π, π), with Z(0) = 0

    ∫_a^b d_{S^1}(x, y) dy = Z(b - x) - Z(a - x) for any real a <= b.
    """
    u = np.asarray(u, dtype=float)
    k = np.floor((u + PI) / TWO_PI)
    r = u - TWO_PI * k
    return k * PI * PI + 0.5 * r * np.abs(r)
