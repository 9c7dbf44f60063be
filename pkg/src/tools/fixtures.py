"""
Fixtures - named circle functions and seeded random measures

Random functions are generated from their measure: an antisymmetric atomic λ is
drawn first and f := f_λ + (π/2)·C, so the representer is known by construction.
"""

import logging
import re
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.circle_geometry import PI, antipode, circle_distance, normalize_angle
from src.exceptions import InvalidInput, UnknownFixture
from src.models import PLFunction, SignedMeasure

logger = logging.getLogger(__name__)

TRIPOD_FEET = (-2.0 * PI / 3.0, 0.0, 2.0 * PI / 3.0)


class FixtureName(str, Enum):
    """Named fixtures"""
    DIRAC_DISTANCE = "dirac_distance"
    ZIGZAG = "zigzag"
    CONSTANT = "constant"
    TRIPOD = "tripod"
    EHULL_SAMPLE = "ehull_sample"
    RANDOM_PL = "random_pl"
    INTERPOLATION = "interpolation"


_ALIASES = {"dp": FixtureName.DIRAC_DISTANCE, "d_p": FixtureName.DIRAC_DISTANCE}

_ID_PATTERN = re.compile(r"^\s*([A-Za-z_]+)\s*(?:\(([^()]*)\))?\s*$")


class FixtureId(BaseModel):
    """
    Fixture name plus its parameters

    Only the parameters of the named fixture are read: p for dirac_distance,
    c for constant, seed for ehull_sample, seed and k for random_pl, s for
    interpolation.
    """
    model_config = ConfigDict(frozen=True)

    name: FixtureName
    p: float = 0.0
    c: float = PI / 2.0
    seed: int = 0
    k: int = Field(8, ge=2, le=64)
    s: float = 0.0

    @classmethod
    def parse(cls, text: str) -> "FixtureId":
        """
        Parse "tripod", "dp", "dirac_distance(0.5)", "constant(1.2)",
        "ehull_sample(3)", "random_pl(3, 12)" or "interpolation(0.25)"

        Raises:
            UnknownFixture: for an unknown name or malformed arguments
        """
        match = _ID_PATTERN.match(text or "")
        if not match:
            raise UnknownFixture(f"cannot parse fixture id {text!r}")
        raw_name, raw_args = match.group(1).lower(), match.group(2)
        try:
            name = _ALIASES.get(raw_name) or FixtureName(raw_name)
        except ValueError:
            raise UnknownFixture(f"unknown fixture {raw_name!r}", {"name": raw_name}) from None
        args = [a.strip() for a in raw_args.split(",")] if raw_args and raw_args.strip() else []
        try:
            if name == FixtureName.DIRAC_DISTANCE and args:
                return cls(name=name, p=float(args[0]))
            if name == FixtureName.CONSTANT and args:
                return cls(name=name, c=float(args[0]))
            if name == FixtureName.EHULL_SAMPLE and args:
                return cls(name=name, seed=int(args[0]))
            if name == FixtureName.RANDOM_PL and args:
                return cls(name=name, seed=int(args[0]), k=int(args[1]) if len(args) > 1 else 8)
            if name == FixtureName.INTERPOLATION and args:
                return cls(name=name, s=float(args[0]))
        except ValueError as exc:
            raise UnknownFixture(f"bad arguments for fixture {raw_name!r}: {exc}") from None
        return cls(name=name)


def dirac_distance(p: float = 0.0) -> PLFunction:
    """d_p(x) = d_{S^1}(p, x)"""
    return PLFunction.from_arrays([p, antipode(p)], [0.0, PI])


def zigzag() -> PLFunction:
    """|t| on [-π, π), the distance to angle 0"""
    return dirac_distance(0.0)


def constant(c: float = PI / 2.0) -> PLFunction:
    return PLFunction.constant(c)


def tripod() -> PLFunction:
    """Distance to the centre of a tripod with legs π/3 glued to S^1 at three equally spaced feet"""
    feet = np.asarray(TRIPOD_FEET)
    knots = np.concatenate([feet, np.asarray(antipode(feet))])
    values = PI / 3.0 + np.min(circle_distance(knots[:, None], feet[None, :]), axis=1)
    return PLFunction.from_arrays(knots, values)


def interpolation(s: float) -> PLFunction:
    """(1 - s)·d_0 + s·tripod, with C = 1 and TV(∂₋f) = 4 + 8s for s in [0, 1]"""
    return dirac_distance(0.0).combine(tripod(), 1.0 - s, s)


def _separated_locations(rng: np.random.Generator, pairs: int) -> np.ndarray:
    # one jittered point per stratum of a half circle, so locations and antipodes stay apart
    width = PI / pairs
    offsets = (np.arange(pairs) + rng.uniform(0.1, 0.9, size=pairs)) * width
    return np.asarray(normalize_angle(rng.uniform(-PI, PI) + offsets))


def random_antisymmetric_measure(rng: np.random.Generator, pairs: int) -> SignedMeasure:
    """pairs atoms with normal weights, each balanced by the opposite weight at its antipode"""
    locations = _separated_locations(rng, pairs)
    weights = rng.normal(size=pairs)
    return SignedMeasure.from_arrays(
        np.concatenate([locations, np.asarray(antipode(locations))]),
        np.concatenate([weights, -weights]),
    )


def random_symmetric_measure(rng: np.random.Generator, pairs: int) -> SignedMeasure:
    """Atoms with equal weight at antipodal pairs, total mass 0"""
    locations = _separated_locations(rng, pairs)
    weights = rng.normal(size=pairs)
    weights -= weights.mean()
    return SignedMeasure.from_arrays(
        np.concatenate([locations, np.asarray(antipode(locations))]),
        np.concatenate([weights, weights]),
    )


def function_from_atomic_measure(measure: SignedMeasure, C: float = 0.0) -> PLFunction:
    """
    f_{λ + C·H^1} for an atomic λ, exactly

    f_λ is linear between the atoms of λ and their antipodes, and f_{H^1} = π/2.

    Raises:
        InvalidInput: if λ has a density part
    """
    if not measure.is_atomic:
        raise InvalidInput("function_from_atomic_measure needs a purely atomic measure")
    if not measure.atoms:
        return constant(PI / 2.0 * C)
    knots = np.concatenate([measure.atom_angles, np.asarray(antipode(measure.atom_angles))])
    knots = np.asarray(normalize_angle(knots))
    values = np.asarray(measure.integrate_distance(knots)) + PI / 2.0 * C
    return PLFunction.from_arrays(knots, values)


def random_pl_with_truth(seed: int, k: int = 8) -> Tuple[PLFunction, SignedMeasure, float]:
    """Random valid PL function with at most k breakpoints, its representer λ and C"""
    rng = np.random.default_rng(seed)
    lam = random_antisymmetric_measure(rng, max(1, k // 2))
    C = float(rng.uniform(-2.0, 2.0))
    return function_from_atomic_measure(lam, C), lam, C


def ehull_sample_with_truth(seed: int) -> Tuple[PLFunction, SignedMeasure]:
    """Element of E(S^1): |λ|(S^1) <= 1 makes f_λ + π/2 1-Lipschitz"""
    rng = np.random.default_rng(seed)
    lam = random_antisymmetric_measure(rng, int(rng.integers(1, 6)))
    lam = lam.scaled(float(rng.uniform(0.2, 1.0)) / lam.tv_norm())
    return function_from_atomic_measure(lam, 1.0), lam


def make_fixture(fixture: "FixtureId | str", seed: Optional[int] = None) -> PLFunction:
    """
    Build a named fixture

    Args:
        fixture: FixtureId or its text form
        seed: overrides the seed of the random fixtures

    Raises:
        UnknownFixture: for an invalid id
    """
    fid = FixtureId.parse(fixture) if isinstance(fixture, str) else fixture
    if seed is not None and fid.name in (FixtureName.EHULL_SAMPLE, FixtureName.RANDOM_PL):
        fid = fid.model_copy(update={"seed": seed})
    logger.debug(f"Building fixture {fid.name.value}")

    if fid.name == FixtureName.DIRAC_DISTANCE:
        return dirac_distance(fid.p)
    if fid.name == FixtureName.ZIGZAG:
        return zigzag()
    if fid.name == FixtureName.CONSTANT:
        return constant(fid.c)
    if fid.name == FixtureName.TRIPOD:
        return tripod()
    if fid.name == FixtureName.EHULL_SAMPLE:
        return ehull_sample_with_truth(fid.seed)[0]
    if fid.name == FixtureName.RANDOM_PL:
        return random_pl_with_truth(fid.seed, fid.k)[0]
    if fid.name == FixtureName.INTERPOLATION:
        return interpolation(fid.s)
    raise UnknownFixture(f"unknown fixture {fid.name!r}")
