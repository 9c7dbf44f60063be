"""
Wasserstein Solver Tool - W1 between probability measures on S^1

Two solvers: the circular CDF formula, where W1 is the L1 norm of the CDF
difference shifted by its arc-length-weighted median, and a discrete linear
program over couplings used as an oracle.
"""

import logging
from typing import Optional, Tuple, Union

import numpy as np
from scipy import sparse
from scipy.optimize import linprog

from config import current_config
from src.circle_geometry import PI, TWO_PI, bin_midpoints, circle_distance
from src.exceptions import InvalidInput, ProblemTooLarge
from src.models import Coupling, DiscreteProbability, ProbabilityMeasure, SignedMeasure

logger = logging.getLogger(__name__)

# bins whose density mass rounds below zero by less than this are emptied
NEGATIVE_MASS_CLIP = 1e-12


class WassersteinSolver:
    """Computes W1 on the circle by the CDF formula or the transport LP"""

    def __init__(self, lp_cap: Optional[int] = None, bins: Optional[int] = None) -> None:
        self.lp_cap = current_config.LP_CAP if lp_cap is None else lp_cap
        self.bins = current_config.GRID_SIZE if bins is None else bins
        if self.lp_cap < 1 or self.bins < 1:
            raise InvalidInput(f"lp_cap and bins must be positive, got {self.lp_cap} and {self.bins}")

    def quantize(
        self, mu: Union[ProbabilityMeasure, SignedMeasure], n: Optional[int] = None
    ) -> DiscreteProbability:
        """
        Atoms pass through; density mass of each of n uniform bins moves to the bin midpoint

        Raises:
            InvalidInput: if n < 1 or a bin carries clearly negative mass
        """
        n = self.bins if n is None else n
        if n < 1:
            raise InvalidInput(f"quantization needs n >= 1, got {n}")
        measure = mu.measure if isinstance(mu, ProbabilityMeasure) else mu

        edges = -PI + TWO_PI * np.arange(n + 1) / n
        masses = np.diff(measure.density.primitive(edges))
        if masses.size and masses.min() < -NEGATIVE_MASS_CLIP:
            raise InvalidInput(f"bin mass {masses.min():.3e} is negative")
        masses = np.clip(masses, 0.0, None)

        angles = np.concatenate([measure.atom_angles, bin_midpoints(n)])
        weights = np.concatenate([measure.atom_weights, masses])
        if np.any(weights < -NEGATIVE_MASS_CLIP):
            raise InvalidInput("cannot quantize a measure with negative atoms")
        return DiscreteProbability.from_atoms(angles, np.clip(weights, 0.0, None))

    def w1_circle(self, mu: DiscreteProbability, nu: DiscreteProbability) -> float:
        """
        W1 by the level median of the CDF difference

        G = F_mu - F_nu is piecewise constant between merged support points and
        vanishes on the wrap segment; W1 = min_c ∫|G - c| with c an arc-length
        weighted median of G.
        """
        self._check_masses(mu, nu)
        points = np.concatenate([mu.points, nu.points])
        signed = np.concatenate([mu.masses, -nu.masses])
        order = np.argsort(points, kind="stable")
        x = points[order]
        g = np.cumsum(signed[order])
        lengths = np.diff(np.append(x, x[0] + TWO_PI))

        by_level = np.argsort(g, kind="stable")
        covered = np.cumsum(lengths[by_level])
        median = g[by_level][int(np.searchsorted(covered, PI, side="left"))]
        value = float(np.dot(lengths, np.abs(g - median)))
        logger.debug(f"W1 level median {median:.3e}, value {value:.15g}")
        return max(0.0, value)

    def w1_bruteforce(
        self, mu: DiscreteProbability, nu: DiscreteProbability
    ) -> Tuple[float, Coupling]:
        """
        Exact transport LP with cost d_{S^1}

        Raises:
            ProblemTooLarge: if |supp mu|·|supp nu| exceeds lp_cap
        """
        self._check_masses(mu, nu)
        m, n = len(mu.support), len(nu.support)
        if m * n > self.lp_cap:
            raise ProblemTooLarge(
                f"transport LP with {m}x{n} variables exceeds cap {self.lp_cap}",
                {"variables": m * n, "cap": self.lp_cap},
            )
        cost = circle_distance(mu.points[:, None], nu.points[None, :])
        rows = sparse.kron(sparse.eye(m), np.ones((1, n)))
        cols = sparse.kron(np.ones((1, m)), sparse.eye(n))
        a_eq = sparse.vstack([rows, cols]).tocsr()
        b_eq = np.concatenate([mu.masses, nu.masses])
        # one marginal constraint is implied by the others
        result = linprog(
            cost.reshape(-1),
            A_eq=a_eq[:-1],
            b_eq=b_eq[:-1],
            bounds=(0, None),
            method="highs-ds",
        )
        if not result.success:
            raise InvalidInput(f"transport LP failed: {result.message}")
        plan = np.clip(result.x.reshape(m, n), 0.0, None)
        coupling = Coupling(source=mu.support, target=nu.support, matrix=plan.tolist())
        logger.debug(f"W1 LP on {m}x{n}: {result.fun:.15g}")
        return float(result.fun), coupling

    def w1(self, mu: DiscreteProbability, nu: DiscreteProbability, method: str = "cdf") -> float:
        if method == "cdf":
            return self.w1_circle(mu, nu)
        if method == "lp":
            return self.w1_bruteforce(mu, nu)[0]
        raise InvalidInput(f"unknown W1 method {method!r}")

    @staticmethod
    def _check_masses(mu: DiscreteProbability, nu: DiscreteProbability) -> None:
        gap = abs(float(mu.masses.sum()) - float(nu.masses.sum()))
        if gap > 1e-10:
            raise InvalidInput(f"measures differ in mass by {gap:.3e}")
