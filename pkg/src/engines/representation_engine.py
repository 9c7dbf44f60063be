"""
Representation Engine - integral representations f(x) = ∫ d(x, y) λ̄(dy)

Builds the antisymmetric representer from the Stieltjes measure of the left
derivative, the non-negative representer when the total variation allows one,
and the identity checks around them.
"""

import logging
from typing import Optional

import numpy as np

from config import current_config
from src.circle_geometry import PI, TWO_PI, antipode, uniform_grid
from src.exceptions import (
    DerivativeUnavailable,
    InvalidInput,
    NegativeMass,
    NotARepresentation,
    NotAntipodal,
    NotRepresentableByMeasure,
    ReconstructionFailed,
)
from src.models import (
    Arc, CircleFunction, NonnegRepresentation, PLFunction, Representation, SignedMeasure
)
from src.tools import FubiniChecker, FunctionAnalyzer, PhiKind

logger = logging.getLogger(__name__)

# the representer is a quarter of the Stieltjes measure of ∂₋h
STIELTJES_SCALE = 0.25


def _setting(value, default):
    return default if value is None else value


class RepresentationEngine:
    """
    Representation Engine

    Responsibilities:
    - Stieltjes measure of ∂₋h for PL and smooth functions
    - Signed representation (λ, C) with T_#λ = -λ, verified by reconstruction
    - Non-negative representation behind the total variation gate TV(∂₋f) <= 4C
    - Left-derivative formula, Fubini identity and uniqueness checks
    """

    def __init__(
        self,
        analyzer: Optional[FunctionAnalyzer] = None,
        stieltjes_bins: Optional[int] = None,
        reconstruction_tol_pl: Optional[float] = None,
        reconstruction_tol_smooth: Optional[float] = None,
        antisymmetry_tol: Optional[float] = None,
        gate_tol: float = 1e-9,
    ) -> None:
        self.analyzer = analyzer if analyzer is not None else FunctionAnalyzer(gate_tol=gate_tol)
        self.stieltjes_bins = _setting(stieltjes_bins, current_config.STIELTJES_BINS)
        self.reconstruction_tol_pl = _setting(reconstruction_tol_pl, current_config.RECONSTRUCTION_TOL_PL)
        self.reconstruction_tol_smooth = _setting(
            reconstruction_tol_smooth, current_config.RECONSTRUCTION_TOL_SMOOTH
        )
        self.antisymmetry_tol = _setting(antisymmetry_tol, current_config.ANTISYMMETRY_TOL)
        self.gate_tol = gate_tol
        for label in ("stieltjes_bins", "reconstruction_tol_pl", "reconstruction_tol_smooth",
                      "antisymmetry_tol"):
            if getattr(self, label) <= 0:
                raise InvalidInput(f"{label} must be positive, got {getattr(self, label)!r}")
        self.fubini = FubiniChecker()

    # ---------- Stieltjes measure ----------

    def stieltjes_measure(self, f: CircleFunction, n: Optional[int] = None) -> SignedMeasure:
        """
        Measure with λ*[s, t) = ∂₋h(t) - ∂₋h(s)

        PL functions give one atom per breakpoint weighted by its slope jump. Smooth
        functions give one density level per uniform bin [b_i, b_{i+1}): the bin's
        Stieltjes mass ∂₋h(b_{i+1}) - ∂₋h(b_i), less the declared kinks inside it, over
        the bin width. That level is the mean of h'' on the bin, so every bin carries
        its exact mass however narrow the peaks of h''. Kinks stay atoms.

        Raises:
            DerivativeUnavailable: for a smooth function without h''
            InvalidInput: if n is odd
        """
        if isinstance(f, PLFunction):
            return SignedMeasure.from_arrays(f.knots, f.slope_jumps)

        if f.d2_fn is None:
            logger.error(f"{f.name}: Stieltjes measure needs a second derivative")
            raise DerivativeUnavailable(f"{f.name}: no second derivative supplied")
        n = self.stieltjes_bins if n is None else n
        if n < 2 or n % 2:
            raise InvalidInput(f"bin count must be even so bins align antipodally, got {n}")

        edges = uniform_grid(n)
        d1 = np.asarray(f.left_derivative(edges), dtype=float)
        increments = np.roll(d1, -1) - d1
        kink_angles = np.array([k.angle for k in f.kinks], dtype=float)
        kink_weights = np.array([k.weight for k in f.kinks], dtype=float)
        if kink_angles.size:
            bins = np.clip(np.searchsorted(edges, kink_angles, side="right") - 1, 0, n - 1)
            np.subtract.at(increments, bins, kink_weights)
        logger.debug(f"{f.name}: Stieltjes density on {n} bins, mass {increments.sum():.3e}")
        return SignedMeasure.from_arrays(
            kink_angles,
            kink_weights,
            edges,
            increments / (TWO_PI / n),
        )

    # ---------- representations ----------

    def _reconstruction_tol(self, f: CircleFunction, tv: float, n: Optional[int] = None) -> float:
        """
        Residual allowed for f_λ̄ against f

        A smooth-path bin holds the exact mass of its Stieltjes increment, so moving it
        within a bin of width w shifts f_λ̄ by at most w times its |λ| mass. The bound
        w·|λ|(S^1) = w·tv/4 is added to the configured smooth tolerance.
        """
        if isinstance(f, PLFunction):
            return self.reconstruction_tol_pl
        n = self.stieltjes_bins if n is None else n
        return self.reconstruction_tol_smooth + (TWO_PI / n) * STIELTJES_SCALE * tv

    def reconstruction_residual(self, measure: SignedMeasure, f: CircleFunction) -> float:
        """sup |f_measure - f| over the verification points of f"""
        xs = self.analyzer.test_points(f)
        return float(np.max(np.abs(
            np.asarray(measure.integrate_distance(xs)) - np.asarray(f.evaluate(xs))
        )))

    def represent_signed(
        self, f: CircleFunction, tol: Optional[float] = None, n: Optional[int] = None
    ) -> Representation:
        """
        Unique antisymmetric λ and constant C with f = f_{λ + C·H^1}

        Args:
            f: circle function
            tol: condition (A) tolerance
            n: bin count for smooth functions

        Raises:
            NotAntipodal: condition (A) defect above tol
            TVNotConverged: total variation refinement did not settle
            ReconstructionFailed: f is outside the valid input class
        """
        antipodal = self.analyzer.antipodal_constant(f, tol)
        if not antipodal.satisfied:
            logger.error(f"Condition (A) fails with defect {antipodal.defect:.3e}")
            raise NotAntipodal(
                f"f(x) + f(-x) is not constant: defect {antipodal.defect:.3e} > {antipodal.tol:.1e}",
                {"C": antipodal.C, "defect": antipodal.defect, "tol": antipodal.tol},
            )
        tv = self.analyzer.tv_left_derivative(f)

        lam = self.stieltjes_measure(f, n).scaled(STIELTJES_SCALE)
        asym = (lam + lam.pushforward_antipodal()).tv_norm()
        if asym > self.antisymmetry_tol * max(1.0, tv):
            logger.error(f"Stieltjes measure is not antisymmetric (defect {asym:.3e})")
            raise ReconstructionFailed(
                f"representer is not antisymmetric: defect {asym:.3e}", {"antisymmetry": asym}
            )

        rep_bar = lam + SignedMeasure.uniform(antipodal.C)
        residual = self.reconstruction_residual(rep_bar, f)
        tol_rec = self._reconstruction_tol(f, tv, n)
        if residual > tol_rec:
            logger.error(f"Reconstruction residual {residual:.3e} above {tol_rec:.1e}")
            raise ReconstructionFailed(
                f"f_λ̄ misses f by {residual:.3e}", {"residual": residual, "tol": tol_rec}
            )

        logger.info(f"Representation built: C={antipodal.C:.12g}, tv={tv:.12g}, residual={residual:.3e}")
        return Representation(lambda_=lam, C=antipodal.C, tv=tv, residual=residual)

    def represent_nonneg(
        self, f: CircleFunction, tol: Optional[float] = None, n: Optional[int] = None
    ) -> NonnegRepresentation:
        """
        Non-negative representer mubar of mass C, mu = 2·λ⁺

        Raises:
            NegativeMass: if C < 0
            NotRepresentableByMeasure: if TV(∂₋f) > 4C (carries tv and fourC)
        """
        rep = self.represent_signed(f, tol, n)
        four_c = 4.0 * rep.C
        if rep.C < 0.0:
            logger.error(f"Negative total mass C={rep.C:.12g}")
            raise NegativeMass(f"total mass C = {rep.C:.12g} is negative", {"C": rep.C})
        if rep.tv > four_c + self.gate_tol:
            logger.warning(f"Measure gate rejects: tv={rep.tv:.12g} > 4C={four_c:.12g}")
            raise NotRepresentableByMeasure(rep.tv, four_c)

        mu = rep.lambda_.jordan_decomposition().positive.scaled(2.0)
        coefficient = rep.C - mu.total_mass()
        if coefficient < 0.0:
            if coefficient < -self.gate_tol:
                raise NotRepresentableByMeasure(rep.tv, four_c)
            coefficient = 0.0
        mubar = mu + SignedMeasure.uniform(coefficient)

        residual = self.reconstruction_residual(mubar, f)
        tol_rec = self._reconstruction_tol(f, rep.tv, n)
        if residual > tol_rec:
            logger.error(f"Non-negative reconstruction residual {residual:.3e} above {tol_rec:.1e}")
            raise ReconstructionFailed(
                f"f_mubar misses f by {residual:.3e}", {"residual": residual, "tol": tol_rec}
            )
        logger.info(f"Non-negative representation built: mass(mu)={mu.total_mass():.12g}, C={rep.C:.12g}")
        return NonnegRepresentation(mu=mu, C=rep.C, mubar=mubar, tv=rep.tv, residual=residual)

    # ---------- identities ----------

    @staticmethod
    def left_derivative_of_representation(rep: Representation, x: float) -> float:
        """∂₋f(x) = λ[T(x), x) - λ[x, T(x))"""
        lam = rep.lambda_
        behind = lam.arc_measure(Arc(start=antipode(x), length=PI))
        ahead = lam.arc_measure(Arc(start=x, length=PI))
        return behind - ahead

    def fubini_identity_check(
        self, measure: SignedMeasure, x0: float, phi: PhiKind, T: float = PI
    ) -> float:
        """|∫ φ(g) dλ - (φ(T)λ(S^1) - ∫ φ'(t) λ({g < t}) dt)| for g = d(x0, ·)"""
        return self.fubini.residual(measure, x0, PhiKind(phi), T)

    def uniqueness_check(
        self,
        f: CircleFunction,
        lam: SignedMeasure,
        eta: SignedMeasure,
        tol: float = 1e-9,
    ) -> bool:
        """
        Whether two representers of f share their antisymmetric part

        Raises:
            NotARepresentation: if either measure fails to reproduce f within tol
        """
        for label, measure in (("lambda", lam), ("eta", eta)):
            residual = self.reconstruction_residual(measure, f)
            if residual > tol:
                logger.error(f"{label} does not represent f (residual {residual:.3e})")
                raise NotARepresentation(
                    f"{label} does not represent f: residual {residual:.3e}",
                    {"measure": label, "residual": residual},
                )
        return lam.antisymmetric_part().agrees_with(eta.antisymmetric_part(), tol)
