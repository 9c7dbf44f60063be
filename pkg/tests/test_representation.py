"""
Representation Engine Tests
"""

import numpy as np
import pytest

from src.circle_geometry import PI, circle_distance, uniform_grid
from src.engines import CreutzEmbedding, RepresentationEngine
from src.exceptions import (
    DerivativeUnavailable,
    InvalidInput,
    NegativeMass,
    NotARepresentation,
    NotAntipodal,
    NotRepresentableByMeasure,
)
from src.models import Atom, HemispherePoint, PLFunction, SignedMeasure, SmoothFunction
from src.tools import FunctionAnalyzer, PhiKind
from src.tools.fixtures import (
    constant,
    dirac_distance,
    function_from_atomic_measure,
    interpolation,
    random_antisymmetric_measure,
    random_pl_with_truth,
    random_symmetric_measure,
    tripod,
)


def cosine_bump(a: float, with_second: bool = True) -> SmoothFunction:
    """π/2 + a·cos t, represented by λ = -(a/4)·cos t plus H^1"""
    return SmoothFunction(
        name=f"cos({a})",
        eval_fn=lambda t: PI / 2 + a * np.cos(t),
        d1_fn=lambda t: -a * np.sin(t),
        d2_fn=(lambda t: -a * np.cos(t)) if with_second else None,
    )


@pytest.fixture
def engine():
    """Fixture for RepresentationEngine"""
    return RepresentationEngine()


class TestForwardRoundTrip:
    """Random valid PL functions give back their generating measure"""

    @pytest.mark.parametrize("seed", range(200))
    def test_random_pl(self, engine, seed):
        """Residual <= 1e-9 and λ agrees with the ground truth"""
        k = 2 + seed % 19
        f, truth, C = random_pl_with_truth(seed, k)
        assert len(f.breakpoints) <= k
        rep = engine.represent_signed(f)
        assert rep.residual <= 1e-9
        assert rep.C == pytest.approx(C, abs=1e-10)
        assert rep.lambda_.agrees_with(truth, 1e-9)


class TestReverseRoundTrip:
    """Functions built from antisymmetric measures satisfy (A) and (B)"""

    @pytest.mark.parametrize("seed", range(200))
    def test_measure_to_function(self, engine, seed):
        """f_{λ + C·H^1} passes the conditions and recovers (λ, C)"""
        rng = np.random.default_rng(10_000 + seed)
        lam = random_antisymmetric_measure(rng, int(rng.integers(1, 9)))
        C = float(rng.uniform(-2.0, 2.0))
        f = function_from_atomic_measure(lam, C)

        report = engine.analyzer.check_conditions(f)
        assert report.condition_a and report.condition_b
        assert report.defect <= 1e-10

        rep = engine.represent_signed(f)
        assert rep.C == pytest.approx(C, abs=1e-10)
        assert rep.lambda_.agrees_with(lam, 1e-9)

    @pytest.mark.parametrize("seed", range(20))
    def test_lipschitz_and_variation_bounds(self, seed):
        """Lip(f_λ̄) <= |λ|(S^1) and TV(∂₋f_λ̄) = 4|λ|(S^1)"""
        rng = np.random.default_rng(seed)
        lam = random_antisymmetric_measure(rng, 5)
        f = function_from_atomic_measure(lam, 1.0)
        analyzer = FunctionAnalyzer()
        lip, exact = analyzer.lipschitz_constant(f)
        assert exact
        assert lip <= lam.tv_norm() + 1e-12
        assert analyzer.tv_left_derivative(f) == pytest.approx(4.0 * lam.tv_norm(), abs=1e-9)


class TestMeasureGate:
    """Non-negative representations exist exactly when TV(∂₋f) <= 4C"""

    def test_dirac_distance_gives_dirac(self, engine):
        """d_p is represented by δ_p"""
        rep = engine.represent_nonneg(dirac_distance(0.7))
        assert len(rep.mubar.atoms) == 1
        assert rep.mubar.atoms[0].angle == pytest.approx(0.7)
        assert rep.mubar.atoms[0].weight == pytest.approx(1.0, abs=1e-10)
        assert np.all(np.abs(rep.mubar.density.levels) <= 1e-12)

    def test_constant_gives_uniform(self, engine):
        """π/2 is represented by H^1"""
        rep = engine.represent_nonneg(constant(PI / 2))
        assert rep.mubar.agrees_with(SignedMeasure.uniform(1.0), 1e-12)
        assert rep.tv == 0.0

    def test_interpolation_at_zero(self, engine):
        """f_0 = d_p and tiny s inside the tolerance window pass"""
        for s in (0.0, 1e-12):
            rep = engine.represent_nonneg(interpolation(s))
            assert rep.mubar.is_nonnegative()
            assert rep.mubar.total_mass() == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("s", [1e-6, 0.01, 0.25, 0.5, 1.0])
    def test_interpolation_rejected(self, engine, s):
        """Any s clearly above 0 is rejected with both numbers"""
        with pytest.raises(NotRepresentableByMeasure) as info:
            engine.represent_nonneg(interpolation(s))
        assert info.value.tv == pytest.approx(4.0 + 8.0 * s, abs=1e-9)
        assert info.value.four_c == pytest.approx(4.0, abs=1e-12)
        assert info.value.to_dict()["details"]["fourC"] == pytest.approx(4.0, abs=1e-12)

    def test_tripod_rejected(self, engine):
        """TV 12 against 4C = 4"""
        with pytest.raises(NotRepresentableByMeasure) as info:
            engine.represent_nonneg(tripod())
        assert info.value.tv == pytest.approx(12.0)
        assert info.value.four_c == pytest.approx(4.0)
        assert info.value.exit_code == 2

    def test_negative_mass(self, engine):
        """A negative constant has no non-negative representer"""
        with pytest.raises(NegativeMass):
            engine.represent_nonneg(constant(-1.0))

    @pytest.mark.parametrize("seed", range(10))
    def test_ehull_style_measures(self, engine, seed):
        """Small antisymmetric λ plus H^1 pass the gate with a non-negative mubar of mass C"""
        rng = np.random.default_rng(seed)
        lam = random_antisymmetric_measure(rng, 4)
        lam = lam.scaled(0.9 / lam.tv_norm())
        f = function_from_atomic_measure(lam, 1.0)
        rep = engine.represent_nonneg(f)
        assert rep.mubar.is_nonnegative()
        assert rep.mubar.total_mass() == pytest.approx(1.0, abs=1e-10)
        assert rep.mu.total_mass() == pytest.approx(rep.tv / 4.0, abs=1e-10)
        assert rep.residual <= 1e-9


class TestUniqueness:
    """Representers of the same f share their antisymmetric part"""

    @pytest.mark.parametrize("trial", range(100))
    def test_adding_symmetric_measure(self, engine, trial):
        """λ̄ + η represents the same f and has the same antisymmetric part"""
        rng = np.random.default_rng(50_000 + trial)
        f, lam, C = random_pl_with_truth(trial, 2 + trial % 12)
        lam_bar = lam + SignedMeasure.uniform(C)
        eta = random_symmetric_measure(rng, int(rng.integers(1, 6)))
        other = lam_bar + eta

        xs = uniform_grid(512)
        gap = np.max(np.abs(other.integrate_distance(xs) - lam_bar.integrate_distance(xs)))
        assert gap <= 1e-10
        assert engine.uniqueness_check(f, lam_bar, other, tol=1e-9)

    def test_non_representer_rejected(self, engine):
        """A measure that misses f raises NotARepresentation"""
        f = dirac_distance(0.0)
        good = SignedMeasure.dirac(0.0)
        with pytest.raises(NotARepresentation) as info:
            engine.uniqueness_check(f, good, SignedMeasure.dirac(0.3))
        assert info.value.details["measure"] == "eta"


class TestSmoothRepresentation:
    """Smooth functions go through the sampled Stieltjes density"""

    def test_cosine_signed(self, engine):
        """π/2 + a·cos t gives C = 1 and density -(a/4)·cos t"""
        rep = engine.represent_signed(cosine_bump(0.3))
        assert rep.C == pytest.approx(1.0, abs=1e-12)
        assert rep.tv == pytest.approx(1.2, rel=1e-8)
        assert rep.residual <= 1e-6
        mids = np.array([0.0, 1.0, 2.5])
        assert np.allclose(rep.lambda_.density_at(mids), -0.075 * np.cos(mids), atol=1e-4)

    def test_cosine_nonneg(self, engine):
        """TV 4a <= 4 allows a non-negative representer"""
        rep = engine.represent_nonneg(cosine_bump(0.3))
        assert rep.mubar.is_nonnegative()
        assert rep.mubar.total_mass() == pytest.approx(1.0, abs=1e-10)
        assert rep.residual <= 1e-6

    def test_missing_second_derivative(self, engine):
        """No h'' means no Stieltjes density"""
        with pytest.raises(DerivativeUnavailable):
            engine.represent_signed(cosine_bump(0.3, with_second=False))

    def test_odd_bin_count(self, engine):
        """Bins must pair up antipodally"""
        with pytest.raises(InvalidInput):
            engine.stieltjes_measure(cosine_bump(0.3), n=1023)

    def test_bin_masses_match_derivative_increments(self, engine):
        """Each bin carries ∂₋h(b_{i+1}) - ∂₋h(b_i)"""
        f = cosine_bump(0.3)
        n = 64
        edges = uniform_grid(n)
        measure = engine.stieltjes_measure(f, n)
        d1 = np.asarray(f.left_derivative(edges))
        masses = np.asarray(measure.density_at(edges + PI / n)) * (2.0 * PI / n)
        assert np.allclose(masses, np.roll(d1, -1) - d1, atol=1e-13)
        assert measure.total_mass() == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("gap", [1e-3, 1e-4])
    def test_narrow_peaks_keep_their_mass(self, engine, gap):
        """A peak of h'' far narrower than a bin still shows up in full"""
        p = HemispherePoint(theta=0.3, alpha=PI / 2 - gap)
        measure = engine.stieltjes_measure(CreutzEmbedding().profile(p), 64)
        assert measure.tv_norm() == pytest.approx(4.0 * np.sin(p.alpha), abs=1e-3)
        assert measure.total_mass() == pytest.approx(0.0, abs=1e-12)

    def test_kinks_stay_atoms(self, engine):
        """A declared kink is removed from its bin and kept as an atom"""
        def slope(t):
            offset = np.mod(np.asarray(t, dtype=float) - 0.1, 2.0 * PI)
            return np.where((offset > 0.0) & (offset <= PI), 1.0, -1.0)

        f = SmoothFunction(
            name="kinked d(0.1, ·)",
            eval_fn=lambda t: circle_distance(t, 0.1),
            d1_fn=slope,
            d2_fn=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
            kinks=[Atom(angle=0.1, weight=2.0), Atom(angle=0.1 - PI, weight=-2.0)],
        )
        measure = engine.stieltjes_measure(f, 16)
        order = np.argsort(measure.atom_angles)
        assert np.allclose(measure.atom_angles[order], [0.1 - PI, 0.1], atol=1e-12)
        assert np.allclose(measure.atom_weights[order], [-2.0, 2.0], atol=1e-12)
        assert np.all(np.abs(measure.density.levels) <= 1e-12)
        assert measure.tv_norm() == pytest.approx(4.0, abs=1e-12)

    @pytest.mark.parametrize("setting", [
        "stieltjes_bins", "reconstruction_tol_pl", "reconstruction_tol_smooth", "antisymmetry_tol",
    ])
    def test_zero_settings_rejected(self, setting):
        """An explicit zero is honoured and rejected, not replaced by the default"""
        with pytest.raises(InvalidInput):
            RepresentationEngine(**{setting: 0})

    def test_smooth_tolerance_scales_with_bins(self, engine):
        """The smooth residual allowance shrinks with the bin width"""
        f = cosine_bump(0.3)
        coarse = engine._reconstruction_tol(f, 1.2, 16)
        fine = engine._reconstruction_tol(f, 1.2, 4096)
        assert coarse == pytest.approx(engine.reconstruction_tol_smooth + (PI / 8) * 0.3)
        assert fine < coarse
        assert engine._reconstruction_tol(dirac_distance(0.0), 4.0, 16) == engine.reconstruction_tol_pl


class TestFailures:
    """Inputs that fail conditions (A) or (B)"""

    def test_not_antipodal(self, engine):
        """Condition (A) failure raises with C and the defect"""
        f = PLFunction(breakpoints=[-PI, -1.0, 0.5], values=[0.0, 2.0, 0.3])
        with pytest.raises(NotAntipodal) as info:
            engine.represent_signed(f)
        assert info.value.details["defect"] > 0.1
        assert info.value.exit_code == 2

    def test_stieltjes_measure_of_pl(self, engine):
        """Atoms at the breakpoints weighted by the slope jumps"""
        measure = engine.stieltjes_measure(dirac_distance(0.0))
        weights = dict(zip(measure.atom_angles.tolist(), measure.atom_weights.tolist()))
        assert weights[0.0] == pytest.approx(2.0)
        assert weights[-PI] == pytest.approx(-2.0)


class TestLeftDerivativeFormula:
    """∂₋f(x) = λ[T(x), x) - λ[x, T(x))"""

    @pytest.mark.parametrize("seed", range(20))
    def test_against_finite_differences(self, engine, seed):
        """Agreement with backward differences away from breakpoints"""
        f, _, _ = random_pl_with_truth(seed, 12)
        rep = engine.represent_signed(f)
        rng = np.random.default_rng(seed)
        xs = rng.uniform(-PI, PI, size=200)
        xs = xs[np.asarray(f.distance_to_breakpoints(xs)) > 1e-4][:50]
        h = 1e-6
        for x in xs:
            fd = (f.evaluate(x) - f.evaluate(x - h)) / h
            assert engine.left_derivative_of_representation(rep, x) == pytest.approx(fd, abs=1e-4)
            assert engine.left_derivative_of_representation(rep, x) == pytest.approx(
                f.left_derivative(x), abs=1e-9
            )

    def test_at_breakpoint(self, engine):
        """The formula picks the left slope at a kink"""
        rep = engine.represent_signed(dirac_distance(0.0))
        assert engine.left_derivative_of_representation(rep, 0.0) == pytest.approx(-1.0)
        assert engine.left_derivative_of_representation(rep, 1.0) == pytest.approx(1.0)

    def test_smooth(self, engine):
        """∂₋(a·cos) = -a·sin from the sampled density"""
        rep = engine.represent_signed(cosine_bump(0.3))
        for x in (-2.0, 0.4, 1.3):
            value = engine.left_derivative_of_representation(rep, x)
            assert value == pytest.approx(-0.3 * np.sin(x), abs=1e-5)


class TestFubiniIdentity:
    """Layer-cake formula for g = d(x0, ·)"""

    MEASURES = {
        "atoms": SignedMeasure.from_arrays([0.3, -2.0, 1.1, 2.9], [1.0, -0.5, 0.7, 0.25]),
        "uniform": SignedMeasure.uniform(1.3),
        "mixed": SignedMeasure.from_arrays(
            [0.3, -2.0], [1.0, -0.5], [-PI, -1.0, 0.5, 2.0], [0.1, -0.2, 0.3, 0.05]
        ),
    }

    @pytest.mark.parametrize("kind", [PhiKind.IDENTITY, PhiKind.SQUARE, PhiKind.COS])
    @pytest.mark.parametrize("name", ["atoms", "uniform", "mixed"])
    def test_residual(self, engine, kind, name):
        """Both sides agree within 1e-8"""
        measure = self.MEASURES[name]
        assert engine.fubini_identity_check(measure, 0.4, kind) <= 1e-8

    def test_constant_and_wider_window(self, engine):
        """φ = 1 is the total mass; T > π adds a flat tail"""
        measure = self.MEASURES["mixed"]
        assert engine.fubini_identity_check(measure, -1.2, PhiKind.CONSTANT) <= 1e-12
        assert engine.fubini_identity_check(measure, -1.2, PhiKind.IDENTITY, T=4.0) <= 1e-8

    def test_identity_matches_integrate_distance(self, engine):
        """φ = id on the left side is f_λ(x0)"""
        measure = self.MEASURES["mixed"]
        lhs = engine.fubini.lhs(measure, 0.4, PhiKind.IDENTITY)
        assert lhs == pytest.approx(measure.integrate_distance(0.4), abs=1e-12)

    def test_window_too_small(self, engine):
        """T < π cannot hold the range of g"""
        with pytest.raises(InvalidInput):
            engine.fubini_identity_check(self.MEASURES["atoms"], 0.0, PhiKind.SQUARE, T=1.0)
