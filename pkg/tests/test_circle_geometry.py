"""
Circle Geometry Tests
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from pydantic import ValidationError

from src.circle_geometry import (
    PI,
    TWO_PI,
    antipode,
    arc_contains,
    bin_midpoints,
    circle_distance,
    covering_map,
    normalize_angle,
    sorted_unique_angles,
    sphere_distance,
    uniform_grid,
    zigzag_primitive,
)
from src.exceptions import InvalidInput
from src.models import Arc, HemispherePoint, SpherePoint

angles = st.floats(min_value=-50.0, max_value=50.0, allow_nan=False, allow_infinity=False)


class TestNormalizeAngle:
    """Test cases for the fundamental domain [-π, π)"""

    def test_examples(self):
        """Known representatives"""
        assert normalize_angle(0.0) == 0.0
        assert normalize_angle(1.5 * PI) == pytest.approx(-0.5 * PI, abs=1e-15)
        assert normalize_angle(PI) == -PI
        assert normalize_angle(-PI) == -PI
        assert normalize_angle(-1e-20) == -1e-20

    def test_array_input(self):
        """Arrays are normalized elementwise and keep their shape"""
        out = normalize_angle(np.array([[0.0, TWO_PI], [3 * PI, -3 * PI]]))
        assert out.shape == (2, 2)
        assert np.all((out >= -PI) & (out < PI))
        assert np.allclose(circle_distance(out, np.array([[0.0, 0.0], [PI, PI]])), 0.0)

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_non_finite_rejected(self, bad):
        """NaN and infinities raise InvalidInput"""
        with pytest.raises(InvalidInput):
            normalize_angle(bad)

    @given(angles)
    @settings(deadline=None)
    def test_range_and_idempotence(self, t):
        """Result lies in [-π, π) and normalizing twice changes nothing"""
        r = normalize_angle(t)
        assert -PI <= r < PI
        assert normalize_angle(r) == r

    @given(angles)
    @settings(deadline=None)
    def test_antipode_is_involution(self, t):
        """T(T(x)) = x up to rounding"""
        assert circle_distance(antipode(antipode(t)), t) < 1e-12


class TestCircleDistance:
    """Test cases for the arc-length metric"""

    def test_examples(self):
        """Shorter arc, wrapping around -π"""
        assert circle_distance(0.0, PI / 2) == pytest.approx(PI / 2)
        assert circle_distance(-3.0, 3.0) == pytest.approx(TWO_PI - 6.0)
        assert circle_distance(0.0, PI) == pytest.approx(PI)
        assert circle_distance(1.0, 1.0) == 0.0

    @given(angles, angles, angles)
    @settings(deadline=None)
    def test_metric_axioms(self, a, b, c):
        """Symmetry, range [0, π] and the triangle inequality"""
        ab = circle_distance(a, b)
        assert ab == pytest.approx(circle_distance(b, a), abs=1e-12)
        assert 0.0 <= ab <= PI
        assert ab <= circle_distance(a, c) + circle_distance(c, b) + 1e-12

    def test_broadcasting(self):
        """Vectorized over numpy arrays"""
        d = circle_distance(np.zeros(3), np.array([0.5, -0.5, PI]))
        assert np.allclose(d, [0.5, 0.5, PI])


class TestSphereDistance:
    """Test cases for d_{S^2}"""

    def test_equator_matches_circle_distance(self):
        """q(S^1) sits isometrically on the equator"""
        for a, b in [(0.0, 1.0), (-2.5, 2.5), (0.3, 0.3 + PI / 2)]:
            d = sphere_distance(SpherePoint.on_equator(a), SpherePoint.on_equator(b))
            assert d == pytest.approx(circle_distance(a, b), abs=1e-7)

    def test_covering_map_points(self):
        """covering_map gives unit vectors in the equatorial plane"""
        v = covering_map(np.array([0.0, PI / 2]))
        assert np.allclose(v, [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
        assert sphere_distance(v[0], v[1]) == pytest.approx(PI / 2)

    def test_non_unit_vector_rejected(self):
        """Vectors off the unit sphere raise InvalidInput"""
        with pytest.raises(InvalidInput):
            sphere_distance(np.array([1.0, 1.0, 0.0]), np.array([1.0, 0.0, 0.0]))

    def test_sphere_point_validation(self):
        """SpherePoint checks its norm"""
        with pytest.raises(ValidationError):
            SpherePoint(coordinates=(0.5, 0.5, 0.5))

    def test_hemisphere_point(self):
        """Polar coordinates map onto the upper hemisphere"""
        north = HemispherePoint(theta=0.0, alpha=0.0)
        assert north.to_sphere_point().coordinates == pytest.approx((0.0, 0.0, 1.0))
        edge = HemispherePoint(theta=1.0, alpha=PI / 2)
        assert edge.on_boundary
        assert sphere_distance(north.to_sphere_point(), edge.to_sphere_point()) == pytest.approx(PI / 2)
        assert circle_distance(HemispherePoint(theta=3 * PI, alpha=0.2).theta, PI) < 1e-12
        with pytest.raises(ValidationError):
            HemispherePoint(theta=0.0, alpha=2.0)


class TestArcs:
    """Test cases for half-open arcs"""

    def test_half_open(self):
        """The start belongs to the arc, the end does not"""
        arc = Arc(start=0.0, length=1.0)
        assert arc_contains(arc, 0.0)
        assert arc_contains(arc, 0.999)
        assert not arc_contains(arc, 1.0)
        assert not arc_contains(arc, -0.1)

    def test_wrapping_arc(self):
        """Arcs may cross -π"""
        arc = Arc(start=3.0, length=1.0)
        assert arc_contains(arc, -PI)
        assert arc_contains(arc, 3.5 - TWO_PI)
        assert not arc_contains(arc, 2.9)

    def test_full_circle(self):
        """Length 2π covers everything"""
        arc = Arc(start=0.4, length=TWO_PI)
        assert np.all(arc_contains(arc, np.linspace(-PI, PI, 11)))

    def test_antipodal_arc(self):
        """antipodal() moves the start by π"""
        arc = Arc(start=0.5, length=PI).antipodal()
        assert arc.start == pytest.approx(0.5 - PI)
        assert arc.length == PI


class TestGridsAndPrimitives:
    """Test cases for grids and the zigzag primitive"""

    def test_grids(self):
        """Uniform grid and bin midpoints interleave"""
        g = uniform_grid(8)
        m = bin_midpoints(8)
        assert g[0] == -PI
        assert np.allclose(np.diff(g), TWO_PI / 8)
        assert np.allclose(m - g, PI / 8)

    def test_sorted_unique_angles(self):
        """Duplicates within tol collapse, including across -π"""
        out = sorted_unique_angles([0.5, 0.5 + 1e-14, -PI, PI - 1e-14, 1.0], tol=1e-12)
        assert np.allclose(out, [-PI, 0.5, 1.0])

    def test_zigzag_primitive_period(self):
        """Z(u + 2π) = Z(u) + π^2 and ∫_{-π}^{π}|u| du = π^2"""
        u = np.linspace(-7.0, 7.0, 29)
        assert np.allclose(zigzag_primitive(u + TWO_PI), zigzag_primitive(u) + PI * PI)
        assert zigzag_primitive(PI) - zigzag_primitive(-PI) == pytest.approx(PI * PI)

    def test_zigzag_primitive_integrates_distance(self):
        """Z(b - x) - Z(a - x) is the integral of d(x, ·) over [a, b]"""
        x, a, b = 0.7, -2.0, 2.5
        ys = np.linspace(a, b, 200001)
        numeric = np.trapz(circle_distance(x, ys), ys)
        exact = zigzag_primitive(b - x) - zigzag_primitive(a - x)
        assert exact == pytest.approx(numeric, abs=1e-8)
