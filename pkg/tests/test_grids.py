"""Grids, fields, finite differences and the Numerov integrator."""
import numpy as np
import pytest

from qcurrents import ComplexField, Grid, PotentialProfile, numerov_integrate
from qcurrents.grids import derivative_piecewise, derivative_values


class SmoothPotential:
    """Gaussian bump; sample-only object for the integrator tests."""

    def sample(self, xs):
        xs = np.asarray(xs, dtype=float)
        return 0.5 * np.exp(-(xs**2))


class TestGrid:
    def test_points_and_spacing(self):
        g = Grid(-1.0, 1.0, 5)
        assert g.dx == pytest.approx(0.5)
        np.testing.assert_allclose(g.points, [-1.0, -0.5, 0.0, 0.5, 1.0])

    def test_index_of_clips_and_rounds(self):
        g = Grid(0.0, 1.0, 11)
        assert g.index_of(0.51) == 5
        assert g.index_of(-3.0) == 0
        assert g.index_of(3.0) == 10

    def test_invalid_bounds(self):
        with pytest.raises(ValueError, match="x_min < x_max"):
            Grid(1.0, 1.0, 5)
        with pytest.raises(ValueError, match="n_points >= 3"):
            Grid(0.0, 1.0, 2)


class TestComplexField:
    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="length must match grid"):
            ComplexField(Grid(0.0, 1.0, 5), np.zeros(4))

    def test_non_finite_rejected(self):
        vals = np.zeros(5, dtype=complex)
        vals[2] = np.nan
        with pytest.raises(ValueError, match="non-finite"):
            ComplexField(Grid(0.0, 1.0, 5), vals)


class TestDerivative:
    def test_fourth_order_convergence(self):
        errs = []
        for n in (101, 201):
            g = Grid(0.0, 1.0, n)
            d = derivative_values(np.sin(3 * g.points), g.dx)
            errs.append(np.max(np.abs(d - 3 * np.cos(3 * g.points))))
        ratio = errs[0] / errs[1]
        assert 14.0 < ratio < 18.0

    def test_too_few_points(self):
        with pytest.raises(ValueError, match="insufficient grid resolution"):
            derivative_values(np.zeros(4), 0.1)

    def test_piecewise_respects_kinks(self):
        g = Grid(-1.0, 1.0, 201)
        d = derivative_piecewise(np.abs(g.points), g, {0.0})
        expected = np.where(g.points < 0, -1.0, 1.0)
        np.testing.assert_allclose(d.real, expected, atol=1e-12)

    def test_piecewise_merges_short_blocks(self):
        g = Grid(0.0, 1.0, 101)
        # split 1 grid point from the edge: block too short, must merge
        d = derivative_piecewise(g.points**2, g, {g.points[1]})
        np.testing.assert_allclose(d.real, 2 * g.points, atol=1e-10)


class TestNumerov:
    def test_plane_wave(self):
        free = PotentialProfile.from_segments([])
        g = Grid(0.0, 10.0, 10001)
        y = numerov_integrate(free, 0.5, g, 1.0, 1j)
        np.testing.assert_allclose(y.values, np.exp(1j * g.points),
                                   atol=1e-9, rtol=0)

    def test_wronskian_conserved_smooth(self):
        g = Grid(-5.0, 5.0, 10001)
        v = SmoothPotential()
        y1 = numerov_integrate(v, 1.2, g, 1.0, 0.3)
        y2 = numerov_integrate(v, 1.2, g, 0.0, 1.0)
        d1 = derivative_values(y1.values, g.dx)
        d2 = derivative_values(y2.values, g.dx)
        w = y1.values * d2 - y2.values * d1
        assert np.max(np.abs(w - np.mean(w))) / abs(np.mean(w)) < 1e-8

    def test_overflow_in_deep_barrier(self):
        deep = PotentialProfile.from_segments([(0.0, 40.0, 50.0)])
        g = Grid(0.0, 40.0, 4001)
        with pytest.raises(OverflowError, match="integration overflow"):
            numerov_integrate(deep, 1.0, g, 1.0, 0.0)
