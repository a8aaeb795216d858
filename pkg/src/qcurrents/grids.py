"""Uniform grids, sampled complex fields and shared numerical primitives.

Everything downstream (scattering, currents, time evolution) works on a
uniform grid; fields are plain complex numpy arrays wrapped together with
their grid.  The first-derivative operator is 4th order (centered stencil in
the interior, one-sided 5-point stencils at the two points on each edge) so
that current-constancy checks are limited by solver error, not by
differentiation error.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "Grid",
    "ComplexField",
    "derivative",
    "derivative_values",
    "derivative_piecewise",
    "numerov_integrate",
]

# 5-point, 4th-order first-derivative stencils (divided by dx at use site)
_EDGE0 = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0
_EDGE1 = np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / 12.0


@dataclass(frozen=True)
class Grid:
    """Uniform 1D grid on [x_min, x_max] with n_points points."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValueError("grid requires x_min < x_max")
        if self.n_points < 3:
            raise ValueError("grid requires n_points >= 3")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @cached_property
    def points(self) -> np.ndarray:
        x = np.linspace(self.x_min, self.x_max, self.n_points)
        x.flags.writeable = False
        return x

    def index_of(self, x: float) -> int:
        """Index of the grid point nearest to x."""
        i = int(round((x - self.x_min) / self.dx))
        return min(max(i, 0), self.n_points - 1)


@dataclass(frozen=True, eq=False)
class ComplexField:
    """A complex-valued field sampled on a grid (hbar = m = 1 units)."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        object.__setattr__(self, "values", values)
        if values.shape != (self.grid.n_points,):
            raise ValueError("field length must match grid")
        if not np.all(np.isfinite(values)):
            raise ValueError("field contains non-finite values")


def derivative_values(values: np.ndarray, dx: float) -> np.ndarray:
    """4th-order first derivative of a sampled array."""
    values = np.asarray(values)
    n = len(values)
    if n < 5:
        raise ValueError("insufficient grid resolution")
    out = np.empty(n, dtype=complex)
    out[2:-2] = (values[:-4] - 8 * values[1:-3] + 8 * values[3:-1] - values[4:]) / (12 * dx)
    out[0] = _EDGE0 @ values[:5] / dx
    out[1] = _EDGE1 @ values[:5] / dx
    out[-1] = -(_EDGE0 @ values[-1:-6:-1]) / dx
    out[-2] = -(_EDGE1 @ values[-1:-6:-1]) / dx
    return out


def derivative(field: ComplexField) -> ComplexField:
    """4th-order finite-difference derivative of a sampled field."""
    return ComplexField(field.grid, derivative_values(field.values, field.grid.dx))


def derivative_piecewise(values: np.ndarray, grid: Grid, split_points) -> np.ndarray:
    """Derivative applied separately on blocks delimited by split_points.

    Used when the sampled function is smooth between known breakpoints but
    has kinks there (e.g. at edges of piecewise-constant potentials).  A
    split point lying on a grid point starts a new block at that index, so
    stencils never straddle a kink.  Blocks shorter than the 5-point stencil
    are merged with their left neighbour.
    """
    idx = sorted(
        {
            grid.index_of(x)
            for x in split_points
            if grid.x_min < x < grid.x_max
            and abs(x - grid.points[grid.index_of(x)]) < 1e-9 * max(1.0, abs(x))
        }
    )
    bounds = [0] + [i for i in idx if 0 < i < grid.n_points] + [grid.n_points]
    # merge blocks too short for the 5-point stencil
    blocks: list[list[int]] = []
    for start, end in zip(bounds[:-1], bounds[1:]):
        if blocks and (end - start < 5 or blocks[-1][1] - blocks[-1][0] < 5):
            blocks[-1][1] = end
        else:
            blocks.append([start, end])
    if len(blocks) > 1 and blocks[-1][1] - blocks[-1][0] < 5:
        blocks[-2][1] = blocks[-1][1]
        blocks.pop()
    out = np.empty(grid.n_points, dtype=complex)
    for start, end in blocks:
        out[start:end] = derivative_values(values[start:end], grid.dx)
    return out


def numerov_integrate(
    potential,
    energy: float,
    grid: Grid,
    initial_value: complex,
    initial_derivative: complex,
) -> ComplexField:
    """Integrate -(1/2) y'' + V y = E y from x_min with given initial data.

    Numerov recursion for y'' + f y = 0 with f = 2 (E - V); global error
    O(dx^4).  The second point is seeded by a 4th-order Taylor step treating
    f as locally constant (exact for piecewise-constant potentials).
    """
    if grid.n_points < 5:
        raise ValueError("insufficient grid resolution")
    x = grid.points
    dx = grid.dx
    f = 2.0 * (energy - potential.sample(x))

    y = np.empty(grid.n_points, dtype=complex)
    y[0] = initial_value
    f0 = f[0]
    # Taylor start: y'' = -f y, y''' = -f y', y'''' = f^2 y for constant f
    y[1] = (
        initial_value
        + dx * initial_derivative
        - 0.5 * dx**2 * f0 * initial_value
        - dx**3 / 6.0 * f0 * initial_derivative
        + dx**4 / 24.0 * f0**2 * initial_value
    )

    w = 1.0 + dx**2 / 12.0 * f
    u = 2.0 - 10.0 * dx**2 / 12.0 * f
    for n in range(1, grid.n_points - 1):
        y[n + 1] = (u[n] * y[n] - w[n - 1] * y[n - 1]) / w[n + 1]
        if abs(y[n + 1].real) > 1e140 or abs(y[n + 1].imag) > 1e140:
            raise OverflowError("integration overflow")
    if not np.all(np.isfinite(y)):
        raise OverflowError("integration overflow")
    return ComplexField(grid, y)
