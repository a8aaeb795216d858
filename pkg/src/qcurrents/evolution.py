"""Crank-Nicolson co-evolution of wave fields under different landscapes and
the discrete residual of the generalized balance law with source term.

Dirichlet boundaries on a large box; packets must stay clear of the walls,
which keeps the boundary choice immaterial to the reported residuals.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .grids import ComplexField, Grid, derivative_piecewise
from .potentials import PotentialProfile

__all__ = [
    "EvolutionState",
    "ResidualReport",
    "initial_gaussian",
    "propagate",
    "continuity_residual",
    "pairwise_residual_suite",
]


def initial_gaussian(grid: Grid, x0: float, k0: float, width: float) -> ComplexField:
    """Unit-norm Gaussian packet (pi w^2)^(-1/4) exp(-(x-x0)^2/(2w^2) + i k0 x)."""
    if width <= 0:
        raise ValueError("width must be positive")
    x = grid.points
    envelope_edge = max(
        np.exp(-((grid.x_min - x0) ** 2) / (2 * width**2)),
        np.exp(-((grid.x_max - x0) ** 2) / (2 * width**2)),
    )
    if envelope_edge > 1e-12:
        raise ValueError("packet touching boundary")
    psi = (np.pi * width**2) ** (-0.25) * np.exp(
        -((x - x0) ** 2) / (2 * width**2) + 1j * k0 * x
    )
    return ComplexField(grid, psi)


@dataclass(eq=False)
class EvolutionState:
    """A wave field at a given time, evolving under a fixed landscape."""

    field: ComplexField
    time: float
    potential: PotentialProfile
    dt: float

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("dt must be positive")


def norm(field: ComplexField) -> float:
    """Trapezoid-rule L2 norm of the field."""
    return float(np.sqrt(np.trapezoid(np.abs(field.values) ** 2, dx=field.grid.dx)))


def _cn_matrices(grid: Grid, potential: PotentialProfile, dt: float):
    """Banded (ab) forms of I +/- i dt/2 H for the interior points."""
    n = grid.n_points - 2
    x = grid.points[1:-1]
    inv2 = 1.0 / (2.0 * grid.dx**2)
    diag = 2.0 * inv2 + potential.sample(x)
    off = -inv2
    z = 0.5j * dt
    ab = np.zeros((3, n), dtype=complex)
    ab[0, 1:] = z * off
    ab[1, :] = 1.0 + z * diag
    ab[2, :-1] = z * off
    bb = np.zeros((3, n), dtype=complex)
    bb[0, 1:] = -z * off
    bb[1, :] = 1.0 - z * diag
    bb[2, :-1] = -z * off
    return ab, bb


def _apply_tridiag(bb: np.ndarray, psi: np.ndarray) -> np.ndarray:
    out = bb[1] * psi
    out[:-1] += bb[0, 1:] * psi[1:]
    out[1:] += bb[2, :-1] * psi[:-1]
    return out


def propagate(state: EvolutionState, steps: int) -> EvolutionState:
    """Advance the state by `steps` Crank-Nicolson steps (unitary, Dirichlet)."""
    grid = state.field.grid
    ab, bb = _cn_matrices(grid, state.potential, state.dt)
    psi = state.field.values[1:-1].copy()
    norm0 = np.sqrt(np.sum(np.abs(psi) ** 2))
    for _ in range(steps):
        psi = solve_banded((1, 1), ab, _apply_tridiag(bb, psi))
    drift = abs(np.sqrt(np.sum(np.abs(psi) ** 2)) / max(norm0, 1e-300) - 1.0)
    if drift > 1e-6:
        raise RuntimeError("norm drift exceeds stability threshold")
    full = np.zeros(grid.n_points, dtype=complex)
    full[1:-1] = psi
    return EvolutionState(
        field=ComplexField(grid, full),
        time=state.time + steps * state.dt,
        potential=state.potential,
        dt=state.dt,
    )


@dataclass(eq=False)
class ResidualReport:
    """Norms of the pointwise imbalance of the two-field balance law."""

    grid: Grid
    residual_field: np.ndarray
    l2_norm: float
    linf_norm: float
    re_part_norm: float
    im_part_norm: float


def _two_field_current(psi1, psi2, grid, splits):
    d1 = derivative_piecewise(psi1, grid, splits)
    d2 = derivative_piecewise(psi2, grid, splits)
    return (np.conj(psi2) * d1 - psi1 * np.conj(d2)) / 2j


def continuity_residual(
    state1: EvolutionState,
    state1_next: EvolutionState,
    state2: EvolutionState,
    state2_next: EvolutionState,
) -> ResidualReport:
    """Discrete residual of d/dt(psi1 psi2*) + d/dx J - i (V2 - V1) psi1 psi2*.

    Midpoint time difference; spatial terms averaged over the two time
    levels, so the check is second order in (dx, dt) and independent of the
    propagator's own update rule.
    """
    grid = state1.field.grid
    if state2.field.grid != grid or state1_next.field.grid != grid or state2_next.field.grid != grid:
        raise ValueError("states must share a grid")
    dts = {state1.dt, state1_next.dt, state2.dt, state2_next.dt}
    if max(dts) - min(dts) > 1e-15:
        raise ValueError("states must share a time step")
    dt = state1.dt
    splits = set(state1.potential.breakpoints) | set(state2.potential.breakpoints)
    x = grid.points
    dv = state2.potential.sample(x) - state1.potential.sample(x)

    p_now = state1.field.values * np.conj(state2.field.values)
    p_next = state1_next.field.values * np.conj(state2_next.field.values)
    pdot = (p_next - p_now) / dt

    j_now = _two_field_current(state1.field.values, state2.field.values, grid, splits)
    j_next = _two_field_current(state1_next.field.values, state2_next.field.values, grid, splits)
    dj = 0.5 * (
        derivative_piecewise(j_now, grid, splits)
        + derivative_piecewise(j_next, grid, splits)
    )
    source = 1j * dv * 0.5 * (p_now + p_next)

    r = pdot + dj - source
    dx = grid.dx
    return ResidualReport(
        grid=grid,
        residual_field=r,
        l2_norm=float(np.sqrt(np.sum(np.abs(r) ** 2) * dx)),
        linf_norm=float(np.max(np.abs(r))),
        re_part_norm=float(np.sqrt(np.sum(r.real**2) * dx)),
        im_part_norm=float(np.sqrt(np.sum(r.imag**2) * dx)),
    )


def pairwise_residual_suite(
    potentials: list[PotentialProfile],
    initial: ComplexField,
    dt: float,
    steps: int,
) -> list[ResidualReport]:
    """Evolve one channel per landscape from a shared packet and report the
    balance-law residual for every pair (i, j) with i < j."""
    if len(potentials) < 2:
        raise ValueError("suite requires at least two landscapes")
    finals = []
    for idx, pot in enumerate(potentials):
        try:
            state = EvolutionState(initial, 0.0, pot, dt)
            at_t = propagate(state, steps)
            at_t_next = propagate(at_t, 1)
        except (RuntimeError, ValueError) as exc:
            raise RuntimeError(f"propagation failed in channel {idx}: {exc}") from exc
        finals.append((at_t, at_t_next))
    reports = []
    for i in range(len(potentials)):
        for j in range(i + 1, len(potentials)):
            reports.append(
                continuity_residual(finals[i][0], finals[i][1], finals[j][0], finals[j][1])
            )
    return reports
