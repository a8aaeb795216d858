"""Piecewise-constant potential landscapes and linear symmetry transforms.

A landscape is a finite list of constant-value segments (left-closed,
right-open) and is zero elsewhere.  Linear maps F(x) = sigma*x + rho with
sigma = +/-1 (translation, parity) act on landscapes; equality and
local-symmetry queries are decided exactly from the segment structure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PotentialProfile",
    "SymmetryTransform",
    "SymmetryDomain",
    "transform_profile",
    "find_equality_domain",
    "check_local_symmetry",
]


@dataclass(frozen=True)
class PotentialProfile:
    """V(x) as ordered, non-overlapping constant segments; 0 outside."""

    segments: tuple[tuple[float, float, float], ...] = ()

    def __post_init__(self):
        segs = tuple((float(a), float(b), float(v)) for a, b, v in self.segments)
        object.__setattr__(self, "segments", segs)
        for a, b, _ in segs:
            if not a < b:
                raise ValueError("segment requires left_edge < right_edge")
        for (_, b1, _), (a2, _, _) in zip(segs[:-1], segs[1:]):
            if b1 > a2:
                raise ValueError("segments must be sorted and non-overlapping")

    @classmethod
    def from_segments(cls, segments) -> "PotentialProfile":
        return cls(tuple(sorted((float(a), float(b), float(v)) for a, b, v in segments)))

    @property
    def breakpoints(self) -> tuple[float, ...]:
        pts = sorted({e for a, b, _ in self.segments for e in (a, b)})
        return tuple(pts)

    def support(self) -> tuple[float, float] | None:
        """Hull of the (compact) support, or None for the free particle."""
        if not self.segments:
            return None
        return self.segments[0][0], self.segments[-1][1]

    def evaluate(self, x: float) -> float:
        """V(x); segments are left-closed, right-open."""
        for a, b, v in self.segments:
            if a <= x < b:
                return v
        return 0.0

    def sample(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        out = np.zeros(xs.shape)
        for a, b, v in self.segments:
            out[(xs >= a) & (xs < b)] = v
        return out


@dataclass(frozen=True)
class SymmetryTransform:
    """Linear coordinate map F(x) = sigma*x + rho with sigma = +/-1."""

    sigma: int
    rho: float = 0.0

    def __post_init__(self):
        if self.sigma not in (1, -1):
            raise ValueError("sigma must be +1 or -1")

    def __call__(self, x):
        return self.sigma * x + self.rho

    def inverse(self) -> "SymmetryTransform":
        # x = sigma*(y - rho) for sigma=+1; y -> sigma*y - sigma*rho in general
        return SymmetryTransform(self.sigma, -self.sigma * self.rho)


@dataclass(frozen=True)
class SymmetryDomain:
    """A finite or half-infinite interval [a, b] of coordinate space."""

    a: float
    b: float

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError("domain requires a < b")

    def contains(self, x: float) -> bool:
        return self.a <= x <= self.b


def transform_profile(profile: PotentialProfile, f: SymmetryTransform) -> PotentialProfile:
    """Profile W with W(x) = V(F(x)).

    For sigma = -1 the half-open orientation of each mapped segment flips;
    the image is re-expressed left-closed (the difference is a null set of
    single points).
    """
    segs = []
    for a, b, v in profile.segments:
        if f.sigma == 1:
            segs.append((a - f.rho, b - f.rho, v))
        else:
            segs.append((f.rho - b, f.rho - a, v))
    return PotentialProfile.from_segments(segs)


def _elementary_intervals(edges: list[float], lo: float, hi: float):
    """(left, right, representative point) for each cell of a partition."""
    pts = [lo] + [e for e in edges if lo < e < hi] + [hi]
    for left, right in zip(pts[:-1], pts[1:]):
        if math.isinf(left) and math.isinf(right):
            rep = 0.0
        elif math.isinf(left):
            rep = right - 1.0
        elif math.isinf(right):
            rep = left + 1.0
        else:
            rep = 0.5 * (left + right)
        yield left, right, rep


def find_equality_domain(
    p1: PotentialProfile,
    p2: PotentialProfile,
    within: tuple[float, float] | None = None,
) -> list[SymmetryDomain]:
    """Maximal intervals on which the two landscapes agree pointwise.

    Computed exactly from the merged segment structure.  `within` clips the
    result (typically to the configured grid range); by default unbounded
    ends are reported with infinite endpoints.
    """
    lo, hi = within if within is not None else (-math.inf, math.inf)
    edges = sorted(set(p1.breakpoints) | set(p2.breakpoints))
    merged: list[list[float]] = []
    for left, right, rep in _elementary_intervals(edges, lo, hi):
        if p1.evaluate(rep) == p2.evaluate(rep):
            if merged and merged[-1][1] == left:
                merged[-1][1] = right
            else:
                merged.append([left, right])
    return [SymmetryDomain(a, b) for a, b in merged]


def check_local_symmetry(
    profile: PotentialProfile,
    f: SymmetryTransform,
    d: SymmetryDomain,
    tol: float = 0.0,
) -> bool:
    """True iff |V(F(x)) - V(x)| <= tol throughout d (exact segment compare)."""
    transformed = transform_profile(profile, f)
    edges = sorted(set(profile.breakpoints) | set(transformed.breakpoints))
    for _, _, rep in _elementary_intervals(edges, d.a, d.b):
        if abs(transformed.evaluate(rep) - profile.evaluate(rep)) > tol:
            return False
    return True
