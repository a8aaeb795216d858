"""SU(N) Cartan generators, ladder pairs, and the diagonal-potential
decomposition with its commutator identities.

The canonical expansion coefficient of the traceless diagonal part is the
orthogonal projection (1/2) Tr(M D_k); the closed-form alternative with the
un-averaged partial sum is also computed so the two can be compared.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SUNBasisSet",
    "DecompositionResult",
    "build_basis",
    "decompose",
    "commutator_check",
    "pair_count",
]


@dataclass(frozen=True, eq=False)
class SUNBasisSet:
    """Cartan generators D_k and hermitian ladder pairs for SU(N)."""

    n: int
    cartan: tuple[np.ndarray, ...]  # N-1 real diagonal traceless matrices
    ladders: dict  # (i, j) 1-based, i < j -> (lambda1, lambda2)


def build_basis(n: int) -> SUNBasisSet:
    """Generators of SU(n): D_k = sqrt(2/(k(k+1))) diag(1,..,1,-k,0,..)
    plus lambda1 = E + E^dag and lambda2 = i(E - E^dag) for each pair."""
    if n < 2:
        raise ValueError("SU(N) basis requires n >= 2")
    cartan = []
    for k in range(1, n):
        diag = np.zeros(n)
        diag[:k] = 1.0
        diag[k] = -k
        cartan.append(math.sqrt(2.0 / (k * (k + 1))) * np.diag(diag))
    ladders = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            e = np.zeros((n, n), dtype=complex)
            e[i - 1, j - 1] = 1.0
            ladders[(i, j)] = (e + e.conj().T, 1j * (e - e.conj().T))
    return SUNBasisSet(n, tuple(cartan), ladders)


@dataclass(frozen=True)
class DecompositionResult:
    """Split of diag(V_1,..,V_N) into identity part and Cartan directions."""

    mean_coefficient: float  # (1/N) sum V_i, the identity part
    c: tuple[float, ...]  # projection coefficients (1/2) Tr(M D_k)
    summed_c: tuple[float, ...]  # closed form with un-averaged partial sum
    reconstruction_error: float


def decompose(values) -> DecompositionResult:
    """Expand diag(Vbar - V_i) over the Cartan generators.

    The reconstruction sum(c_k D_k) must rebuild the traceless matrix M
    exactly; summed_c differs from c by the missing 1/(k+1) average in the
    partial sum and is kept for the discrepancy report.
    """
    v = np.asarray(values, dtype=float)
    n = len(v)
    if n < 2:
        raise ValueError("decomposition requires at least two potentials")
    basis = build_basis(n)
    mean = float(np.mean(v))
    m = np.diag(mean - v)
    c = tuple(float(0.5 * np.trace(m @ dk)) for dk in basis.cartan)
    summed_c = tuple(
        float(math.sqrt((k + 1) / (2.0 * k)) * (v[k] - np.sum(v[: k + 1])))
        for k in range(1, n)
    )
    recon = sum(ck * dk for ck, dk in zip(c, basis.cartan))
    err = float(np.max(np.abs(recon - m)))
    return DecompositionResult(mean, c, summed_c, err)


def commutator_check(values, i: int, j: int) -> tuple[float, float]:
    """Residuals of [O, lambda1] = i (V_i - V_j) lambda2 and
    [O, lambda2] = -i (V_i - V_j) lambda1, with O = sum c_k D_k."""
    v = np.asarray(values, dtype=float)
    n = len(v)
    if not (1 <= i < j <= n):
        raise ValueError("pair indices must satisfy 1 <= i < j <= N")
    basis = build_basis(n)
    dec = decompose(v)
    o = sum(ck * dk for ck, dk in zip(dec.c, basis.cartan)).astype(complex)
    lam1, lam2 = basis.ladders[(i, j)]
    dv = v[i - 1] - v[j - 1]
    err1 = float(np.max(np.abs((o @ lam1 - lam1 @ o) - 1j * dv * lam2)))
    err2 = float(np.max(np.abs((o @ lam2 - lam2 @ o) + 1j * dv * lam1)))
    return err1, err2


def pair_count(n: int) -> int:
    """Number of distinct pairwise balance laws for N landscapes."""
    if n < 2:
        raise ValueError("pair count requires n >= 2")
    return n * (n - 1) // 2
