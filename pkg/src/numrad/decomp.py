"""Polar decomposition, fractional powers, and Hermitian spectra.

The polar factor used everywhere in this package is the canonical partial
isometry from the SVD: it vanishes on right singular directions whose
singular value falls below the rank tolerance, so ``U*U`` is the projector
onto ``range(|T|)`` rather than the identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matrixio import ComplexMatrix

__all__ = [
    "PolarParts",
    "HermitianSpectrum",
    "adjoint",
    "spectral_norm",
    "spectral_radius",
    "polar_decompose",
    "frac_power",
    "anticommutator_self",
    "hermitian_spectrum",
]

_EPS = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class PolarParts:
    """Factors of ``T = U P`` with ``U`` a partial isometry and ``P = |T|``.

    ``sv`` holds the singular values in nonincreasing order, ``v`` the
    matching right singular vectors as columns; ``rank`` counts singular
    values above ``rank_tol``.
    """

    u: ComplexMatrix
    p: ComplexMatrix
    rank: int
    rank_tol: float
    sv: np.ndarray
    v: np.ndarray

    def __post_init__(self) -> None:
        sv = np.array(self.sv, dtype=np.float64, copy=True)
        v = np.array(self.v, dtype=np.complex128, copy=True)
        sv.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "sv", sv)
        object.__setattr__(self, "v", v)


@dataclass(frozen=True)
class HermitianSpectrum:
    """Eigenvalues (nonincreasing) and an orthonormal eigenvector frame."""

    eigenvalues: np.ndarray
    frame: np.ndarray

    def __post_init__(self) -> None:
        evals = np.array(self.eigenvalues, dtype=np.float64, copy=True)
        frame = np.array(self.frame, dtype=np.complex128, copy=True)
        evals.setflags(write=False)
        frame.setflags(write=False)
        object.__setattr__(self, "eigenvalues", evals)
        object.__setattr__(self, "frame", frame)


def adjoint(m: ComplexMatrix) -> ComplexMatrix:
    """Conjugate transpose."""
    return ComplexMatrix(np.conj(m.entries.T))


def spectral_norm(m: ComplexMatrix) -> float:
    """Largest singular value."""
    return float(np.linalg.svd(m.entries, compute_uv=False)[0])


def spectral_radius(m: ComplexMatrix) -> float:
    """Largest eigenvalue modulus.

    A plain eigensolver overshoots badly on defective matrices (a dense
    nilpotent matrix of dimension n reads back eigenvalues of order
    ``eps**(1/n)``), so the eigenvalue estimate is clamped by Gelfand bounds
    ``norm(M**(2**k)) ** (1/2**k)``, which are upper bounds for every k and
    are exact for nilpotent input.
    """
    arr = m.entries
    scale = spectral_norm(m)
    if scale == 0.0:
        return 0.0
    lam = float(np.max(np.abs(np.linalg.eigvals(arr))))
    best = 1.0
    power = arr / scale
    rounds = int(math.ceil(math.log2(m.dim))) + 2 if m.dim > 1 else 2
    for k in range(1, rounds + 1):
        power = power @ power
        best = min(best, float(np.linalg.svd(power, compute_uv=False)[0]) ** (1.0 / 2**k))
    return min(lam, scale * best)


def polar_decompose(m: ComplexMatrix, rank_tol: float | None = None) -> PolarParts:
    """Factor ``T = U P`` with ``P = |T|`` PSD and ``U`` a partial isometry.

    ``rank_tol`` defaults to ``dim * eps * max(sv)``.  Singular directions at
    or below the tolerance are dropped from ``U``, so ``U`` annihilates them
    and ``U*U`` has trace ``rank``.
    """
    arr = m.entries
    w, sv, vh = np.linalg.svd(arr)
    tol = float(rank_tol) if rank_tol is not None else m.dim * _EPS * float(sv[0])
    rank = int(np.sum(sv > tol))
    u = w[:, :rank] @ vh[:rank, :]
    v = np.conj(vh.T)
    p = (v * sv) @ vh
    p = 0.5 * (p + np.conj(p.T))
    return PolarParts(
        u=ComplexMatrix(u),
        p=ComplexMatrix(p),
        rank=rank,
        rank_tol=tol,
        sv=sv,
        v=v,
    )


def frac_power(parts: PolarParts, t: float) -> ComplexMatrix:
    """``|T| ** t`` for ``0 <= t <= 1``; ``t = 0`` gives the rank projector.

    Fractional powers act on the singular values with the convention
    ``0 ** t = 0``.  Singular values at or below the rank tolerance count as
    zero at every ``t``, matching the projector at ``t = 0``; without that
    cut a value of order ``eps`` would be amplified to ``eps ** t``, and the
    transform of a rank-deficient matrix would pick up order-one noise.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"power must lie in [0, 1], got {t}")
    v = parts.v
    if t == 0.0:
        kept = v[:, : parts.rank]
        out = kept @ np.conj(kept.T)
    else:
        powered = np.where(parts.sv > parts.rank_tol, parts.sv, 0.0) ** t
        out = (v * powered) @ np.conj(v.T)
    return ComplexMatrix(0.5 * (out + np.conj(out.T)))


def anticommutator_self(m: ComplexMatrix) -> ComplexMatrix:
    """``M*M + MM*``."""
    arr = m.entries
    out = np.conj(arr.T) @ arr + arr @ np.conj(arr.T)
    return ComplexMatrix(0.5 * (out + np.conj(out.T)))


def hermitian_spectrum(m: ComplexMatrix) -> HermitianSpectrum:
    """Eigendecomposition of a Hermitian matrix, eigenvalues nonincreasing.

    Rejects input whose departure from Hermitian symmetry exceeds
    ``1e-10 * max(1, norm)``.
    """
    arr = m.entries
    gap = float(np.linalg.norm(arr - np.conj(arr.T), 2))
    if gap > 1e-10 * max(1.0, float(np.linalg.norm(arr, 2))):
        raise ValueError(f"matrix is not Hermitian (asymmetry {gap:.3e})")
    sym = 0.5 * (arr + np.conj(arr.T))
    evals, vecs = np.linalg.eigh(sym)
    return HermitianSpectrum(eigenvalues=evals[::-1], frame=vecs[:, ::-1])
