"""Certified enclosures for the numerical radius and the Crawford number.

Both quantities are extrema over rotation angle of eigenvalues of the
Hermitian part ``H_theta = Re(e^{i theta} M)``.  The sweeps here return
two-sided enclosures: lower ends come from evaluated eigenvalues and
Rayleigh points (values of the field at computed eigenvectors, valid even
when the vectors are inexact), upper ends from per-cell geometric bounds
that are intersected with a Lipschitz bound and refined until the enclosure
is narrower than ``width_target``.

The upper bound for the radius sweep uses support-function geometry: any
point of ``conv(W(M) u -W(M))`` whose alignment angle falls inside a grid
cell has modulus at most ``min(f_a / cos(x), f_b / cos(h - x))`` for the
cell's endpoint support values, and the maximum of that expression over the
cell has a closed form at the crossing angle.  This converges quadratically
in the cell width, which a Lipschitz-only certificate cannot do on flat
maxima (rank-one nilpotent matrices have constant support values, so a
linear certificate would need about ``norm / width_target`` evaluations).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .decomp import spectral_norm
from .matrixio import ComplexMatrix

__all__ = [
    "Enclosure",
    "ThetaSweep",
    "hermitian_part",
    "skew_part",
    "theta_sweep",
    "numerical_radius",
    "crawford_number",
    "range_boundary",
]

_CHUNK = 16384


@dataclass(frozen=True)
class Enclosure:
    """A certified interval ``[lo, hi]`` no wider than ``width_target``."""

    lo: float
    hi: float
    width_target: float

    def __post_init__(self) -> None:
        for field in ("lo", "hi", "width_target"):
            object.__setattr__(self, field, float(getattr(self, field)))
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("enclosure ends must be finite")
        if not (math.isfinite(self.width_target) and self.width_target > 0.0):
            raise ValueError("width_target must be positive")
        if self.lo > self.hi:
            raise ValueError(f"inverted enclosure [{self.lo}, {self.hi}]")
        if self.hi - self.lo > self.width_target:
            raise ValueError(
                f"enclosure width {self.hi - self.lo} exceeds target {self.width_target}"
            )

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)


@dataclass(frozen=True)
class ThetaSweep:
    """Extreme eigenvalues of ``H_theta`` on a grid over ``[0, pi)``.

    ``lipschitz`` is a Lipschitz constant (the spectral norm) valid for both
    eigenvalue curves.
    """

    thetas: np.ndarray
    values_max: np.ndarray
    values_min: np.ndarray
    lipschitz: float

    def __post_init__(self) -> None:
        for field in ("thetas", "values_max", "values_min"):
            arr = np.array(getattr(self, field), dtype=np.float64, copy=True)
            arr.setflags(write=False)
            object.__setattr__(self, field, arr)
        t = self.thetas
        if t.ndim != 1 or t.size < 1:
            raise ValueError("thetas must be a nonempty 1-d array")
        if t[0] < 0.0 or t[-1] >= math.pi or np.any(np.diff(t) <= 0.0):
            raise ValueError("thetas must be strictly increasing within [0, pi)")
        if self.values_max.shape != t.shape or self.values_min.shape != t.shape:
            raise ValueError("value arrays must match the theta grid")


def _cartesian_parts(m: ComplexMatrix) -> tuple[np.ndarray, np.ndarray]:
    arr = m.entries
    adj = np.conj(arr.T)
    return 0.5 * (arr + adj), (arr - adj) / 2j


def hermitian_part(m: ComplexMatrix, theta: float) -> ComplexMatrix:
    """``H_theta = Re(e^{i theta} M) = cos(theta) Re(M) - sin(theta) Im(M)``."""
    re, im = _cartesian_parts(m)
    return ComplexMatrix(math.cos(theta) * re - math.sin(theta) * im)


def skew_part(m: ComplexMatrix, theta: float) -> ComplexMatrix:
    """``K_theta = Im(e^{i theta} M)``; equals ``H_{theta - pi/2}``."""
    re, im = _cartesian_parts(m)
    return ComplexMatrix(math.sin(theta) * re + math.cos(theta) * im)


def _extreme_eigs(re: np.ndarray, im: np.ndarray, thetas: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Smallest and largest eigenvalue of ``H_theta`` for a batch of angles."""
    lo = np.empty(thetas.size)
    hi = np.empty(thetas.size)
    for start in range(0, thetas.size, _CHUNK):
        part = thetas[start : start + _CHUNK]
        stack = (
            np.cos(part)[:, None, None] * re[None, :, :]
            - np.sin(part)[:, None, None] * im[None, :, :]
        )
        evals = np.linalg.eigvalsh(stack)
        lo[start : start + _CHUNK] = evals[:, 0]
        hi[start : start + _CHUNK] = evals[:, -1]
    return lo, hi


def theta_sweep(m: ComplexMatrix, count: int = 1024) -> ThetaSweep:
    """Evaluate the extreme eigenvalue curves on a uniform grid over ``[0, pi)``."""
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    re, im = _cartesian_parts(m)
    thetas = np.linspace(0.0, math.pi, count, endpoint=False)
    vmin, vmax = _extreme_eigs(re, im, thetas)
    return ThetaSweep(
        thetas=thetas, values_max=vmax, values_min=vmin, lipschitz=spectral_norm(m)
    )


def _rayleigh_moduli(arr: np.ndarray, re: np.ndarray, im: np.ndarray, theta: float) -> float:
    """Largest Rayleigh-point modulus at one angle; a certified lower bound."""
    h = math.cos(theta) * re - math.sin(theta) * im
    _, vecs = np.linalg.eigh(h)
    best = 0.0
    for col in (0, vecs.shape[1] - 1):
        x = vecs[:, col]
        best = max(best, abs(np.vdot(x, arr @ x)))
    return best


def _float_guard(dim: int, norm: float) -> float:
    """Allowance for eigensolver and Rayleigh-quotient rounding.

    Computed extreme eigenvalues and Rayleigh moduli carry a backward error
    of a few ulps at the scale of ``norm``; enclosures are padded by this
    amount so they contain the exact value, not merely the computed one.
    """
    return float(8.0 * dim * np.finfo(np.float64).eps * norm)


def _radius_cell_bounds(
    thetas: np.ndarray, f: np.ndarray, lipschitz: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-cell upper bounds for point moduli, with the wrap cell appended.

    Returns ``(a, h, bound)`` where cell ``i`` spans ``[a_i, a_i + h_i]``.
    """
    a = thetas
    b = np.append(thetas[1:], thetas[0] + math.pi)
    fa = f
    fb = np.append(f[1:], f[0])
    h = b - a
    cross = np.arctan2(fb - fa * np.cos(h), fa * np.sin(h))
    cross = np.clip(cross, 0.0, h)
    vertex = np.minimum(fa / np.cos(cross), fb / np.cos(h - cross))
    linear = 0.5 * (fa + fb + lipschitz * h)
    return a, h, np.minimum(vertex, linear)


def numerical_radius(
    m: ComplexMatrix,
    width_target: float = 1e-8,
    *,
    initial_count: int = 1024,
    max_rounds: int = 60,
) -> Enclosure:
    """Certified enclosure of ``w(M) = max_theta lambda_max(H_theta)``.

    The sweep runs over ``[0, pi)`` (the curves for ``theta`` and
    ``theta + pi`` are reflections, so ``f = max(lambda_max, -lambda_min)``
    covers the full circle).  Every cell whose upper bound blocks the target
    width is trisected each round, and the lower end is refreshed once per
    round with the Rayleigh point of the current best angle.
    """
    if not width_target > 0.0:
        raise ValueError(f"width_target must be positive, got {width_target}")
    if initial_count < 8:
        raise ValueError(f"initial_count must be at least 8, got {initial_count}")
    norm = spectral_norm(m)
    if norm == 0.0:
        return Enclosure(0.0, 0.0, width_target)
    guard = _float_guard(m.dim, norm)
    target = max(width_target - 2.0 * guard, 0.5 * width_target)
    arr = m.entries
    re, im = _cartesian_parts(m)
    thetas = np.linspace(0.0, math.pi, initial_count, endpoint=False)
    vmin, vmax = _extreme_eigs(re, im, thetas)
    f = np.maximum(vmax, -vmin)
    lo = float(f.max())
    lo = max(lo, _rayleigh_moduli(arr, re, im, float(thetas[int(np.argmax(f))])))
    hi = lo
    for round_index in range(max_rounds + 1):
        a, h, bound = _radius_cell_bounds(thetas, f, norm)
        hi = max(lo, float(bound.max()))
        if hi - lo <= target:
            break
        if round_index == max_rounds:
            raise RuntimeError(
                f"radius sweep failed to reach width {width_target} "
                f"(current enclosure [{lo}, {hi}])"
            )
        active = bound > lo + target
        fresh = np.concatenate([a[active] + h[active] / 3.0, a[active] + 2.0 * h[active] / 3.0])
        fresh = np.mod(fresh, math.pi)
        nmin, nmax = _extreme_eigs(re, im, fresh)
        thetas = np.concatenate([thetas, fresh])
        f = np.concatenate([f, np.maximum(nmax, -nmin)])
        order = np.argsort(thetas)
        thetas = thetas[order]
        f = f[order]
        lo = max(lo, float(f.max()))
        lo = max(lo, _rayleigh_moduli(arr, re, im, float(thetas[int(np.argmax(f))])))
    return Enclosure(max(0.0, lo - guard), hi + guard, width_target)


def _support_max(z: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``max_{theta in [a, b]} Re(e^{i theta} z)`` for each cell, vectorized."""
    r = np.abs(z)
    peak = np.mod(-np.angle(z), 2.0 * math.pi)
    inside = np.mod(peak - a, 2.0 * math.pi) <= (b - a)
    ends = np.maximum(
        np.real(np.exp(1j * a) * z),
        np.real(np.exp(1j * b) * z),
    )
    return np.where(inside, r, ends)


def _bottom_eigs_with_points(
    arr: np.ndarray, re: np.ndarray, im: np.ndarray, thetas: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """For each angle: both extreme eigenvalues and their Rayleigh points."""
    n = thetas.size
    qmin = np.empty(n)
    qmax = np.empty(n)
    zmin = np.empty(n, dtype=np.complex128)
    zmax = np.empty(n, dtype=np.complex128)
    for start in range(0, n, _CHUNK):
        part = thetas[start : start + _CHUNK]
        stack = (
            np.cos(part)[:, None, None] * re[None, :, :]
            - np.sin(part)[:, None, None] * im[None, :, :]
        )
        evals, vecs = np.linalg.eigh(stack)
        qmin[start : start + _CHUNK] = evals[:, 0]
        qmax[start : start + _CHUNK] = evals[:, -1]
        bot = vecs[:, :, 0]
        top = vecs[:, :, -1]
        zmin[start : start + _CHUNK] = np.einsum("ki,ij,kj->k", np.conj(bot), arr, bot)
        zmax[start : start + _CHUNK] = np.einsum("ki,ij,kj->k", np.conj(top), arr, top)
    return qmin, qmax, zmin, zmax


def crawford_number(
    m: ComplexMatrix,
    width_target: float = 1e-8,
    *,
    initial_count: int = 1024,
    max_rounds: int = 60,
) -> Enclosure:
    """Certified enclosure of ``max(0, sup_theta lambda_min(H_theta))``.

    This is the distance from the origin to the numerical range when the
    origin lies outside it, and zero otherwise.  The sweep covers the full
    circle ``[0, 2 pi)``.  Cells are bounded by the sinusoid majorants
    ``Re(e^{i theta} z_end)`` through the endpoint Rayleigh points (valid
    for every angle since any unit vector bounds ``lambda_min`` from above),
    intersected with a Lipschitz bound.  Once the upper bound falls to zero
    the enclosure ``[0, 0]`` is returned without further refinement.
    Hermitian input takes a closed-form fast path.
    """
    if not width_target > 0.0:
        raise ValueError(f"width_target must be positive, got {width_target}")
    if initial_count < 8:
        raise ValueError(f"initial_count must be at least 8, got {initial_count}")
    norm = spectral_norm(m)
    if norm == 0.0:
        return Enclosure(0.0, 0.0, width_target)
    guard = _float_guard(m.dim, norm)
    target = max(width_target - 2.0 * guard, 0.5 * width_target)
    arr = m.entries
    asym = float(np.linalg.norm(arr - np.conj(arr.T), 2))
    if asym <= 1e-13 * max(1.0, norm):
        evals = np.linalg.eigvalsh(0.5 * (arr + np.conj(arr.T)))
        low, high = float(evals[0]), float(evals[-1])
        value = 0.0 if low <= 0.0 <= high else min(abs(low), abs(high))
        return Enclosure(max(0.0, value - guard), value + guard, width_target)
    re, im = _cartesian_parts(m)
    half = np.linspace(0.0, math.pi, initial_count // 2, endpoint=False)
    qmin, qmax, zmin, zmax = _bottom_eigs_with_points(arr, re, im, half)
    # The antipodal angle reflects the spectrum: lambda_min(H_{theta+pi}) is
    # -lambda_max(H_theta), attained by the top eigenvector, whose Rayleigh
    # point (unnegated) supplies the majorant there.
    thetas = np.concatenate([half, half + math.pi])
    q = np.concatenate([qmin, -qmax])
    z = np.concatenate([zmin, zmax])
    lo_q = float(q.max())
    hi_q = math.inf
    for round_index in range(max_rounds + 1):
        a = thetas
        b = np.append(thetas[1:], thetas[0] + 2.0 * math.pi)
        h = b - a
        za = z
        zb = np.append(z[1:], z[0])
        qa = q
        qb = np.append(q[1:], q[0])
        bound = np.minimum(_support_max(za, a, b), _support_max(zb, a, b))
        bound = np.minimum(bound, 0.5 * (qa + qb + norm * h))
        hi_q = max(lo_q, float(bound.max()))
        lo_m = max(0.0, lo_q)
        hi_m = max(lo_m, hi_q)
        if hi_q <= 0.0 or hi_m - lo_m <= target:
            break
        if round_index == max_rounds:
            raise RuntimeError(
                f"crawford sweep failed to reach width {width_target} "
                f"(current enclosure [{lo_m}, {hi_m}])"
            )
        active = bound > lo_m + target
        fresh = np.concatenate([a[active] + h[active] / 3.0, a[active] + 2.0 * h[active] / 3.0])
        fresh = np.mod(fresh, 2.0 * math.pi)
        nqmin, _, nzmin, _ = _bottom_eigs_with_points(arr, re, im, fresh)
        thetas = np.concatenate([thetas, fresh])
        q = np.concatenate([q, nqmin])
        z = np.concatenate([z, nzmin])
        order = np.argsort(thetas)
        thetas = thetas[order]
        q = q[order]
        z = z[order]
        lo_q = max(lo_q, float(q.max()))
    if hi_q <= 0.0:
        return Enclosure(0.0, guard, width_target)
    lo_m = max(0.0, lo_q - guard)
    return Enclosure(lo_m, max(lo_m, hi_q + guard), width_target)


def range_boundary(m: ComplexMatrix, k: int) -> list[complex]:
    """``k`` support points of the numerical range over a uniform angle grid.

    Point ``j`` maximizes ``Re(e^{i theta_j} z)`` over the range for
    ``theta_j = 2 pi j / k``; all returned points lie in the range.
    """
    if k < 3:
        raise ValueError(f"need at least 3 boundary points, got {k}")
    arr = m.entries
    re, im = _cartesian_parts(m)
    thetas = np.linspace(0.0, 2.0 * math.pi, k, endpoint=False)
    _, _, _, zmax = _bottom_eigs_with_points(arr, re, im, thetas)
    return [complex(v) for v in zmax]
