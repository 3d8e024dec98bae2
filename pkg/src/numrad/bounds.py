"""Numerical-radius bounds built from norms, Aluthge transforms, and sweeps.

Every evaluator returns a :class:`BoundRecord` normalized to the w-scale:
``value = raw_value ** (1/scale)`` where scale 1, 2, or 4 matches the power
of ``w`` the underlying inequality controls.  Minima over the Aluthge weight
``t`` are taken on a :class:`TGrid` and sharpened by one golden-section pass
around the grid argmin; every grid point yields a valid bound on its own, so
the reported ``t_star`` is a witness, not a claimed global minimizer.

Radius and Crawford subroutines inside the evaluators run at width target
1e-9, taking the upper enclosure end for upper bounds and the lower end for
lower bounds, so each record is certified on its own side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .aluthge import aluthge_iterate
from .decomp import spectral_norm, spectral_radius, polar_decompose
from .matrixio import ComplexMatrix
from .radius import crawford_number, numerical_radius

__all__ = [
    "BoundRecord",
    "TGrid",
    "bound_kittaneh_norm",
    "bound_kittaneh_cartesian",
    "bound_yamazaki",
    "bound_min_aluthge",
    "bound_t_mean",
    "bound_norm_product",
    "bound_square_product",
    "bound_iterated_series",
    "bound_iterated_closed",
    "bound_fourth_power",
    "bound_fourth_sandwich",
    "heinz_residual",
    "composite_spectral_residual",
    "evaluate_all",
]

_WIDTH = 1e-9
_GOLDEN_TOL = 1e-5
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class BoundRecord:
    """One evaluated bound, on both its native scale and the w-scale."""

    name: str
    side: str
    value: float
    raw_value: float
    t_star: float | None
    scale: int

    def __post_init__(self) -> None:
        if self.side not in ("upper", "lower"):
            raise ValueError(f"side must be 'upper' or 'lower', got {self.side!r}")
        if self.scale not in (1, 2, 4):
            raise ValueError(f"scale must be 1, 2, or 4, got {self.scale}")
        if self.value < 0.0:
            raise ValueError(f"bound value must be nonnegative, got {self.value}")
        expected = self.raw_value ** (1.0 / self.scale)
        if abs(self.value - expected) > 1e-12 * max(1.0, abs(expected)):
            raise ValueError(
                f"value {self.value} is not raw_value**(1/{self.scale}) = {expected}"
            )


@dataclass(frozen=True)
class TGrid:
    """Sorted Aluthge weights in [0, 1]; always contains 0, 1/2, and 1."""

    points: tuple[float, ...]

    def __post_init__(self) -> None:
        pts = tuple(float(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise ValueError("grid must be nonempty")
        if pts[0] != 0.0 or pts[-1] != 1.0:
            raise ValueError("grid must start at 0 and end at 1")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise ValueError("grid points must be strictly increasing")
        if 0.5 not in pts:
            raise ValueError("grid must contain 0.5")

    @classmethod
    def equispaced(cls, count: int = 201) -> "TGrid":
        if count < 3 or count % 2 == 0:
            raise ValueError(
                f"equispaced grid needs an odd count of at least 3 (so it "
                f"contains 0.5), got {count}"
            )
        return cls(tuple(np.linspace(0.0, 1.0, count)))

    def __iter__(self):
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)


def _default_grid() -> TGrid:
    return TGrid.equispaced(201)


class _Profile:
    """Lazily cached per-matrix quantities shared by the bound evaluators."""

    def __init__(self, m: ComplexMatrix, grid: TGrid | None, width_target: float = _WIDTH):
        self.m = m
        self.grid = grid if grid is not None else _default_grid()
        self.width_target = width_target

    @cached_property
    def arr(self) -> np.ndarray:
        return self.m.entries

    @cached_property
    def norm(self) -> float:
        return spectral_norm(self.m)

    @cached_property
    def sq(self) -> np.ndarray:
        return self.arr @ self.arr

    @cached_property
    def sq_norm(self) -> float:
        return float(np.linalg.svd(self.sq, compute_uv=False)[0])

    @cached_property
    def anti(self) -> np.ndarray:
        out = np.conj(self.arr.T) @ self.arr + self.arr @ np.conj(self.arr.T)
        return 0.5 * (out + np.conj(out.T))

    @cached_property
    def anti_norm(self) -> float:
        return float(np.linalg.eigvalsh(self.anti)[-1])

    @cached_property
    def parts(self):
        return polar_decompose(self.m)

    def frac(self, t: float) -> np.ndarray:
        # Mirrors frac_power, including the rank-tolerance cut on the
        # singular values, but skips the ComplexMatrix wrapping.
        parts = self.parts
        if t == 0.0:
            kept = parts.v[:, : parts.rank]
            return kept @ np.conj(kept.T)
        powered = np.where(parts.sv > parts.rank_tol, parts.sv, 0.0) ** t
        return (parts.v * powered) @ np.conj(parts.v.T)

    def aluthge_arr(self, t: float) -> np.ndarray:
        return self.frac(t) @ self.parts.u.entries @ self.frac(1.0 - t)

    def w_hi(self, arr: np.ndarray) -> float:
        return numerical_radius(
            ComplexMatrix(arr), self.width_target, initial_count=48
        ).hi

    @cached_property
    def grid_tilde(self) -> list[np.ndarray]:
        return [self.aluthge_arr(t) for t in self.grid.points]

    @cached_property
    def grid_tilde_norms(self) -> np.ndarray:
        return np.array([float(np.linalg.svd(a, compute_uv=False)[0]) for a in self.grid_tilde])

    @cached_property
    def tilde_half_w(self) -> float:
        return self.w_hi(self.aluthge_arr(0.5))

    @cached_property
    def grid_tilde_w(self) -> np.ndarray:
        return np.array(
            [
                self.tilde_half_w if t == 0.5 else self.w_hi(a)
                for t, a in zip(self.grid.points, self.grid_tilde)
            ]
        )

    @cached_property
    def grid_tilde_sq_w(self) -> np.ndarray:
        return np.array([self.w_hi(a @ a) for a in self.grid_tilde])

    @cached_property
    def norm_min(self) -> tuple[float, float]:
        """Refined minimizer of ``norm(tilde(t))`` as ``(t_star, value)``."""
        return _grid_min_refined(
            self,
            self.grid_tilde_norms,
            lambda t: float(np.linalg.svd(self.aluthge_arr(t), compute_uv=False)[0]),
        )


def _golden_min(fn, lo: float, hi: float) -> tuple[float, float]:
    """Golden-section pass for a scalar minimum on [lo, hi]."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = fn(c), fn(d)
    best_t, best_v = (c, fc) if fc <= fd else (d, fd)
    for _ in range(60):
        if b - a <= _GOLDEN_TOL:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = fn(c)
            if fc < best_v:
                best_t, best_v = c, fc
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = fn(d)
            if fd < best_v:
                best_t, best_v = d, fd
    return best_t, best_v


def _grid_min_refined(prof: _Profile, grid_values: np.ndarray, per_t) -> tuple[float, float]:
    """Grid argmin plus one golden-section pass around it."""
    pts = prof.grid.points
    idx = int(np.argmin(grid_values))
    best_t, best_v = pts[idx], float(grid_values[idx])
    lo = pts[max(0, idx - 1)]
    hi = pts[min(len(pts) - 1, idx + 1)]
    t_ref, v_ref = _golden_min(per_t, lo, hi)
    if v_ref < best_v:
        best_t, best_v = t_ref, v_ref
    return best_t, best_v


def _record(name: str, side: str, raw: float, scale: int, t_star: float | None = None) -> BoundRecord:
    raw = float(raw)
    return BoundRecord(
        name=name,
        side=side,
        value=raw ** (1.0 / scale),
        raw_value=raw,
        t_star=t_star,
        scale=scale,
    )


def _zero_record(name: str, side: str, scale: int) -> BoundRecord:
    return BoundRecord(name=name, side=side, value=0.0, raw_value=0.0, t_star=None, scale=scale)


def _eq1(prof: _Profile) -> BoundRecord:
    value = 0.5 * (prof.norm + math.sqrt(prof.sq_norm))
    return _record("eq1", "upper", value, 1)


def _eq2(prof: _Profile) -> tuple[BoundRecord, BoundRecord]:
    lower = _record("eq2_lo", "lower", 0.25 * prof.anti_norm, 2)
    upper = _record("eq2_up", "upper", 0.5 * prof.anti_norm, 2)
    return lower, upper


def _eq3(prof: _Profile) -> BoundRecord:
    value = 0.5 * (prof.norm + prof.tilde_half_w)
    return _record("eq3", "upper", value, 1)


def _eq4(prof: _Profile) -> BoundRecord:
    t_star, w_min = _grid_min_refined(
        prof, prof.grid_tilde_w, lambda t: prof.w_hi(prof.aluthge_arr(t))
    )
    return _record("eq4", "upper", 0.5 * (prof.norm + w_min), 1, t_star)


def _t_mean(prof: _Profile) -> BoundRecord:
    norm = prof.norm
    pts = np.array(prof.grid.points)
    grid_vals = 0.5 * prof.grid_tilde_w + 0.25 * (norm ** (2 * pts) + norm ** (2 - 2 * pts))

    def per_t(t: float) -> float:
        return 0.5 * prof.w_hi(prof.aluthge_arr(t)) + 0.25 * (
            norm ** (2 * t) + norm ** (2 - 2 * t)
        )

    t_star, value = _grid_min_refined(prof, grid_vals, per_t)
    return _record("thm_t_mean", "upper", value, 1, t_star)


def _norm_product(prof: _Profile) -> BoundRecord:
    t_star, tilde_min = prof.norm_min
    raw = 0.5 * prof.norm * tilde_min + 0.25 * prof.anti_norm
    return _record("thm_norm_product", "upper", raw, 2, t_star)


def _mixed_square_min(prof: _Profile) -> tuple[float, float]:
    """Minimize ``w(tilde(t)^2) + norm(M) * norm(tilde(t))`` over the grid.

    Shared by the square-product and fourth-power bounds, whose minimands
    are monotone images of this expression.  The norm-product minimizer is
    kept as an extra candidate: the square-product value it yields never
    exceeds twice the norm-product term there, which keeps the two bounds
    ordered even when their refinement passes explore different weights.
    """
    grid_vals = prof.grid_tilde_sq_w + prof.norm * prof.grid_tilde_norms

    def per_t(t: float) -> float:
        tilde = prof.aluthge_arr(t)
        return prof.w_hi(tilde @ tilde) + prof.norm * float(
            np.linalg.svd(tilde, compute_uv=False)[0]
        )

    t_star, value = _grid_min_refined(prof, grid_vals, per_t)
    t_norm = prof.norm_min[0]
    at_norm_min = per_t(t_norm)
    if at_norm_min < value:
        t_star, value = t_norm, at_norm_min
    return t_star, value


def _square_product(prof: _Profile) -> BoundRecord:
    t_star, mixed = _mixed_square_min(prof)
    raw = 0.25 * mixed + 0.25 * prof.anti_norm
    return _record("thm_square_product", "upper", raw, 2, t_star)


def _iter_series(prof: _Profile, t: float, n_terms: int) -> BoundRecord:
    chain = aluthge_iterate(prof.m, t, n_terms)
    norms = [spectral_norm(term) for term in chain.terms]
    raw = 0.0
    for n in range(1, n_terms + 1):
        stage = chain.terms[n - 1].entries
        anti = np.conj(stage.T) @ stage + stage @ np.conj(stage.T)
        anti_norm = float(np.linalg.eigvalsh(0.5 * (anti + np.conj(anti.T)))[-1])
        raw += (norms[n - 1] * norms[n] + anti_norm) / 4.0**n
    raw += norms[n_terms] ** 2 / 4.0**n_terms
    return _record("iter_series", "upper", raw, 2, t)


def _iter_closed(prof: _Profile) -> BoundRecord:
    root = math.sqrt(prof.sq_norm)
    raw = 0.5 * (root * (0.5 * prof.norm + 0.5 * root) + 0.5 * prof.anti_norm)
    return _record("iter_closed", "upper", raw, 2)


def _fourth_power(prof: _Profile) -> BoundRecord:
    t_star, mixed = _mixed_square_min(prof)
    cross = prof.w_hi(prof.sq @ prof.anti + prof.anti @ prof.sq)
    raw = mixed**2 / 16.0 + cross / 8.0 + prof.anti_norm**2 / 16.0
    return _record("thm_fourth", "upper", raw, 4, t_star)


def _fourth_sandwich(prof: _Profile) -> tuple[BoundRecord, BoundRecord]:
    re_sq = 0.5 * (prof.sq + np.conj(prof.sq.T))
    crawford = crawford_number(
        ComplexMatrix(re_sq @ re_sq), prof.width_target, initial_count=48
    )
    raw_lo = 0.25 * crawford.lo + prof.anti_norm**2 / 16.0
    w_sq = numerical_radius(ComplexMatrix(prof.sq), prof.width_target, initial_count=48)
    raw_up = 0.5 * w_sq.hi**2 + prof.anti_norm**2 / 8.0
    lower = _record("thm_sandwich_lo", "lower", raw_lo, 4)
    upper = _record("thm_sandwich_up", "upper", raw_up, 4)
    return lower, upper


def bound_kittaneh_norm(m: ComplexMatrix) -> BoundRecord:
    """``w <= (norm(M) + norm(M @ M) ** (1/2)) / 2``; record name eq1."""
    prof = _Profile(m, None)
    if prof.norm == 0.0:
        return _zero_record("eq1", "upper", 1)
    return _eq1(prof)


def bound_kittaneh_cartesian(m: ComplexMatrix) -> tuple[BoundRecord, BoundRecord]:
    """``norm(P)/4 <= w**2 <= norm(P)/2`` for ``P = M*M + MM*``; eq2_lo/eq2_up."""
    prof = _Profile(m, None)
    if prof.norm == 0.0:
        return _zero_record("eq2_lo", "lower", 2), _zero_record("eq2_up", "upper", 2)
    return _eq2(prof)


def bound_yamazaki(m: ComplexMatrix) -> BoundRecord:
    """``w <= (norm(M) + w(aluthge)) / 2`` at weight 1/2; record name eq3."""
    prof = _Profile(m, None)
    if prof.norm == 0.0:
        return _zero_record("eq3", "upper", 1)
    return _eq3(prof)


def bound_min_aluthge(m: ComplexMatrix, g: TGrid | None = None) -> BoundRecord:
    """``w <= (norm(M) + min_t w(tilde(t))) / 2`` on the grid; record name eq4."""
    prof = _Profile(m, g)
    if prof.norm == 0.0:
        return _zero_record("eq4", "upper", 1)
    return _eq4(prof)


def bound_t_mean(m: ComplexMatrix, g: TGrid | None = None) -> BoundRecord:
    """Arithmetic-mean bound ``w <= min_t (w(tilde)/2 + (n^2t + n^(2-2t))/4)``."""
    prof = _Profile(m, g)
    if prof.norm == 0.0:
        return _zero_record("thm_t_mean", "upper", 1)
    return _t_mean(prof)


def bound_norm_product(m: ComplexMatrix, g: TGrid | None = None) -> BoundRecord:
    """``w**2 <= norm(M) * min_t norm(tilde(t)) / 2 + norm(P) / 4``."""
    prof = _Profile(m, g)
    if prof.norm == 0.0:
        return _zero_record("thm_norm_product", "upper", 2)
    return _norm_product(prof)


def bound_square_product(m: ComplexMatrix, g: TGrid | None = None) -> BoundRecord:
    """``w**2 <= min_t (w(tilde^2) + norm(M) norm(tilde)) / 4 + norm(P) / 4``."""
    prof = _Profile(m, g)
    if prof.norm == 0.0:
        return _zero_record("thm_square_product", "upper", 2)
    return _square_product(prof)


def bound_iterated_series(m: ComplexMatrix, t: float = 0.5, n_terms: int = 12) -> BoundRecord:
    """Truncated iterated-transform series plus its tail certificate.

    ``w**2 <= sum_n 4**-n (norm(chain[n-1]) norm(chain[n]) + norm(P(chain[n-1])))``;
    the truncation at ``n_terms`` adds ``norm(chain[N])**2 / 4**N``, which
    dominates the dropped tail because chain norms are nonincreasing, so the
    result is a sound upper bound for every ``n_terms >= 1``.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"weight must lie in [0, 1], got {t}")
    if n_terms < 1:
        raise ValueError(f"need at least one series term, got {n_terms}")
    prof = _Profile(m, None)
    if prof.norm == 0.0:
        return _zero_record("iter_series", "upper", 2)
    return _iter_series(prof, t, n_terms)


def bound_iterated_closed(m: ComplexMatrix) -> BoundRecord:
    """Closed form of the iterated series driven by ``norm(M @ M)``.

    ``w**2 <= (norm(M@M)**(1/2) (norm(M)/2 + norm(M@M)**(1/2)/2) + norm(P)/2) / 2``.
    """
    prof = _Profile(m, None)
    if prof.norm == 0.0:
        return _zero_record("iter_closed", "upper", 2)
    return _iter_closed(prof)


def bound_fourth_power(m: ComplexMatrix, g: TGrid | None = None) -> BoundRecord:
    """Fourth-power bound with the anticommutator cross term.

    ``w**4 <= min_t (w(tilde^2) + norm(M) norm(tilde))**2 / 16
    + w(M^2 P + P M^2) / 8 + norm(P)**2 / 16``.
    """
    prof = _Profile(m, g)
    if prof.norm == 0.0:
        return _zero_record("thm_fourth", "upper", 4)
    return _fourth_power(prof)


def bound_fourth_sandwich(m: ComplexMatrix) -> tuple[BoundRecord, BoundRecord]:
    """Two-sided fourth-power bounds through ``M @ M``.

    ``crawford((Re M^2)^2) / 4 + norm(P)**2 / 16 <= w**4
    <= w(M^2)**2 / 2 + norm(P)**2 / 8``.
    """
    prof = _Profile(m, None)
    if prof.norm == 0.0:
        return (
            _zero_record("thm_sandwich_lo", "lower", 4),
            _zero_record("thm_sandwich_up", "upper", 4),
        )
    return _fourth_sandwich(prof)


def _require_psd(arr: np.ndarray, label: str) -> np.ndarray:
    norm = float(np.linalg.norm(arr, 2))
    tol = 1e-10 * max(1.0, norm)
    if float(np.linalg.norm(arr - np.conj(arr.T), 2)) > tol:
        raise ValueError(f"{label} must be Hermitian")
    sym = 0.5 * (arr + np.conj(arr.T))
    if float(np.linalg.eigvalsh(sym)[0]) < -tol:
        raise ValueError(f"{label} must be positive semidefinite")
    return sym


def _psd_power(sym: np.ndarray, r: float) -> np.ndarray:
    evals, vecs = np.linalg.eigh(sym)
    powered = np.power(np.clip(evals, 0.0, None), r)
    return (vecs * powered) @ np.conj(vecs.T)


def heinz_residual(a: ComplexMatrix, x: ComplexMatrix, b: ComplexMatrix, r: float) -> float:
    """Slack of ``norm(A^r X B^r) <= norm(AXB)^r norm(X)^(1-r)`` for PSD A, B.

    Nonnegative up to rounding for ``r in [0, 1]``; the zero power follows
    the scalar convention ``0 ** 0 = 1``, so ``A ** 0`` is the identity here.
    """
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"exponent must lie in [0, 1], got {r}")
    a_sym = _require_psd(a.entries, "A")
    b_sym = _require_psd(b.entries, "B")
    x_arr = x.entries
    lhs = float(np.linalg.norm(_psd_power(a_sym, r) @ x_arr @ _psd_power(b_sym, r), 2))
    axb = float(np.linalg.norm(a_sym @ x_arr @ b_sym, 2))
    x_norm = float(np.linalg.norm(x_arr, 2))
    return axb**r * x_norm ** (1.0 - r) - lhs


def composite_spectral_residual(
    a1: ComplexMatrix, b1: ComplexMatrix, a2: ComplexMatrix, b2: ComplexMatrix
) -> float:
    """Slack of the spectral-radius bound for ``A1 B1 + A2 B2``.

    ``r(A1B1 + A2B2) <= (w(B1A1) + w(B2A2))/2
    + sqrt((w(B1A1) - w(B2A2))**2 + 4 norm(B1A2) norm(B2A1)) / 2``;
    the radius terms use upper enclosure ends, so the residual is
    nonnegative up to the enclosure width.
    """
    dims = {a1.dim, b1.dim, a2.dim, b2.dim}
    if len(dims) != 1:
        raise ValueError(f"operands must share one dimension, got {sorted(dims)}")
    w1 = numerical_radius(ComplexMatrix(b1.entries @ a1.entries), _WIDTH).hi
    w2 = numerical_radius(ComplexMatrix(b2.entries @ a2.entries), _WIDTH).hi
    cross = float(np.linalg.norm(b1.entries @ a2.entries, 2)) * float(
        np.linalg.norm(b2.entries @ a1.entries, 2)
    )
    rhs = 0.5 * (w1 + w2) + 0.5 * math.sqrt((w1 - w2) ** 2 + 4.0 * cross)
    lhs = spectral_radius(ComplexMatrix(a1.entries @ b1.entries + a2.entries @ b2.entries))
    return rhs - lhs


_ZERO_PLAN = (
    ("eq1", "upper", 1),
    ("eq2_lo", "lower", 2),
    ("eq2_up", "upper", 2),
    ("eq3", "upper", 1),
    ("eq4", "upper", 1),
    ("thm_t_mean", "upper", 1),
    ("thm_norm_product", "upper", 2),
    ("thm_square_product", "upper", 2),
    ("iter_series", "upper", 2),
    ("iter_closed", "upper", 2),
    ("thm_fourth", "upper", 4),
    ("thm_sandwich_lo", "lower", 4),
    ("thm_sandwich_up", "upper", 4),
)


def evaluate_all(
    m: ComplexMatrix, g: TGrid | None = None, width_target: float = _WIDTH
) -> list[BoundRecord]:
    """Evaluate every bound once, sharing one profile per matrix.

    Returns records in the summary-column order.  The iterated series uses
    its defaults (weight 1/2, 12 terms).
    """
    prof = _Profile(m, g, width_target)
    if prof.norm == 0.0:
        return [_zero_record(name, side, scale) for name, side, scale in _ZERO_PLAN]
    eq2_lo, eq2_up = _eq2(prof)
    sandwich_lo, sandwich_up = _fourth_sandwich(prof)
    return [
        _eq1(prof),
        eq2_lo,
        eq2_up,
        _eq3(prof),
        _eq4(prof),
        _t_mean(prof),
        _norm_product(prof),
        _square_product(prof),
        _iter_series(prof, 0.5, 12),
        _iter_closed(prof),
        _fourth_power(prof),
        sandwich_lo,
        sandwich_up,
    ]
