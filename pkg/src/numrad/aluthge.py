"""Weighted Aluthge transforms and their iteration.

For ``T = U|T|`` the t-weighted transform is ``|T|**t U |T|**(1-t)``.  Each
stage of an iterated chain computes its own polar decomposition; nothing is
reused across stages.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decomp import frac_power, polar_decompose, spectral_norm
from .matrixio import ComplexMatrix

__all__ = [
    "AluthgeChain",
    "aluthge_t",
    "aluthge_iterate",
    "nilpotent_norm_residual",
]


@dataclass(frozen=True)
class AluthgeChain:
    """Successive t-weighted transforms; ``terms[0]`` is the input matrix."""

    t: float
    terms: tuple[ComplexMatrix, ...]


def aluthge_t(m: ComplexMatrix, t: float) -> ComplexMatrix:
    """The t-weighted Aluthge transform ``|T|**t U |T|**(1-t)``, ``t in [0, 1]``."""
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"weight must lie in [0, 1], got {t}")
    parts = polar_decompose(m)
    left = frac_power(parts, t).entries
    right = frac_power(parts, 1.0 - t).entries
    return ComplexMatrix(left @ parts.u.entries @ right)


def aluthge_iterate(m: ComplexMatrix, t: float, n: int) -> AluthgeChain:
    """Apply the t-weighted transform ``n`` times, keeping every stage.

    Returns ``n + 1`` terms starting at the input.  Each stage factors its
    own polar decomposition.
    """
    if n < 0:
        raise ValueError(f"iteration count must be nonnegative, got {n}")
    terms = [m]
    for _ in range(n):
        terms.append(aluthge_t(terms[-1], t))
    return AluthgeChain(t=t, terms=tuple(terms))


def nilpotent_norm_residual(m: ComplexMatrix, t: float) -> float:
    """Slack of the transform-norm bound driven by ``norm(M @ M)``.

    The transform norm never exceeds ``norm(M@M)**t * norm(M)**(1-2t)`` for
    ``t <= 1/2`` and ``norm(M@M)**(1-t) * norm(M)**(2t-1)`` for ``t >= 1/2``;
    the residual is that bound minus ``norm(aluthge_t(M, t))`` and is
    nonnegative up to rounding.  Zero input returns exactly 0.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"weight must lie in [0, 1], got {t}")
    norm = spectral_norm(m)
    if norm == 0.0:
        return 0.0
    sq_norm = spectral_norm(ComplexMatrix(m.entries @ m.entries))
    if t <= 0.5:
        bound = sq_norm**t * norm ** (1.0 - 2.0 * t)
    else:
        bound = sq_norm ** (1.0 - t) * norm ** (2.0 * t - 1.0)
    return bound - spectral_norm(aluthge_t(m, t))
