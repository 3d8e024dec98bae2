"""Shared fixtures and independent brute-force oracles.

The oracles here recompute radius-type quantities from first principles
(dense angle grids over the extreme eigenvalue curves) without touching the
certified sweep machinery, so enclosure tests compare two genuinely
different code paths.
"""

from __future__ import annotations

import numpy as np
import pytest

from numrad import ComplexMatrix, EnsembleConfig, make_ensemble, reference_fixtures


@pytest.fixture(scope="session")
def fixtures() -> dict[str, ComplexMatrix]:
    return reference_fixtures()


def draw(kind: str, dim: int, seed: int, count: int = 1) -> list[ComplexMatrix]:
    return make_ensemble(EnsembleConfig(kind=kind, dim=dim, count=count, seed=seed))


def brute_extremes(arr: np.ndarray, thetas: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Extreme eigenvalues of ``Re(e^{i theta} M)`` on a dense angle grid."""
    re = 0.5 * (arr + np.conj(arr.T))
    im = (arr - np.conj(arr.T)) / 2j
    re = 0.5 * (re + np.conj(re.T))
    im = 0.5 * (im + np.conj(im.T))
    lows = np.empty(thetas.size)
    highs = np.empty(thetas.size)
    chunk = 8192
    for start in range(0, thetas.size, chunk):
        part = thetas[start : start + chunk]
        stack = (
            np.cos(part)[:, None, None] * re[None, :, :]
            - np.sin(part)[:, None, None] * im[None, :, :]
        )
        evals = np.linalg.eigvalsh(stack)
        lows[start : start + chunk] = evals[:, 0]
        highs[start : start + chunk] = evals[:, -1]
    return lows, highs


def brute_radius(arr: np.ndarray, count: int = 20000) -> float:
    """Numerical radius from a dense grid of ``max(lambda_max, -lambda_min)``."""
    thetas = np.linspace(0.0, np.pi, count, endpoint=False)
    lows, highs = brute_extremes(arr, thetas)
    return float(np.max(np.maximum(highs, -lows)))


def brute_crawford(arr: np.ndarray, count: int = 40000) -> float:
    """Crawford number from a dense grid of ``lambda_min`` over the circle."""
    thetas = np.linspace(0.0, 2.0 * np.pi, count, endpoint=False)
    lows, _ = brute_extremes(arr, thetas)
    return max(0.0, float(np.max(lows)))
