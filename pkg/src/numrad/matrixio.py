"""Matrix containers, JSON round-tripping, and random matrix ensembles.

The on-disk format is a single JSON object ``{"dim": n, "data": [[re, im],
...]}`` with the ``n*n`` entries stored row-major.  Serialization uses
shortest round-trip float formatting, so parse/serialize is byte-stable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ComplexMatrix",
    "EnsembleConfig",
    "MatrixFormatError",
    "ENSEMBLE_KINDS",
    "parse_matrix",
    "serialize_matrix",
    "make_ensemble",
    "reference_fixtures",
]

ENSEMBLE_KINDS = ("ginibre", "nilpotent2", "strict-upper", "normal", "reference")


class MatrixFormatError(ValueError):
    """Raised when matrix text cannot be parsed into a square complex matrix."""


@dataclass(frozen=True, eq=False)
class ComplexMatrix:
    """An immutable square complex matrix.

    ``entries`` is a read-only ``complex128`` array; the constructor copies
    its input and rejects non-square or non-finite data.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.entries, dtype=np.complex128, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise ValueError(f"expected a square matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            bad = np.argwhere(~np.isfinite(arr))[0]
            raise ValueError(
                f"non-finite entry at row {bad[0] + 1}, column {bad[1] + 1}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_rows(cls, rows) -> "ComplexMatrix":
        return cls(np.array(rows, dtype=np.complex128))

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"ComplexMatrix(dim={self.dim})"


def parse_matrix(text: str) -> ComplexMatrix:
    """Parse the JSON matrix format, reporting the location of bad entries.

    Raises :class:`MatrixFormatError` for malformed syntax, non-square data,
    malformed or non-finite entries; entry errors name the (1-indexed) row
    and column.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"malformed syntax: {exc}") from exc
    if not isinstance(doc, dict):
        raise MatrixFormatError("malformed syntax: top level must be an object")
    extra = set(doc) - {"dim", "data"}
    if extra:
        raise MatrixFormatError(f"unexpected keys: {sorted(extra)}")
    if "dim" not in doc or "data" not in doc:
        raise MatrixFormatError('missing required keys "dim" and "data"')
    dim = doc["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise MatrixFormatError(f'"dim" must be a positive integer, got {dim!r}')
    data = doc["data"]
    if not isinstance(data, list):
        raise MatrixFormatError('"data" must be a list of [re, im] pairs')
    if len(data) != dim * dim:
        raise MatrixFormatError(
            f"non-square data: dim {dim} needs {dim * dim} entries, got {len(data)}"
        )
    out = np.empty((dim, dim), dtype=np.complex128)
    for k, item in enumerate(data):
        row, col = divmod(k, dim)
        where = f"row {row + 1}, column {col + 1}"
        if (
            not isinstance(item, list)
            or len(item) != 2
            or any(isinstance(part, bool) or not isinstance(part, (int, float)) for part in item)
        ):
            raise MatrixFormatError(f"malformed entry at {where}: {item!r}")
        re, im = float(item[0]), float(item[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise MatrixFormatError(f"non-finite entry at {where}: {item!r}")
        out[row, col] = complex(re, im)
    return ComplexMatrix(out)


def serialize_matrix(m: ComplexMatrix) -> str:
    """Serialize to the JSON matrix format; exact round-trip with parse_matrix."""
    data = [
        [float(entry.real), float(entry.imag)]
        for row in m.entries
        for entry in row
    ]
    return json.dumps({"dim": m.dim, "data": data})


@dataclass(frozen=True)
class EnsembleConfig:
    """Which random family to draw from, and how many matrices."""

    kind: str
    dim: int
    count: int
    seed: int

    def __post_init__(self) -> None:
        if self.kind not in ENSEMBLE_KINDS:
            raise ValueError(f"unknown ensemble kind {self.kind!r}")
        if self.dim < 1:
            raise ValueError("dim must be at least 1")
        if self.count < 1:
            raise ValueError("count must be at least 1")


def _stream(seed: int, index: int) -> np.random.Generator:
    """One independent, documented generator per matrix index.

    Uses PCG64 with a spawn key, so draw ``index`` is the same regardless of
    how many matrices a run requests.
    """
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))


def _ginibre(rng: np.random.Generator, dim: int) -> np.ndarray:
    scale = 1.0 / math.sqrt(2.0)
    return scale * (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))


def _nilpotent2(rng: np.random.Generator, dim: int) -> np.ndarray:
    # Rank-one with disjoint row/column support, so the square is zero
    # entrywise with no rounding residue.
    out = np.zeros((dim, dim), dtype=np.complex128)
    if dim == 1:
        return out
    split = int(rng.integers(1, dim))
    scale = 1.0 / math.sqrt(2.0)
    x = scale * (rng.standard_normal(split) + 1j * rng.standard_normal(split))
    y = scale * (rng.standard_normal(dim - split) + 1j * rng.standard_normal(dim - split))
    out[:split, split:] = np.outer(x, np.conj(y))
    return out


def _haar_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    q, r = np.linalg.qr(_ginibre(rng, dim))
    d = np.diagonal(r).copy()
    mags = np.abs(d)
    phases = np.where(mags > 0, d / np.where(mags > 0, mags, 1.0), 1.0)
    return q * phases


def _normal(rng: np.random.Generator, dim: int) -> np.ndarray:
    u = _haar_unitary(rng, dim)
    scale = 1.0 / math.sqrt(2.0)
    lam = scale * (rng.standard_normal(dim) + 1j * rng.standard_normal(dim))
    return (u * lam) @ np.conj(u.T)


def make_ensemble(cfg: EnsembleConfig) -> list[ComplexMatrix]:
    """Draw ``cfg.count`` matrices of the requested kind, deterministically.

    The ``reference`` kind ignores dim and seed and cycles the five
    reference fixtures.
    """
    if cfg.kind == "reference":
        fixtures = list(reference_fixtures().values())
        return [fixtures[i % len(fixtures)] for i in range(cfg.count)]
    out = []
    for i in range(cfg.count):
        rng = _stream(cfg.seed, i)
        if cfg.kind == "ginibre":
            arr = _ginibre(rng, cfg.dim)
        elif cfg.kind == "nilpotent2":
            arr = _nilpotent2(rng, cfg.dim)
        elif cfg.kind == "strict-upper":
            arr = np.triu(_ginibre(rng, cfg.dim), k=1)
        else:  # normal
            arr = _normal(rng, cfg.dim)
        out.append(ComplexMatrix(arr))
    return out


def reference_fixtures() -> dict[str, ComplexMatrix]:
    """The five small closed-form matrices used throughout the test suite."""
    return {
        "A": ComplexMatrix.from_rows([[0, 2, 0], [0, 0, 0], [0, 0, 1]]),
        "B": ComplexMatrix.from_rows([[0, 2, 0], [0, 0, 3], [0, 0, 0]]),
        "C": ComplexMatrix.from_rows([[1, 1], [0, -1]]),
        "D": ComplexMatrix.from_rows([[1, 2], [0, -1]]),
        "E": ComplexMatrix.from_rows([[0, 1], [0, 0]]),
    }
