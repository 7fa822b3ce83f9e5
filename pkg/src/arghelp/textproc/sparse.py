from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class SparseVector:
    """Sorted sparse vector: strictly increasing ``indices`` with nonzero ``values``."""

    indices: np.ndarray
    values: np.ndarray
    dimension: int

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.int64)
        val = np.asarray(self.values, dtype=np.float64)
        if idx.shape != val.shape or idx.ndim != 1:
            raise ValueError("indices and values must be 1-D arrays of equal length")
        if idx.size:
            if idx[0] < 0 or idx[-1] >= self.dimension:
                raise ValueError("index out of range")
            if np.any(np.diff(idx) <= 0):
                raise ValueError("indices must be strictly increasing")
            if np.any(val == 0.0):
                raise ValueError("explicit zero entries are not allowed")
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "values", val)

    @classmethod
    def from_dict(cls, entries: dict[int, float], dimension: int) -> "SparseVector":
        items = sorted((i, v) for i, v in entries.items() if v != 0)
        return cls(
            np.array([i for i, _ in items], dtype=np.int64),
            np.array([v for _, v in items], dtype=np.float64),
            dimension,
        )

    @classmethod
    def from_dense(cls, dense) -> "SparseVector":
        dense = np.asarray(dense, dtype=np.float64)
        nz = np.flatnonzero(dense)
        return cls(nz, dense[nz], dense.size)

    @classmethod
    def zeros(cls, dimension: int) -> "SparseVector":
        return cls(np.empty(0, np.int64), np.empty(0, np.float64), dimension)

    @property
    def entries(self) -> list[tuple[int, float]]:
        return list(zip(self.indices.tolist(), self.values.tolist()))

    @property
    def nnz(self) -> int:
        return int(self.indices.size)

    def norm(self) -> float:
        return math.sqrt(float(np.dot(self.values, self.values)))

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.dimension)
        out[self.indices] = self.values
        return out

    def dot(self, dense: np.ndarray) -> float:
        return float(np.dot(dense[self.indices], self.values))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseVector):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self) -> str:
        return f"SparseVector({self.entries}, dimension={self.dimension})"


def l2_normalize(v: SparseVector) -> SparseVector:
    """Scale to unit Euclidean norm; the zero vector is returned unchanged."""
    n = v.norm()
    if n == 0.0:
        return v
    return SparseVector(v.indices, v.values / n, v.dimension)


def concat(blocks: list[SparseVector]) -> SparseVector:
    """Concatenate blocks, offsetting each block's indices by the preceding dimensions."""
    idx, val = [], []
    offset = 0
    for b in blocks:
        idx.append(b.indices + offset)
        val.append(b.values)
        offset += b.dimension
    if not blocks:
        return SparseVector.zeros(0)
    return SparseVector(np.concatenate(idx), np.concatenate(val), offset)
