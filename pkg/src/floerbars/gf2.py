"""Small dense linear algebra over Z/2 on uint8 numpy arrays."""

from __future__ import annotations

import numpy as np


def asmatrix(rows, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Build a read-only uint8 matrix; ``shape`` is needed when ``rows`` is empty."""
    arr = np.array(rows, dtype=np.uint8)
    if shape is not None:
        arr = arr.reshape(shape)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {arr.shape}")
    arr = arr % 2
    arr.setflags(write=False)
    return arr


def zeros(rows: int, cols: int) -> np.ndarray:
    return asmatrix(np.zeros((rows, cols), dtype=np.uint8))


def identity(n: int) -> np.ndarray:
    return asmatrix(np.eye(n, dtype=np.uint8))


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    # int64 accumulation avoids uint8 overflow before reduction.
    out = (a.astype(np.int64) @ b.astype(np.int64)) % 2
    return asmatrix(out.astype(np.uint8))


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and bool(np.array_equal(a % 2, b % 2))


def rank(a: np.ndarray) -> int:
    m = (np.array(a, dtype=np.uint8) % 2).copy()
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivots = np.nonzero(m[r:, c])[0]
        if pivots.size == 0:
            continue
        p = r + pivots[0]
        if p != r:
            m[[r, p]] = m[[p, r]]
        below = np.nonzero(m[:, c])[0]
        for i in below:
            if i != r:
                m[i] ^= m[r]
        r += 1
    return r


def inverse(a: np.ndarray) -> np.ndarray:
    """Inverse of a square invertible matrix; raises ValueError if singular."""
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([np.array(a, dtype=np.uint8) % 2, np.eye(n, dtype=np.uint8)], axis=1)
    for c in range(n):
        pivots = np.nonzero(aug[c:, c])[0]
        if pivots.size == 0:
            raise ValueError("matrix is singular over Z/2")
        p = c + pivots[0]
        if p != c:
            aug[[c, p]] = aug[[p, c]]
        for i in np.nonzero(aug[:, c])[0]:
            if i != c:
                aug[i] ^= aug[c]
    return asmatrix(aug[:, n:])
