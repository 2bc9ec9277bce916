"""Vectorized arithmetic on numpy arrays of ring element indices.

Used where brute-force scale demands it (naive enumeration oracles, closure
verification, dual-code sweeps).  All functions take a table-backed ring and
operate on arrays whose values are element indices.
"""

from __future__ import annotations

import numpy as np


def all_tuples(order, length):
    """All vectors in R^length as an (order**length, length) index array,
    in lexicographic order (first coordinate most significant)."""
    count = order ** length
    out = np.empty((count, length), dtype=np.uint8 if order <= 256 else np.int64)
    x = np.arange(count, dtype=np.int64)
    for j in range(length - 1, -1, -1):
        out[:, j] = x % order
        x //= order
    return out


def fold_add(ring, arrays):
    """Ring sum of an iterable of equal-shape index arrays."""
    add = ring.add_np
    it = iter(arrays)
    acc = next(it)
    for a in it:
        acc = add[acc, a]
    return acc


def batch_matmul(ring, a, b):
    """Matrix product over the ring; a is (..., n, m), b is (..., m, p),
    broadcasting on the leading axes."""
    mul = ring.mul_np
    t = mul[a[..., :, :, None], b[..., None, :, :]]  # (..., n, m, p)
    return fold_add(ring, (t[..., k, :] for k in range(t.shape[-2])))


def batch_dot(ring, u, v):
    """Inner products along the last axis, broadcasting on the rest."""
    mul = ring.mul_np
    t = mul[u, v]
    return fold_add(ring, (t[..., k] for k in range(t.shape[-1])))


def encode(order, flat):
    """Collapse the last axis into a single int64 code (first entry most
    significant), matching lexicographic order on the tuples."""
    width = flat.shape[-1]
    weights = order ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return (flat.astype(np.int64) * weights).sum(axis=-1)
