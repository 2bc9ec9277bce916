"""Shared fixtures and batched sweep utilities for the test suite."""

from __future__ import annotations

import numpy as np

from korthos import _batch
from korthos.rings import (
    make_galois_field,
    make_product,
    make_r2,
    make_v_extension,
    make_zmod,
)


def ring_family():
    """A representative spread of small rings for exhaustive property tests."""
    return [
        make_zmod(2),
        make_zmod(3),
        make_zmod(4),
        make_zmod(6),
        make_zmod(12),
        make_galois_field(2, 2),
        make_galois_field(3, 1),
        make_r2(),
        make_v_extension(make_galois_field(3, 1), "1"),
        make_product([make_zmod(2), make_zmod(3)]),
    ]


def all_matrices_array(ring, rows, cols):
    """Every rows x cols matrix over the ring as one index array."""
    return _batch.all_tuples(ring.order, rows * cols).reshape(-1, rows, cols)


def batched_gram(ring, mats, transposed=False):
    """Gram matrices of the rows (A A^T) or columns (A^T A) of a matrix batch."""
    at = mats.swapaxes(-1, -2)
    if transposed:
        return _batch.batch_matmul(ring, at, mats)
    return _batch.batch_matmul(ring, mats, at)


def batched_pairwise_all_zero(ring, words, chunk=4096):
    """For a batch of codeword sets words (g, M, n): True per g iff every
    pairwise inner product of codewords vanishes (i.e. C is weakly self-dual,
    straight from the definition)."""
    g = words.shape[0]
    out = np.empty(g, dtype=bool)
    for lo in range(0, g, chunk):
        w = words[lo:lo + chunk]
        t = _batch.batch_dot(ring, w[:, :, None, :], w[:, None, :, :])
        out[lo:lo + chunk] = (t == ring.zero).all(axis=(1, 2))
    return out


def batched_words(ring, gens):
    """Spans of a generator batch gens (g, k, n) -> (g, |R|^k, n)."""
    k = gens.shape[-2]
    u = _batch.all_tuples(ring.order, k)           # (M, k)
    return _batch.batch_matmul(ring, u[None, :, :], gens)
