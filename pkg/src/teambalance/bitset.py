"""Packing of int bitmasks into fixed-width uint64 word arrays."""

from __future__ import annotations

import numpy as np


def words_needed(num_skills: int) -> int:
    return max(1, (num_skills + 63) // 64)


def pack_masks(masks: list[int], num_skills: int) -> np.ndarray:
    """Pack arbitrary-precision int masks into an (n, W) uint64 array."""
    w = words_needed(num_skills)
    out = np.zeros((len(masks), w), dtype=np.uint64)
    nbytes = w * 8
    for row, mask in enumerate(masks):
        out[row] = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint64)
    return out


def pair_cover_counts(a_words: np.ndarray, b_words: np.ndarray) -> np.ndarray:
    """|A_i ∩ B_j| for every row pair, as an (n, m) int32 matrix."""
    n = a_words.shape[0]
    m = b_words.shape[0]
    out = np.empty((n, m), dtype=np.int32)
    for i in range(n):
        out[i] = np.bitwise_count(a_words[i] & b_words).sum(axis=1, dtype=np.int32)
    return out
