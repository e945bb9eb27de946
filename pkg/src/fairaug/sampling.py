"""Seeded random streams and uniform sampling of absent node pairs."""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def substream(seed: int, *key: int) -> np.random.Generator:
    """Independent PCG64 stream for ``(seed, *key)``.

    Streams with different keys are statistically independent, so toggling
    one pipeline step does not shift the draws of another.
    """
    ss = np.random.SeedSequence(entropy=int(seed) & _MASK64,
                                spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))


def pair_keys(edges: np.ndarray, n: int) -> np.ndarray:
    """Sorted int64 codes ``u * n + v`` for ``u < v`` edge rows."""
    e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    lo = np.minimum(e[:, 0], e[:, 1])
    hi = np.maximum(e[:, 0], e[:, 1])
    return np.sort(lo * n + hi)


def decode_keys(keys: np.ndarray, n: int) -> np.ndarray:
    lo, hi = np.divmod(np.asarray(keys, dtype=np.int64), n)
    return np.column_stack([lo, hi])


def _count_in_pool(forbidden, n, left, right, within):
    lo, hi = np.divmod(forbidden, n)
    in_left = np.zeros(n, dtype=bool)
    in_left[left] = True
    if within:
        return int(np.count_nonzero(in_left[lo] & in_left[hi]))
    in_right = np.zeros(n, dtype=bool)
    in_right[right] = True
    return int(np.count_nonzero((in_left[lo] & in_right[hi]) | (in_right[lo] & in_left[hi])))


def _all_pairs(left, right, n, within):
    if within:
        i, j = np.triu_indices(len(left), k=1)
        u, v = left[i], left[j]
    else:
        u = np.repeat(left, len(right))
        v = np.tile(right, len(left))
    return np.minimum(u, v) * n + np.maximum(u, v)


def sample_absent_pairs(rng: np.random.Generator, left, right, k: int,
                        forbidden, n: int, within: bool = False) -> np.ndarray:
    """Draw ``k`` distinct pairs uniformly from those not in ``forbidden``.

    Pairs are ``left x right`` (disjoint sets) or, with ``within=True``,
    unordered pairs of distinct nodes of ``left``. ``forbidden`` holds sorted
    pair codes (see :func:`pair_keys`); it may include pairs outside the pool.
    If fewer than ``k`` absent pairs exist, all of them are returned.
    Result is an ``(m, 2)`` array with ``u < v`` per row.
    """
    left = np.asarray(left, dtype=np.int64)
    right = left if within else np.asarray(right, dtype=np.int64)
    forbidden = np.asarray(forbidden, dtype=np.int64)
    if k <= 0 or len(left) == 0 or len(right) == 0:
        return np.empty((0, 2), dtype=np.int64)
    m = len(left)
    total = m * (m - 1) // 2 if within else len(left) * len(right)
    absent = total - _count_in_pool(forbidden, n, left, right, within)
    if absent <= 0:
        return np.empty((0, 2), dtype=np.int64)

    if 2 * k > absent:
        # dense regime: enumerate the absent pool and choose without replacement
        pool = _all_pairs(left, right, n, within)
        pool = pool[~np.isin(pool, forbidden)]
        take = min(k, len(pool))
        return decode_keys(rng.choice(pool, size=take, replace=False), n)

    chosen = np.empty(0, dtype=np.int64)
    while len(chosen) < k:
        need = k - len(chosen)
        batch = int(need * 1.5 * total / absent) + 16
        u = left[rng.integers(0, len(left), batch)]
        v = right[rng.integers(0, len(right), batch)]
        if within:
            ok = u != v
            u, v = u[ok], v[ok]
        keys = np.minimum(u, v) * n + np.maximum(u, v)
        keys = keys[~np.isin(keys, forbidden) & ~np.isin(keys, chosen)]
        _, first = np.unique(keys, return_index=True)
        keys = keys[np.sort(first)]
        chosen = np.concatenate([chosen, keys[:need]])
    return decode_keys(chosen, n)
