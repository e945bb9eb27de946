"""Toy fixtures, published dataset statistics and count-matched synthetic graphs."""

from __future__ import annotations

import numpy as np

from .errors import InputError
from .graph import Graph, build_graph
from .sampling import pair_keys, sample_absent_pairs, substream

# |S0chi|, |S0omega|, |S1chi|, |S1omega|, |Echi|, |E^omega_S0|, |E^omega_S1|
SOCIAL_NETWORK_STATS = {
    "pokec-z": (622, 4229, 582, 2226, 1730, 23428, 15942),
    "pokec-n": (423, 3617, 479, 1666, 1422, 18548, 10672),
    "ucsd34": (2246, 118, 1697, 71, 51607, 36787, 19989),
    "berkeley13": (1619, 80, 1488, 77, 27542, 19550, 13582),
}

# gamma values reported for the unaugmented graphs
PUBLISHED_GAMMA1 = {"pokec-z": 0.66, "pokec-n": 0.67, "ucsd34": 0.91, "berkeley13": 0.90}

TOY_FEATURES = np.array([
    [0.0, 0.1, -0.3, 0.1, -0.1],
    [0.2, -0.2, -0.2, 0.1, 0.1],
    [0.1, 0.2, 0.0, 0.2, 0.0],
    [0.2, 0.1, -0.2, 0.1, 0.2],
    [0.1, -0.1, -0.1, 0.1, -0.2],
    [-0.1, -0.1, 0.3, -0.2, 0.3],
    [-0.2, 0.1, 0.4, -0.1, -0.1],
    [-0.3, -0.1, 0.1, -0.3, -0.2],
])
TOY_SENSITIVE = np.array([0, 0, 0, 0, 0, 1, 1, 1], dtype=np.int8)


def toy_case1() -> tuple[Graph, np.ndarray, np.ndarray]:
    """Inter-edge-sparse toy graph.

    S0 = {0..4} with chi-nodes {0, 1}; S1 = {5, 6, 7} with chi-node {5}.
    Two inter-edges, six intra-edges in S0, three in S1. The topology is one
    of many with these cardinalities.
    """
    edges = [(0, 5), (1, 5),
             (0, 1), (0, 2), (1, 3), (2, 3), (2, 4), (3, 4),
             (5, 6), (5, 7), (6, 7)]
    return build_graph(edges, 8), TOY_FEATURES.copy(), TOY_SENSITIVE.copy()


def toy_case2() -> tuple[Graph, np.ndarray, np.ndarray]:
    """Toy graph where most nodes have an inter-edge.

    chi-nodes {0, 1, 2, 3} in S0 and {5, 6} in S1; four inter-edges, four
    intra-edges in S0, two in S1.
    """
    edges = [(0, 5), (1, 5), (2, 6), (3, 6),
             (0, 1), (2, 3), (0, 4), (3, 4),
             (5, 7), (6, 7)]
    return build_graph(edges, 8), TOY_FEATURES.copy(), TOY_SENSITIVE.copy()


def _cover_and_fill(rng, nodes, must_cover, k, n, existing):
    """``k`` intra pairs on ``nodes``, first touching every node of ``must_cover``."""
    nodes = np.asarray(nodes, dtype=np.int64)
    if k > len(nodes) * (len(nodes) - 1) // 2:
        raise InputError(f"{k} intra-edges do not fit on {len(nodes)} nodes")
    others = np.setdiff1d(nodes, must_cover)
    chain = np.concatenate([must_cover, others[:1]]).astype(np.int64)
    cover = np.column_stack([chain[:-1], chain[1:]])[:k]
    forb = np.union1d(existing, pair_keys(cover, n))
    rest = sample_absent_pairs(rng, nodes, None, k - len(cover), forb, n, within=True)
    return np.vstack([cover, rest])


def synthesize_from_counts(s0_chi: int, s0_omega: int, s1_chi: int, s1_omega: int,
                           e_chi: int, e_omega_s0: int, e_omega_s1: int,
                           seed: int = 0):
    """Random graph whose partition has exactly the given cardinalities.

    Node ids are laid out as S0chi, S0omega, S1chi, S1omega. Every chi-node
    receives an inter-edge; omega-nodes get intra-edges first when the budget
    allows. Returns ``(graph, s)``.
    """
    a, b = s0_chi, s1_chi
    if (a == 0) != (b == 0) or (a == 0) != (e_chi == 0):
        raise InputError("inter-edges exist iff both chi-sets are nonempty")
    if e_chi and not (max(a, b) <= e_chi <= a * b):
        raise InputError(f"|Echi|={e_chi} cannot cover chi-sets of sizes {a} and {b}")
    rng = substream(seed, 0)
    n = a + s0_omega + b + s1_omega
    L = np.arange(a)
    W0 = np.arange(a, a + s0_omega)
    R = np.arange(a + s0_omega, a + s0_omega + b)
    W1 = np.arange(a + s0_omega + b, n)

    if e_chi:
        t = np.arange(max(a, b))
        cover = np.column_stack([L[t % a], R[t % b]])
        extra = sample_absent_pairs(rng, L, R, e_chi - len(cover), pair_keys(cover, n), n)
        inter = np.vstack([cover, extra])
    else:
        inter = np.empty((0, 2), dtype=np.int64)
    keys = pair_keys(inter, n)
    intra0 = _cover_and_fill(rng, np.concatenate([L, W0]), W0, e_omega_s0, n, keys)
    intra1 = _cover_and_fill(rng, np.concatenate([R, W1]), W1, e_omega_s1, n, keys)
    g = build_graph(np.vstack([inter, intra0, intra1]), n)
    s = np.zeros(n, dtype=np.int8)
    s[a + s0_omega:] = 1
    return g, s


def synthesize_dataset(name: str, seed: int = 0):
    return synthesize_from_counts(*SOCIAL_NETWORK_STATS[name], seed=seed)
