"""Attributed undirected graphs and the sensitive-attribute partition."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from .errors import DegenerateInputError, InputError


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph stored as symmetric CSR adjacency.

    Build instances with :func:`build_graph`; the constructor trusts its
    arguments. Neighbor lists are sorted ascending and contain no self-loops.
    """

    num_nodes: int
    indptr: np.ndarray
    indices: np.ndarray

    @cached_property
    def edges(self) -> np.ndarray:
        """Unique edges as an ``(E, 2)`` array with ``u < v``, lexicographically sorted."""
        rows = np.repeat(np.arange(self.num_nodes), np.diff(self.indptr))
        keep = rows < self.indices
        return _frozen(np.column_stack([rows[keep], self.indices[keep]]).astype(np.int64))

    @property
    def num_edges(self) -> int:
        return len(self.indices) // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        return _frozen(np.diff(self.indptr))

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def adjacency(self) -> sp.csr_matrix:
        data = np.ones(len(self.indices))
        return sp.csr_matrix((data, self.indices, self.indptr),
                             shape=(self.num_nodes, self.num_nodes))

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        k = np.searchsorted(nb, v)
        return bool(k < len(nb) and nb[k] == v)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.num_nodes == other.num_nodes
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    def __hash__(self):
        return hash((self.num_nodes, self.indices.tobytes()))

    def __repr__(self):
        return f"Graph(num_nodes={self.num_nodes}, num_edges={self.num_edges})"


def build_graph(edge_list, num_nodes: int) -> Graph:
    """Build a simple undirected graph from an arbitrary edge list.

    Mirrored pairs and duplicates are collapsed and self-loops are dropped.
    Raises :class:`InputError` if any id falls outside ``[0, num_nodes)``.
    """
    num_nodes = int(num_nodes)
    if num_nodes < 0:
        raise InputError(f"num_nodes must be nonnegative, got {num_nodes}")
    e = np.asarray(edge_list, dtype=np.int64).reshape(-1, 2)
    if e.size and (e.min() < 0 or e.max() >= num_nodes):
        bad = e[(e < 0).any(axis=1) | (e >= num_nodes).any(axis=1)][0]
        raise InputError(f"edge {tuple(int(x) for x in bad)} has a node id outside [0, {num_nodes})")
    e = e[e[:, 0] != e[:, 1]]
    lo = np.minimum(e[:, 0], e[:, 1])
    hi = np.maximum(e[:, 0], e[:, 1])
    keys = np.unique(lo * max(num_nodes, 1) + hi)
    lo, hi = np.divmod(keys, max(num_nodes, 1))
    return _from_unique_pairs(lo, hi, num_nodes)


def _from_unique_pairs(lo: np.ndarray, hi: np.ndarray, num_nodes: int) -> Graph:
    rows = np.concatenate([lo, hi])
    cols = np.concatenate([hi, lo])
    order = np.lexsort((cols, rows))
    rows, cols = rows[order], cols[order]
    indptr = np.zeros(num_nodes + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=num_nodes), out=indptr[1:])
    return Graph(num_nodes, _frozen(indptr), _frozen(cols.astype(np.int64)))


def check_features(X, num_nodes: int | None = None) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2:
        raise InputError(f"feature matrix must be 2-D, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise InputError("feature matrix contains NaN or Inf")
    if num_nodes is not None and X.shape[0] != num_nodes:
        raise InputError(f"feature matrix has {X.shape[0]} rows but the graph has {num_nodes} nodes")
    return X


def check_sensitive(s, num_nodes: int | None = None) -> np.ndarray:
    s = np.asarray(s)
    if s.ndim != 1:
        raise InputError(f"sensitive attributes must be a vector, got shape {s.shape}")
    if s.size and not np.all((s == 0) | (s == 1)):
        raise InputError("sensitive attributes must be 0/1")
    if num_nodes is not None and len(s) != num_nodes:
        raise InputError(f"sensitive vector has length {len(s)} but the graph has {num_nodes} nodes")
    return s.astype(np.int8)


@dataclass(frozen=True, eq=False)
class GroupPartition:
    """Node and edge bookkeeping induced by a binary sensitive attribute.

    ``*_chi`` sets hold nodes with at least one inter-group edge, ``*_omega``
    sets hold the rest. Edge sets are index arrays into ``graph.edges``.
    """

    s: np.ndarray
    s0: np.ndarray
    s1: np.ndarray
    s0_chi: np.ndarray
    s1_chi: np.ndarray
    s0_omega: np.ndarray
    s1_omega: np.ndarray
    d_chi: np.ndarray
    d_omega: np.ndarray
    e_chi: np.ndarray
    e_omega_s0: np.ndarray
    e_omega_s1: np.ndarray

    @property
    def num_nodes(self) -> int:
        return len(self.s)

    @property
    def s_chi(self) -> np.ndarray:
        return np.union1d(self.s0_chi, self.s1_chi)

    @property
    def s_omega(self) -> np.ndarray:
        return np.union1d(self.s0_omega, self.s1_omega)

    @property
    def num_intra_edges(self) -> int:
        return len(self.e_omega_s0) + len(self.e_omega_s1)

    def counts(self) -> dict:
        """Cardinalities in the column order of the usual dataset-statistics table."""
        return {
            "s0_chi": len(self.s0_chi),
            "s0_omega": len(self.s0_omega),
            "s1_chi": len(self.s1_chi),
            "s1_omega": len(self.s1_omega),
            "e_chi": len(self.e_chi),
            "e_omega_s0": len(self.e_omega_s0),
            "e_omega_s1": len(self.e_omega_s1),
        }

    def require_both_groups(self) -> None:
        if len(self.s0) == 0 or len(self.s1) == 0:
            raise DegenerateInputError("both sensitive groups must be nonempty")


def partition(graph: Graph, s) -> GroupPartition:
    s = check_sensitive(s, graph.num_nodes)
    e = graph.edges
    su, sv = s[e[:, 0]], s[e[:, 1]]
    inter = su != sv
    n = graph.num_nodes
    d_chi = (np.bincount(e[inter, 0], minlength=n) + np.bincount(e[inter, 1], minlength=n))
    d_omega = graph.degrees - d_chi
    nodes = np.arange(n)
    chi = d_chi > 0
    g0, g1 = s == 0, s == 1
    return GroupPartition(
        s=_frozen(s.copy()),
        s0=_frozen(nodes[g0]),
        s1=_frozen(nodes[g1]),
        s0_chi=_frozen(nodes[g0 & chi]),
        s1_chi=_frozen(nodes[g1 & chi]),
        s0_omega=_frozen(nodes[g0 & ~chi]),
        s1_omega=_frozen(nodes[g1 & ~chi]),
        d_chi=_frozen(d_chi.astype(np.int64)),
        d_omega=_frozen(np.asarray(d_omega, dtype=np.int64)),
        e_chi=_frozen(np.flatnonzero(inter)),
        e_omega_s0=_frozen(np.flatnonzero(~inter & (su == 0))),
        e_omega_s1=_frozen(np.flatnonzero(~inter & (su == 1))),
    )


def induced_subgraph(graph: Graph, nodes, features=None, s=None):
    """Subgraph induced by ``nodes`` with dense, order-preserving relabeling.

    Returns ``(subgraph, features, s, id_map)`` where ``id_map[new] = old``.
    ``features`` and ``s`` may be None, in which case None is returned for them.
    """
    keep = np.unique(np.asarray(nodes, dtype=np.int64))
    if keep.size == 0:
        raise InputError("cannot induce a subgraph on an empty node set")
    if keep[0] < 0 or keep[-1] >= graph.num_nodes:
        raise InputError("subgraph node ids out of range")
    new_id = np.full(graph.num_nodes, -1, dtype=np.int64)
    new_id[keep] = np.arange(len(keep))
    e = graph.edges
    mask = (new_id[e[:, 0]] >= 0) & (new_id[e[:, 1]] >= 0)
    sub = _from_unique_pairs(new_id[e[mask, 0]], new_id[e[mask, 1]], len(keep))
    X = None if features is None else check_features(features, graph.num_nodes)[keep]
    s_out = None if s is None else check_sensitive(s, graph.num_nodes)[keep]
    return sub, X, s_out, _frozen(keep)


def with_edges(graph: Graph, edges) -> Graph:
    """New graph on the same node set with the given ``u < v`` edge array."""
    e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    return build_graph(e, graph.num_nodes)
