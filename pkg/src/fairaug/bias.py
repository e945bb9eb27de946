"""Correlation between aggregated representations and a binary sensitive attribute.

Everything here is a pure function of a graph, a feature matrix and the
sensitive vector. :func:`bias_report` collects the terms of the upper bound

    ||rho||_1 <= ||c||_1 * (||delta||_1 * max(gamma1, gamma2) + 2 N Delta)

on the correlation of mean-aggregated features with ``s``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np
import scipy.sparse as sp

from .errors import DegenerateInputError, InputError
from .graph import Graph, GroupPartition, check_features, check_sensitive, partition


@dataclass(frozen=True)
class AggregationConfig:
    """Parameter-free mean aggregation.

    With ``include_self`` each node averages over its closed neighborhood
    (rows of ``A + I`` normalized to sum to one); otherwise over its open
    neighborhood, which is undefined for isolated nodes.
    """

    num_layers: int = 1
    include_self: bool = True

    def __post_init__(self):
        if int(self.num_layers) < 1:
            raise InputError(f"num_layers must be >= 1, got {self.num_layers}")


def _propagation_matrix(graph: Graph, include_self: bool) -> sp.csr_matrix:
    A = graph.adjacency()
    if include_self:
        A = A + sp.identity(graph.num_nodes, format="csr")
    deg = np.asarray(A.sum(axis=1)).ravel()
    if np.any(deg == 0):
        raise DegenerateInputError(
            "mean aggregation without self term is undefined for isolated nodes")
    return sp.csr_matrix(sp.diags(1.0 / deg) @ A)


def mean_aggregate(graph: Graph, H, cfg: AggregationConfig | None = None) -> np.ndarray:
    cfg = cfg or AggregationConfig()
    H = check_features(H, graph.num_nodes)
    P = _propagation_matrix(graph, cfg.include_self)
    Z = H
    for _ in range(cfg.num_layers):
        Z = P @ Z
    return np.asarray(Z)


class GroupStats(NamedTuple):
    mu0: np.ndarray
    mu1: np.ndarray
    delta: np.ndarray
    delta_bar: np.ndarray
    delta0: float
    delta1: float
    delta_max: float


def normalize_gap(delta) -> np.ndarray:
    """Min-max normalized ``|delta|``; all zeros when ``|delta|`` is constant."""
    a = np.abs(np.asarray(delta, dtype=float))
    span = a.max() - a.min() if a.size else 0.0
    if span <= 0:
        return np.zeros_like(a)
    return (a - a.min()) / span


def _group_masks(s):
    s = check_sensitive(s)
    g0, g1 = s == 0, s == 1
    if not g0.any() or not g1.any():
        raise DegenerateInputError("both sensitive groups must be nonempty")
    return g0, g1


def group_stats(H, part: GroupPartition | np.ndarray) -> GroupStats:
    """Group means, their difference ``mu0 - mu1`` and maximal deviations."""
    s = part.s if isinstance(part, GroupPartition) else part
    H = check_features(H, len(s))
    g0, g1 = _group_masks(s)
    mu0 = H[g0].mean(axis=0)
    mu1 = H[g1].mean(axis=0)
    delta = mu0 - mu1
    d0 = float(np.abs(H[g0] - mu0).max(initial=0.0))
    d1 = float(np.abs(H[g1] - mu1).max(initial=0.0))
    return GroupStats(mu0, mu1, delta, normalize_gap(delta), d0, d1, max(d0, d1))


def population_std(Z) -> np.ndarray:
    Z = np.asarray(Z, dtype=float)
    return np.sqrt(np.mean((Z - Z.mean(axis=0)) ** 2, axis=0))


def _constant_columns(Z, sigma):
    scale = 1.0 + np.abs(Z).max(axis=0, initial=0.0)
    return sigma <= 1e-12 * scale


def sigma_s(s) -> float:
    s = check_sensitive(s).astype(float)
    return float(np.sqrt(np.mean((s - s.mean()) ** 2)))


def sigma_s_closed_form(s) -> float:
    s = check_sensitive(s)
    n1 = int(s.sum())
    return float(np.sqrt((len(s) - n1) * n1) / len(s))


def correlation_rho(Z, s):
    """Pearson correlation of each column of ``Z`` with ``s``.

    Constant columns get correlation 0. Returns ``(rho, ||rho||_1)``.
    """
    s = check_sensitive(s)
    Z = check_features(Z, len(s))
    if len(s) < 2 or s.min() == s.max():
        raise DegenerateInputError("correlation with s needs both groups present (sigma_s = 0)")
    zc = Z - Z.mean(axis=0)
    sc = s - s.mean()
    num = sc @ zc
    den = np.sqrt((zc ** 2).sum(axis=0) * (sc ** 2).sum())
    flat = _constant_columns(Z, population_std(Z))
    rho = np.where(flat, 0.0, num / np.where(flat, 1.0, den))
    rho = np.clip(rho, -1.0, 1.0)
    return rho, float(np.abs(rho).sum())


def correlation_scale(Z, s) -> np.ndarray:
    """``c_i = sqrt(|S0||S1|) / (N sigma(z_i))``, with 0 for constant columns."""
    s = check_sensitive(s)
    Z = check_features(Z, len(s))
    n1 = int(s.sum())
    sig = population_std(Z)
    flat = _constant_columns(Z, sig)
    return np.where(flat, 0.0, np.sqrt((len(s) - n1) * n1) / (len(s) * np.where(flat, 1.0, sig)))


def epsilon_gap(Z, part: GroupPartition | np.ndarray):
    """Difference of group means of ``Z`` (group 1 minus group 0) and its l1 norm."""
    s = part.s if isinstance(part, GroupPartition) else part
    Z = check_features(Z, len(s))
    g0, g1 = _group_masks(s)
    eps = Z[g1].mean(axis=0) - Z[g0].mean(axis=0)
    return eps, float(np.abs(eps).sum())


def rho_via_group_gap(Z, part: GroupPartition | np.ndarray) -> np.ndarray:
    s = part.s if isinstance(part, GroupPartition) else part
    if check_sensitive(s).min() == check_sensitive(s).max():
        raise DegenerateInputError("correlation with s needs both groups present (sigma_s = 0)")
    eps, _ = epsilon_gap(Z, s)
    return correlation_scale(Z, s) * eps


def gamma1(part: GroupPartition) -> float:
    part.require_both_groups()
    return gamma1_from_counts(len(part.s0_chi), len(part.s0), len(part.s1_chi), len(part.s1))


def gamma1_from_counts(s0_chi: int, s0: int, s1_chi: int, s1: int) -> float:
    if s0 <= 0 or s1 <= 0:
        raise DegenerateInputError("both sensitive groups must be nonempty")
    return abs(1.0 - s0_chi / s0 - s1_chi / s1)


def inter_ratio_means(part: GroupPartition):
    """Per-group mean of ``d_chi / (d_chi + d_omega)`` over non-isolated nodes."""
    part.require_both_groups()
    deg = part.d_chi + part.d_omega
    out = []
    for grp in (part.s0, part.s1):
        g = grp[deg[grp] > 0]
        if len(g) == 0:
            raise DegenerateInputError("a sensitive group has no node with positive degree")
        out.append(float(np.mean(part.d_chi[g] / deg[g])))
    return out[0], out[1]


def gamma2(part: GroupPartition) -> float:
    m0, m1 = inter_ratio_means(part)
    return abs(1.0 - 2.0 * min(m0, m1))


def correlation_bound(c_l1: float, delta_l1: float, g1: float, g2: float,
                   delta_max: float, num_nodes: int) -> float:
    return float(c_l1 * (delta_l1 * max(g1, g2) + 2.0 * num_nodes * delta_max))


@dataclass(frozen=True)
class BiasReport:
    """All bias quantities for one (graph, features, s) triple.

    ``mu*``, ``delta*`` come from the input of the last aggregation layer;
    ``c``, ``sigma_z``, ``rho``, ``epsilon`` from its output. Constant output
    columns carry ``c = 0`` and ``rho = 0``.
    """

    num_nodes: int
    mu0: np.ndarray
    mu1: np.ndarray
    delta: np.ndarray
    delta_bar: np.ndarray
    delta0: float
    delta1: float
    delta_max: float
    c: np.ndarray
    c_l1: float
    sigma_z: np.ndarray
    sigma_s: float
    gamma1: float
    gamma2: float
    rho: np.ndarray
    rho_l1: float
    bound: float
    epsilon: np.ndarray
    epsilon_l1: float

    def to_dict(self) -> dict:
        return {k: (v.tolist() if isinstance(v, np.ndarray) else v)
                for k, v in asdict(self).items()}


REPORT_FIELDS = tuple(BiasReport.__dataclass_fields__)


def bias_report(graph: Graph, X, s, cfg: AggregationConfig | None = None) -> BiasReport:
    cfg = cfg or AggregationConfig()
    part = partition(graph, s)
    part.require_both_groups()
    H = check_features(X, graph.num_nodes)
    if cfg.num_layers > 1:
        H = mean_aggregate(graph, H, AggregationConfig(cfg.num_layers - 1, cfg.include_self))
    Z = mean_aggregate(graph, H, AggregationConfig(1, cfg.include_self))

    st = group_stats(H, part)
    c = correlation_scale(Z, part.s)
    rho, rho_l1 = correlation_rho(Z, part.s)
    eps, eps_l1 = epsilon_gap(Z, part)
    g1, g2 = gamma1(part), gamma2(part)
    c_l1 = float(c.sum())
    return BiasReport(
        num_nodes=graph.num_nodes,
        mu0=st.mu0, mu1=st.mu1, delta=st.delta, delta_bar=st.delta_bar,
        delta0=st.delta0, delta1=st.delta1, delta_max=st.delta_max,
        c=c, c_l1=c_l1, sigma_z=population_std(Z), sigma_s=sigma_s(part.s),
        gamma1=g1, gamma2=g2, rho=rho, rho_l1=rho_l1,
        bound=correlation_bound(c_l1, float(np.abs(st.delta).sum()), g1, g2,
                             st.delta_max, graph.num_nodes),
        epsilon=eps, epsilon_l1=eps_l1,
    )
