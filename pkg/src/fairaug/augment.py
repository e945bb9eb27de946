"""Fairness-aware graph augmentations.

Four steps, each driven by its own random stream: node sampling (balances
chi/omega populations per group), edge deletion and edge addition (balance
inter- vs intra-edges) and feature masking (hides features whose group means
differ most). :func:`fairaug` chains them in that order.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .bias import AggregationConfig, BiasReport, bias_report, group_stats
from .errors import EdgeAdditionShortfall, EdgeDeletionSkipped, InputError
from .graph import (Graph, GroupPartition, check_features, check_sensitive,
                    induced_subgraph, partition, with_edges)
from .sampling import pair_keys, sample_absent_pairs, substream

STEP_NS, STEP_ED, STEP_EA, STEP_FM = 1, 2, 3, 4


@dataclass(frozen=True)
class MaskingConfig:
    alpha: float = 0.1

    def __post_init__(self):
        if not self.alpha >= 0:
            raise InputError(f"alpha must be >= 0, got {self.alpha}")


@dataclass(frozen=True)
class NodeSamplingConfig:
    """Sampling floors are fractions of the subset being sampled from."""

    min_fraction_chi_dominant: float = 0.5
    min_fraction_omega_dominant: float = 0.25
    phi: float = 0.0

    def __post_init__(self):
        for name in ("min_fraction_chi_dominant", "min_fraction_omega_dominant"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise InputError(f"{name} must lie in [0, 1], got {v}")
        if not -0.5 < self.phi < 0.5:
            raise InputError(f"phi must lie in (-0.5, 0.5), got {self.phi}")


@dataclass(frozen=True)
class EdgeDeletionConfig:
    """``removal_cap`` clamps intra-group removal probabilities from above; None means ``pi / 2``."""

    pi: float = 1.0
    removal_cap: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.pi <= 1.0:
            raise InputError(f"pi must lie in [0, 1], got {self.pi}")
        if self.removal_cap is not None and not 0.0 <= self.removal_cap <= 1.0:
            raise InputError(f"removal_cap must lie in [0, 1], got {self.removal_cap}")

    @property
    def cap(self) -> float:
        return self.pi / 2 if self.removal_cap is None else self.removal_cap


@dataclass(frozen=True)
class PipelineConfig:
    enable_ns: bool = True
    enable_ed: bool = True
    enable_ea: bool = True
    enable_fm: bool = True
    masking: MaskingConfig = field(default_factory=MaskingConfig)
    sampling: NodeSamplingConfig = field(default_factory=NodeSamplingConfig)
    deletion: EdgeDeletionConfig = field(default_factory=EdgeDeletionConfig)
    aggregation: AggregationConfig = field(default_factory=AggregationConfig)
    seed: int = 0

    def to_flat(self) -> dict:
        return {
            "enable_ns": self.enable_ns, "enable_ed": self.enable_ed,
            "enable_ea": self.enable_ea, "enable_fm": self.enable_fm,
            "alpha": self.masking.alpha, "pi": self.deletion.pi,
            "removal_cap": self.deletion.cap,
            "min_fraction_chi": self.sampling.min_fraction_chi_dominant,
            "min_fraction_omega": self.sampling.min_fraction_omega_dominant,
            "phi": self.sampling.phi, "seed": self.seed,
        }


# --- feature masking -------------------------------------------------------

def masking_probs(delta_bar, alpha: float) -> np.ndarray:
    """Per-feature masking probabilities ``min(alpha * delta_bar / mean(delta_bar), 1)``."""
    d = np.asarray(delta_bar, dtype=float)
    m = d.mean() if d.size else 0.0
    if m <= 0:
        return np.zeros_like(d)
    return np.minimum(alpha * d / m, 1.0)


def draw_masks(p_mask, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Bernoulli keep-masks; entry ``i`` is 0 with probability ``p_mask[i]``."""
    p = np.asarray(p_mask, dtype=float)
    shape = p.shape if size is None else (size,) + p.shape
    return (rng.random(shape) >= p).astype(np.int8)


def apply_feature_mask(X, p_mask, rng: np.random.Generator):
    """Zero out whole feature columns; one draw per feature, shared by all nodes.

    Returns ``(masked X, mask)``.
    """
    X = check_features(X)
    p = np.asarray(p_mask, dtype=float)
    if p.shape != (X.shape[1],):
        raise InputError(f"p_mask has shape {p.shape}, expected ({X.shape[1]},)")
    m = draw_masks(p, rng)
    Xm = X.copy()
    Xm[:, m == 0] = 0.0
    return Xm, m


# --- node sampling ---------------------------------------------------------

def _ceil_frac(f: float, n: int) -> int:
    return math.ceil(round(f * n, 9))


def node_sampling_targets(part: GroupPartition, cfg: NodeSamplingConfig | None = None):
    """Which subsets get sampled and how many nodes to keep from each.

    Returns ``(branch, k0, k1)``. In the ``"omega"`` branch all chi-nodes are
    kept and ``k_a`` omega-nodes are drawn from group ``a``; in the ``"chi"``
    branch the roles are swapped.
    """
    cfg = cfg or NodeSamplingConfig()
    part.require_both_groups()
    n_chi = len(part.s0_chi) + len(part.s1_chi)
    n_omega = len(part.s0_omega) + len(part.s1_omega)
    if n_omega >= n_chi:
        ks = []
        for chi, omega, ratio in ((part.s0_chi, part.s0_omega, 0.5 + cfg.phi),
                                  (part.s1_chi, part.s1_omega, 0.5 - cfg.phi)):
            balanced = int(round(len(chi) * (1.0 - ratio) / ratio))
            k = max(balanced, _ceil_frac(cfg.min_fraction_omega_dominant, len(omega)))
            ks.append(min(k, len(omega)))
        return "omega", ks[0], ks[1]
    ks = []
    for chi, omega in ((part.s0_chi, part.s0_omega), (part.s1_chi, part.s1_omega)):
        k = max(len(omega), _ceil_frac(cfg.min_fraction_chi_dominant, len(chi)))
        ks.append(min(k, len(chi)))
    return "chi", ks[0], ks[1]


def node_sample(graph: Graph, X, s, part: GroupPartition | None = None,
                cfg: NodeSamplingConfig | None = None, rng=None):
    """Induced subgraph on a population-balanced node subset.

    Returns ``(graph, X, s, id_map)`` with ``id_map[new] = old``.
    """
    rng = rng if rng is not None else substream(0, STEP_NS)
    part = part if part is not None else partition(graph, s)
    branch, k0, k1 = node_sampling_targets(part, cfg)
    if branch == "omega":
        kept = [part.s0_chi, part.s1_chi]
        pools = [part.s0_omega, part.s1_omega]
    else:
        kept = [part.s0_omega, part.s1_omega]
        pools = [part.s0_chi, part.s1_chi]
    picked = [rng.choice(pool, size=k, replace=False) for pool, k in zip(pools, (k0, k1))]
    nodes = np.sort(np.concatenate(kept + picked))
    return induced_subgraph(graph, nodes, X, s)


# --- edge deletion ---------------------------------------------------------

def removal_probabilities(part: GroupPartition, cfg: EdgeDeletionConfig | None = None):
    """Removal probability for (inter, intra-S0, intra-S1) edges.

    Inter-edges go with probability ``1 - pi``. Intra-group probabilities keep
    ``pi |Echi| / 2`` edges of each group in expectation before the cap; they
    are clipped to ``[0, cap]``.
    """
    cfg = cfg or EdgeDeletionConfig()
    n_chi = len(part.e_chi)
    p_inter = 1.0 - cfg.pi
    out = [p_inter]
    for name, e in (("S0", part.e_omega_s0), ("S1", part.e_omega_s1)):
        if len(e) == 0:
            if n_chi:
                warnings.warn(f"no intra-edges in {name}; skipping its deletion",
                              EdgeDeletionSkipped, stacklevel=3)
            out.append(0.0)
            continue
        p = 1.0 - cfg.pi * n_chi / (2.0 * len(e))
        out.append(min(max(p, 0.0), cfg.cap))
    return tuple(out)


def edge_removal_vector(graph: Graph, part: GroupPartition,
                        cfg: EdgeDeletionConfig | None = None) -> np.ndarray:
    p_inter, p0, p1 = removal_probabilities(part, cfg)
    p = np.empty(graph.num_edges)
    p[part.e_chi] = p_inter
    p[part.e_omega_s0] = p0
    p[part.e_omega_s1] = p1
    return p


def edge_delete(graph: Graph, part: GroupPartition, cfg: EdgeDeletionConfig | None = None,
                rng=None) -> Graph:
    """Remove each edge independently with its group-dependent probability."""
    rng = rng if rng is not None else substream(0, STEP_ED)
    p = edge_removal_vector(graph, part, cfg)
    keep = rng.random(len(p)) >= p
    return with_edges(graph, graph.edges[keep])


# --- edge addition ---------------------------------------------------------

def edge_add(graph: Graph, part: GroupPartition, rng=None) -> Graph:
    """Add ``|Eomega| - |Echi|`` new inter-edges so the two counts become equal.

    Pairs are drawn uniformly from absent ``S0chi x S1chi`` pairs; if that pool
    is too small the rest come from absent ``S0 x S1`` pairs. Warns with
    :class:`EdgeAdditionShortfall` when even that is not enough.
    """
    rng = rng if rng is not None else substream(0, STEP_EA)
    k = part.num_intra_edges - len(part.e_chi)
    if k < 0:
        warnings.warn("more inter- than intra-edges; edge addition leaves the graph unchanged",
                      EdgeAdditionShortfall, stacklevel=2)
    if k <= 0:
        return graph
    n = graph.num_nodes
    forbidden = pair_keys(graph.edges, n)
    new = sample_absent_pairs(rng, part.s0_chi, part.s1_chi, k, forbidden, n)
    if len(new) < k:
        forbidden = np.union1d(forbidden, pair_keys(new, n))
        more = sample_absent_pairs(rng, part.s0, part.s1, k - len(new), forbidden, n)
        new = np.vstack([new, more])
    if len(new) < k:
        warnings.warn(f"only {len(new)} of {k} inter-edges could be added",
                      EdgeAdditionShortfall, stacklevel=2)
    return with_edges(graph, np.vstack([graph.edges, new]))


# --- pipeline ----------------------------------------------------------------

class FairAugResult(NamedTuple):
    graph: Graph
    features: np.ndarray
    sensitive: np.ndarray
    id_map: np.ndarray
    report_before: BiasReport
    report_after: BiasReport


def fairaug(graph: Graph, X, s, cfg: PipelineConfig | None = None) -> FairAugResult:
    """Node sampling, edge deletion, edge addition, feature masking, in that order.

    The partition is recomputed after every topology change. Each step draws
    from ``substream(cfg.seed, step)``, so the output is a deterministic
    function of the inputs and the config.
    """
    cfg = cfg or PipelineConfig()
    X = check_features(X, graph.num_nodes)
    s = check_sensitive(s, graph.num_nodes)
    before = bias_report(graph, X, s, cfg.aggregation)

    g, Xc, sc = graph, X, s
    id_map = np.arange(graph.num_nodes)
    part = partition(g, sc)
    if cfg.enable_ns:
        g, Xc, sc, sub_ids = node_sample(g, Xc, sc, part, cfg.sampling,
                                         substream(cfg.seed, STEP_NS))
        id_map = id_map[sub_ids]
        part = partition(g, sc)
    if cfg.enable_ed:
        g = edge_delete(g, part, cfg.deletion, substream(cfg.seed, STEP_ED))
        part = partition(g, sc)
    if cfg.enable_ea:
        g = edge_add(g, part, substream(cfg.seed, STEP_EA))
        part = partition(g, sc)
    if cfg.enable_fm:
        p = masking_probs(group_stats(Xc, part).delta_bar, cfg.masking.alpha)
        Xc, _ = apply_feature_mask(Xc, p, substream(cfg.seed, STEP_FM))

    after = bias_report(g, Xc, sc, cfg.aggregation)
    return FairAugResult(g, Xc, sc, id_map, before, after)
