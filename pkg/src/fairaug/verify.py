"""Randomized checks of the analytic guarantees behind the augmentations.

Each property runs over ``trials`` instances; instance ``t`` of property
``k`` draws from ``substream(seed, k, t)`` so any failure can be replayed in
isolation with :func:`replay`.
"""

from __future__ import annotations

import numpy as np

from .augment import (EdgeDeletionConfig, NodeSamplingConfig, draw_masks, edge_add,
                      edge_removal_vector, masking_probs, node_sample)
from .bias import (bias_report, correlation_rho, gamma1, normalize_gap, rho_via_group_gap,
                   sigma_s, sigma_s_closed_form, mean_aggregate, correlation_bound)
from .errors import InputError
from .graph import build_graph, partition
from .sampling import substream


def random_sensitive(rng, n, min_group=2):
    while True:
        s = (rng.random(n) < rng.uniform(0.2, 0.8)).astype(np.int8)
        if min(s.sum(), n - s.sum()) >= min_group:
            return s


def erdos_renyi(rng, n, p):
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    return build_graph(np.column_stack([iu[keep], ju[keep]]), n)


def _both_groups_connected(g, s):
    deg = g.degrees
    return bool((deg[s == 0] > 0).any() and (deg[s == 1] > 0).any())


def random_er_instance(rng, max_nodes=50, num_features=8):
    """``G(N, p)`` with ``p`` in [0.1, 0.5], random ``s`` (both groups >= 2), ``H`` in [-1, 1].

    Redrawn until each group has a node of positive degree, so gamma2 is defined.
    """
    while True:
        n = int(rng.integers(4, max_nodes + 1))
        g = erdos_renyi(rng, n, rng.uniform(0.1, 0.5))
        s = random_sensitive(rng, n)
        if _both_groups_connected(g, s):
            break
    H = rng.uniform(-1.0, 1.0, size=(n, num_features))
    return g, H, s


def segregated_instance(rng, max_nodes=40):
    """No inter-edges and a group-constant scalar feature: the bound is attained with equality."""
    while True:
        n = int(rng.integers(4, max_nodes + 1))
        s = random_sensitive(rng, n)
        g = erdos_renyi(rng, n, rng.uniform(0.2, 0.6))
        g = build_graph(g.edges[s[g.edges[:, 0]] == s[g.edges[:, 1]]], n)
        if _both_groups_connected(g, s):
            break
    a, b = rng.uniform(-1, 1, size=2)
    H = np.where(s == 1, b, a).astype(float)[:, None]
    return g, H, s


def homophilous_graph(rng, n, p_in, p_out):
    s = random_sensitive(rng, n)
    iu, ju = np.triu_indices(n, k=1)
    p = np.where(s[iu] == s[ju], p_in, p_out)
    keep = rng.random(len(iu)) < p
    return build_graph(np.column_stack([iu[keep], ju[keep]]), n), s


def omega_dominant_instance(rng):
    """Graph with ``|S_a^omega| >= |S_a^chi| >= 1`` in both groups."""
    while True:
        n = int(rng.integers(12, 61))
        g, s = homophilous_graph(rng, n, rng.uniform(0.05, 0.3), rng.uniform(0.002, 0.03))
        part = partition(g, s)
        if (len(part.e_chi) and len(part.s0_omega) >= len(part.s0_chi)
                and len(part.s1_omega) >= len(part.s1_chi)):
            return g, s


# --- individual checks; each returns (ok, margin) with margin >= 0 on success

def check_bound(rng, c_l1_scale=1.0):
    worst = np.inf
    for g, H, s in (random_er_instance(rng), segregated_instance(rng)):
        r = bias_report(g, H, s)
        bound = correlation_bound(r.c_l1 * c_l1_scale, float(np.abs(r.delta).sum()),
                               r.gamma1, r.gamma2, r.delta_max, r.num_nodes)
        margin = (bound - r.rho_l1) / max(r.rho_l1, 1e-12)
        worst = min(worst, margin)
    return worst >= -1e-9, worst


def check_rho_identity(rng):
    g, H, s = random_er_instance(rng)
    Z = mean_aggregate(g, H)
    err = float(np.max(np.abs(correlation_rho(Z, s)[0] - rho_via_group_gap(Z, s))))
    return err <= 1e-10, 1e-10 - err


def check_sigma_s(rng):
    s = random_sensitive(rng, int(rng.integers(2, 500)), min_group=1)
    err = abs(sigma_s(s) - sigma_s_closed_form(s))
    return err <= 1e-12, 1e-12 - err


def keep_probabilities(delta, alpha):
    return 1.0 - masking_probs(normalize_gap(delta), alpha)


def check_masking_closed_form(rng):
    f = int(rng.integers(2, 17))
    delta = rng.normal(size=f) * rng.uniform(0.01, 2.0)
    p = keep_probabilities(delta, rng.uniform(0.0, 1.0))
    a = np.abs(delta)
    lhs = float(p @ a)
    rhs = float(p.mean() * a.sum())
    margin = min(rhs - lhs, a.sum() - lhs)
    return margin >= -1e-12, margin


def check_masking_monte_carlo(rng, draws=100_000):
    f = int(rng.integers(2, 17))
    delta = rng.normal(size=f)
    a = np.abs(delta)
    p = keep_probabilities(delta, rng.uniform(0.05, 0.5))
    q = np.full(f, p.mean())
    adaptive = draw_masks(1.0 - p, rng, draws) @ a
    uniform = draw_masks(1.0 - q, rng, draws) @ a
    se = np.sqrt(adaptive.var(ddof=1) / draws + uniform.var(ddof=1) / draws)
    gap = uniform.mean() - adaptive.mean()
    return gap >= -3 * se, float(gap / se) + 3 if se > 0 else float(gap)


def check_edge_deletion(rng, draws=2000):
    while True:
        g, s = homophilous_graph(rng, int(rng.integers(20, 61)), 0.3, 0.05)
        part = partition(g, s)
        pi = rng.uniform(0.5, 1.0)
        n_chi = len(part.e_chi)
        if n_chi and pi * n_chi <= 2 * min(len(part.e_omega_s0), len(part.e_omega_s1)):
            break
    p = edge_removal_vector(g, part, EdgeDeletionConfig(pi=pi, removal_cap=1.0))
    kept = rng.random((draws, len(p))) >= p
    worst = np.inf
    for idx, expected in ((part.e_chi, pi * n_chi),
                          (part.e_omega_s0, pi * n_chi / 2),
                          (part.e_omega_s1, pi * n_chi / 2)):
        counts = kept[:, idx].sum(axis=1)
        var = float(np.sum(p[idx] * (1 - p[idx])))
        err = abs(counts.mean() - expected)
        if var == 0:
            worst = min(worst, 5.0 if err <= 1e-9 * max(expected, 1) else -np.inf)
        else:
            worst = min(worst, 5.0 - err / np.sqrt(var / draws))
    return worst >= 0, worst


def check_node_sampling(rng):
    g, s = omega_dominant_instance(rng)
    X = np.zeros((g.num_nodes, 1))
    cfg = NodeSamplingConfig(0.0, 0.0, 0.0)
    g2, _, s2, _ = node_sample(g, X, s, partition(g, s), cfg, rng)
    val = gamma1(partition(g2, s2))
    return val <= 1e-12, 1e-12 - val


def check_edge_addition(rng):
    while True:
        g, s = homophilous_graph(rng, int(rng.integers(10, 61)), rng.uniform(0.1, 0.4), 0.03)
        part = partition(g, s)
        need = part.num_intra_edges - len(part.e_chi)
        absent = len(part.s0) * len(part.s1) - len(part.e_chi)
        if need >= 0 and absent >= need:
            break
    g2 = edge_add(g, part, rng)
    p2 = partition(g2, s)
    e = g2.edges
    old = {tuple(x) for x in g.edges}
    added = [tuple(x) for x in e if tuple(x) not in old]
    ok = (len(p2.e_chi) == p2.num_intra_edges
          and len(added) == need
          and g2.num_edges == len({tuple(x) for x in e})
          and bool(np.all(e[:, 0] != e[:, 1]))
          and all(s[u] != s[v] for u, v in added))
    return ok, float(-abs(len(p2.e_chi) - p2.num_intra_edges))


PROPERTIES = {
    "theorem1_bound": check_bound,
    "rho_identity": check_rho_identity,
    "sigma_s_identity": check_sigma_s,
    "masking_closed_form": check_masking_closed_form,
    "masking_monte_carlo": check_masking_monte_carlo,
    "edge_deletion_expectation": check_edge_deletion,
    "node_sampling_gamma1": check_node_sampling,
    "edge_addition_balance": check_edge_addition,
}

# expensive checks run on a capped number of instances
TRIAL_CAPS = {"masking_monte_carlo": 10, "edge_deletion_expectation": 50}


def replay(name: str, seed: int, trial: int, **kw):
    k = list(PROPERTIES).index(name)
    return PROPERTIES[name](substream(seed, k, trial), **kw)


def run_verification(trials: int = 200, seed: int = 0, c_l1_scale: float = 1.0) -> dict:
    """Run every property; ``c_l1_scale`` corrupts the bound (negative-control hook)."""
    if int(trials) < 1:
        raise InputError("trials must be >= 1")
    results = {}
    for k, (name, check) in enumerate(PROPERTIES.items()):
        n = min(trials, TRIAL_CAPS.get(name, trials))
        kw = {"c_l1_scale": c_l1_scale} if name == "theorem1_bound" else {}
        passed, worst, failures = 0, np.inf, []
        for t in range(n):
            ok, margin = check(substream(seed, k, t), **kw)
            passed += bool(ok)
            worst = min(worst, float(margin))
            if not ok:
                failures.append({"trial": t, "seed": int(seed), "property_index": k})
        results[name] = {"trials": n, "passed": passed, "failed": n - passed,
                         "worst_margin": worst, "failures": failures[:10]}
    return {"seed": int(seed), "all_passed": all(r["failed"] == 0 for r in results.values()),
            "properties": results}
