"""Group-fairness and utility metrics, and the two-view contrastive objective."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp
from scipy.stats import rankdata

from .errors import DegenerateInputError, InputError


@dataclass(frozen=True)
class BinaryPredictions:
    """Labels and predictions for nodes (``ids`` is a vector) or edges (``ids`` is ``(M, 2)``)."""

    ids: np.ndarray
    y: np.ndarray
    y_hat: np.ndarray
    score: np.ndarray | None = None

    def __post_init__(self):
        n = len(self.y)
        if len(self.ids) != n or len(self.y_hat) != n:
            raise InputError("ids, y and y_hat must have equal length")
        _binary(self.y, "y")
        _binary(self.y_hat, "y_hat")
        if self.score is not None:
            sc = np.asarray(self.score, dtype=float)
            if len(sc) != n or not np.all(np.isfinite(sc)) or sc.min(initial=0) < 0 or sc.max(initial=0) > 1:
                raise InputError("scores must be finite values in [0, 1], one per record")

    @property
    def is_edges(self) -> bool:
        return np.ndim(self.ids) == 2


def _binary(v, name):
    v = np.asarray(v)
    if not np.all((v == 0) | (v == 1)):
        raise InputError(f"{name} must be binary 0/1")
    return v.astype(np.int8)


def threshold(score, at: float = 0.5) -> np.ndarray:
    return (np.asarray(score, dtype=float) >= at).astype(np.int8)


def _rate_gap(y_hat, groups, what):
    y_hat = _binary(y_hat, "y_hat")
    groups = np.asarray(groups, dtype=bool)
    a, b = y_hat[~groups], y_hat[groups]
    if len(a) == 0 or len(b) == 0:
        raise InputError(f"{what}: both strata must be nonempty")
    return float(abs(a.mean() - b.mean()))


def _positives_only(y, y_hat, groups, what):
    y = _binary(y, "y")
    groups = np.asarray(groups, dtype=bool)
    pos = y == 1
    if not (pos & ~groups).any() or not (pos & groups).any():
        raise DegenerateInputError(f"{what}: each stratum needs at least one positive example")
    return np.asarray(y_hat)[pos], groups[pos]


def delta_sp_node(y_hat, s) -> float:
    """``|P(y_hat=1 | s=0) - P(y_hat=1 | s=1)|``."""
    return _rate_gap(y_hat, _binary(s, "s") == 1, "statistical parity")


def delta_eo_node(y, y_hat, s) -> float:
    """Statistical parity restricted to ground-truth positives."""
    yh, g = _positives_only(y, y_hat, _binary(s, "s") == 1, "equal opportunity")
    return _rate_gap(yh, g, "equal opportunity")


def is_inter_edge(edges, s) -> np.ndarray:
    """True where the two endpoints of a candidate edge fall in different groups."""
    e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    s = _binary(s, "s")
    if e.size and (e.min() < 0 or e.max() >= len(s)):
        raise InputError("edge endpoint outside the sensitive-attribute vector")
    return s[e[:, 0]] != s[e[:, 1]]


def delta_sp_link(edges, y_hat, s) -> float:
    """Positive-prediction rate gap between inter- and intra-group candidate edges."""
    return _rate_gap(y_hat, is_inter_edge(edges, s), "link statistical parity")


def delta_eo_link(edges, y, y_hat, s) -> float:
    yh, g = _positives_only(y, y_hat, is_inter_edge(edges, s), "link equal opportunity")
    return _rate_gap(yh, g, "link equal opportunity")


def accuracy(y, y_hat) -> float:
    y, y_hat = _binary(y, "y"), _binary(y_hat, "y_hat")
    if len(y) == 0:
        raise InputError("accuracy of an empty prediction set")
    return float(np.mean(y == y_hat))


def auc(y, score) -> float:
    """ROC AUC as the Mann-Whitney statistic, ties credited 1/2."""
    y = _binary(y, "y")
    score = np.asarray(score, dtype=float)
    n1 = int(y.sum())
    n0 = len(y) - n1
    if n1 == 0 or n0 == 0:
        raise DegenerateInputError("AUC needs at least one positive and one negative")
    ranks = rankdata(score)
    return float((ranks[y == 1].sum() - n1 * (n1 + 1) / 2) / (n1 * n0))


def _unit_rows(H, name):
    H = np.asarray(H, dtype=float)
    norms = np.linalg.norm(H, axis=1, keepdims=True)
    if np.any(norms == 0):
        raise InputError(f"{name} has an all-zero row; cosine similarity is undefined")
    return H / norms


def _anchor_losses(a, b, tau):
    # positives on the diagonal of a @ b.T, intra-view negatives off the diagonal of a @ a.T
    between = a @ b.T / tau
    within = a @ a.T / tau
    np.fill_diagonal(within, -np.inf)
    denom = logsumexp(np.hstack([between, within]), axis=1)
    return denom - np.diag(between)


def nt_xent_loss(H1, H2, tau: float = 0.4) -> float:
    """Symmetric two-view contrastive loss with cosine similarity.

    The projection head is the identity. Each anchor's denominator is its
    positive pair plus all other nodes from both views.
    """
    if not tau > 0:
        raise InputError(f"tau must be positive, got {tau}")
    if np.shape(H1) != np.shape(H2) or np.ndim(H1) != 2:
        raise InputError("the two views must be matrices of the same shape")
    a, b = _unit_rows(H1, "H1"), _unit_rows(H2, "H2")
    n = len(a)
    return float((_anchor_losses(a, b, tau).sum() + _anchor_losses(b, a, tau).sum()) / (2 * n))
