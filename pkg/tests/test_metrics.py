import itertools

import numpy as np
import pytest

from fairaug.errors import DegenerateInputError, InputError
from fairaug.metrics import (BinaryPredictions, accuracy, auc, delta_eo_link, delta_eo_node,
                             delta_sp_link, delta_sp_node, is_inter_edge, nt_xent_loss, threshold)


def test_node_hand_example():
    s, y, yh = [0, 0, 1, 1], [1, 1, 1, 1], [1, 0, 1, 1]
    assert delta_sp_node(yh, s) == 0.5
    assert delta_eo_node(y, yh, s) == 0.5
    assert accuracy(y, yh) == 0.75


def test_perfect_predictions():
    y = np.array([1, 0, 1, 0, 1, 1])
    s = np.array([0, 0, 0, 1, 1, 1])
    assert delta_eo_node(y, y, s) == 0.0 and accuracy(y, y) == 1.0


def test_eo_ignores_negatives():
    s, y = [0, 0, 1, 1], [1, 0, 1, 0]
    assert delta_eo_node(y, [1, 1, 1, 0], s) == 0.0


def test_eo_needs_positives_in_both_groups():
    with pytest.raises(DegenerateInputError):
        delta_eo_node([1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1])


def test_sp_needs_both_groups():
    with pytest.raises(InputError):
        delta_sp_node([1, 0], [1, 1])


def test_link_metrics():
    s = np.array([0, 0, 1, 1])
    edges = np.array([[0, 1], [2, 3], [0, 2], [1, 3]])   # intra, intra, inter, inter
    assert is_inter_edge(edges, s).tolist() == [False, False, True, True]
    assert delta_sp_link(edges, [1, 1, 1, 0], s) == 0.5
    assert delta_eo_link(edges, [1, 1, 1, 1], [1, 0, 1, 1], s) == 0.5


def brute_auc(y, score):
    pos = [sc for yy, sc in zip(y, score) if yy == 1]
    neg = [sc for yy, sc in zip(y, score) if yy == 0]
    wins = sum(1.0 if p > n else 0.5 if p == n else 0.0 for p, n in itertools.product(pos, neg))
    return wins / (len(pos) * len(neg))


def test_auc_matches_pairwise_count(rng):
    for _ in range(50):
        n = int(rng.integers(2, 40))
        y = rng.integers(0, 2, n)
        y[:2] = [0, 1]
        score = np.round(rng.random(n), 1)      # force ties
        assert auc(y, score) == pytest.approx(brute_auc(y, score), abs=1e-12)


def test_auc_extremes():
    assert auc([0, 0, 1, 1], [0.1, 0.2, 0.8, 0.9]) == 1.0
    assert auc([0, 0, 1, 1], [0.9, 0.8, 0.2, 0.1]) == 0.0
    with pytest.raises(DegenerateInputError):
        auc([1, 1], [0.2, 0.3])


def test_threshold():
    assert threshold([0.2, 0.5, 0.9]).tolist() == [0, 1, 1]


def test_predictions_validation():
    with pytest.raises(InputError):
        BinaryPredictions(np.arange(3), np.array([0, 1, 2]), np.array([0, 1, 1]))
    with pytest.raises(InputError):
        BinaryPredictions(np.arange(2), np.array([0, 1]), np.array([0, 1]), np.array([0.2, 1.5]))
    assert BinaryPredictions(np.zeros((2, 2), int), np.array([0, 1]), np.array([0, 1])).is_edges


def loop_loss(H1, H2, tau):
    def cos(a, b):
        return a @ b / (np.linalg.norm(a) * np.linalg.norm(b))

    n, total = len(H1), 0.0
    for A, B in ((H1, H2), (H2, H1)):
        for i in range(n):
            pos = np.exp(cos(A[i], B[i]) / tau)
            neg = sum(np.exp(cos(A[i], B[k]) / tau) for k in range(n) if k != i)
            neg += sum(np.exp(cos(A[i], A[k]) / tau) for k in range(n) if k != i)
            total += -np.log(pos / (pos + neg))
    return total / (2 * n)


def test_loss_orthogonal_pair():
    H = np.eye(2)
    assert nt_xent_loss(H, H, tau=1.0) == pytest.approx(np.log(1 + 2 / np.e), abs=1e-12)


def test_loss_matches_loops(rng):
    for tau in (0.4, 1.0):
        H1, H2 = rng.normal(size=(7, 3)), rng.normal(size=(7, 3))
        assert nt_xent_loss(H1, H2, tau) == pytest.approx(loop_loss(H1, H2, tau), rel=1e-12)


def test_loss_symmetric_and_permutation_invariant(rng):
    H1, H2 = rng.normal(size=(9, 4)), rng.normal(size=(9, 4))
    perm = rng.permutation(9)
    ref = nt_xent_loss(H1, H2)
    assert abs(nt_xent_loss(H2, H1) - ref) < 1e-12
    assert abs(nt_xent_loss(H1[perm], H2[perm]) - ref) < 1e-12


def test_loss_scale_invariant(rng):
    H1, H2 = rng.normal(size=(5, 3)), rng.normal(size=(5, 3))
    assert nt_xent_loss(3 * H1, 0.5 * H2) == pytest.approx(nt_xent_loss(H1, H2), rel=1e-12)


@pytest.mark.parametrize("bad", [dict(tau=0.0), dict(H2=np.ones((3, 2)))])
def test_loss_rejects_bad_input(bad):
    kw = dict(H1=np.ones((2, 2)), H2=np.ones((2, 2)), tau=0.5) | bad
    with pytest.raises(InputError):
        nt_xent_loss(**kw)


def test_loss_rejects_zero_rows():
    with pytest.raises(InputError):
        nt_xent_loss(np.array([[0.0, 0.0], [1.0, 0.0]]), np.eye(2))
