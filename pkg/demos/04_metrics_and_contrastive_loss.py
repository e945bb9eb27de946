# Fairness metrics for node and link predictions, plus the two-view loss.
import numpy as np

from fairaug.metrics import (accuracy, auc, delta_eo_link, delta_eo_node, delta_sp_link,
                             delta_sp_node, nt_xent_loss)

s = np.array([0, 0, 1, 1])
y = np.array([1, 1, 1, 1])
y_hat = np.array([1, 0, 1, 1])
print("node: acc", accuracy(y, y_hat), "dSP", delta_sp_node(y_hat, s), "dEO", delta_eo_node(y, y_hat, s))

# links are stratified into intra-group and inter-group candidates
edges = np.array([[0, 1], [2, 3], [0, 2], [1, 3]])
y_link = np.array([1, 0, 1, 0])
score = np.array([0.9, 0.6, 0.8, 0.1])
pred = (score >= 0.5).astype(int)
print("link: auc", auc(y_link, score), "dSP", delta_sp_link(edges, pred, s),
      "dEO", delta_eo_link(edges, y_link, pred, s))

# two orthogonal nodes seen identically in both views
print("loss", nt_xent_loss(np.eye(2), np.eye(2), tau=1.0), "=", np.log(1 + 2 / np.e))

rng = np.random.default_rng(0)
H = rng.normal(size=(50, 16))
for noise in (0.0, 0.5, 2.0):
    print("noise %.1f  loss %.4f" % (noise, nt_xent_loss(H, H + noise * rng.normal(size=H.shape))))
