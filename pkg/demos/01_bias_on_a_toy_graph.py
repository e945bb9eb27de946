# How much does one round of mean aggregation correlate features with s?
import numpy as np

from fairaug.bias import bias_report, group_stats
from fairaug.augment import masking_probs, apply_feature_mask
from fairaug.datasets import toy_case1
from fairaug.graph import partition
from fairaug.sampling import substream

np.set_printoptions(precision=3, suppress=True)

g, X, s = toy_case1()
print(g)                       # 8 nodes, 11 edges
print(partition(g, s).counts())

# group means of the raw features and their normalized gap
st = group_stats(X, s)
print("mu1 - mu0 :", st.mu1 - st.mu0)
print("delta_bar :", st.delta_bar)     # feature 3 differs most, feature 5 not at all

# the report holds every term of the bound plus the realized correlation
r = bias_report(g, X, s)
print("gamma1 %.3f  gamma2 %.3f" % (r.gamma1, r.gamma2))
print("rho       :", r.rho)
print("||rho||_1 %.3f <= bound %.3f" % (r.rho_l1, r.bound))

# adaptive masking: probabilities proportional to delta_bar, mean alpha
p = masking_probs(st.delta_bar, alpha=0.4)
print("mask probs:", p, "mean", p.mean())

Xm, kept = apply_feature_mask(X, p, substream(0, 4))
print("kept columns:", kept)
print("||rho||_1 after masking: %.3f" % bias_report(g, Xm, s).rho_l1)
