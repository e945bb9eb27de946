# Node sampling, edge deletion and edge addition, one at a time, then chained.
import warnings

import numpy as np

from fairaug.augment import (EdgeDeletionConfig, PipelineConfig, edge_add, edge_delete,
                             fairaug, node_sample, removal_probabilities)
from fairaug.bias import gamma1, gamma2
from fairaug.datasets import toy_case1, toy_case2
from fairaug.graph import partition
from fairaug.sampling import substream
from fairaug.verify import homophilous_graph


def show(tag, g, s):
    p = partition(g, s)
    print(f"{tag:<14} nodes={g.num_nodes:<4} inter={len(p.e_chi):<4} intra={p.num_intra_edges:<4}"
          f" gamma1={gamma1(p):.3f} gamma2={gamma2(p):.3f}")


g, X, s = toy_case1()
show("case 1", g, s)

# deletion probabilities for (inter, intra S0, intra S1)
print(removal_probabilities(partition(g, s), EdgeDeletionConfig(pi=1.0, removal_cap=0.5)))
print(removal_probabilities(partition(*toy_case2()[::2]), EdgeDeletionConfig(1.0, 0.5)))

# edge addition only: 7 new inter-edges, exactly balanced
h = edge_add(g, partition(g, s), substream(0, 3))
show("+ edges", h, s)

# node sampling keeps every chi-node and just enough omega-nodes
sub, Xs, ss, ids = node_sample(g, X, s, rng=substream(0, 1))
print("kept original ids", ids)
show("sampled", sub, ss)

# a bigger homophilous graph: most edges stay inside a group
rng = np.random.default_rng(3)
g, s = homophilous_graph(rng, 300, 0.08, 0.004)
X = rng.normal(size=(300, 4)) + s[:, None]
show("homophilous", g, s)
show("- edges", edge_delete(g, partition(g, s), rng=substream(0, 2)), s)

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    res = fairaug(g, X, s, PipelineConfig(seed=0))
show("full chain", res.graph, res.sensitive)
print("||rho||_1 %.3f -> %.3f" % (res.report_before.rho_l1, res.report_after.rho_l1))
