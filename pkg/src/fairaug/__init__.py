"""Bias analysis and fairness-aware augmentations for graphs with a binary sensitive attribute."""

__version__ = "0.1.0"

from .errors import DegenerateInputError, EdgeAdditionShortfall, EdgeDeletionSkipped, InputError
from .graph import Graph, GroupPartition, build_graph, induced_subgraph, partition
from .bias import (AggregationConfig, BiasReport, bias_report, correlation_rho, gamma1, gamma2,
                   group_stats, mean_aggregate, correlation_bound)
from .augment import (EdgeDeletionConfig, FairAugResult, MaskingConfig, NodeSamplingConfig,
                      PipelineConfig, apply_feature_mask, edge_add, edge_delete, fairaug,
                      masking_probs, node_sample, removal_probabilities)
from .metrics import (accuracy, auc, delta_eo_link, delta_eo_node, delta_sp_link, delta_sp_node,
                      nt_xent_loss)

__all__ = [
    "AggregationConfig", "BiasReport", "DegenerateInputError", "EdgeAdditionShortfall",
    "EdgeDeletionConfig", "EdgeDeletionSkipped", "FairAugResult", "Graph", "GroupPartition",
    "InputError", "MaskingConfig", "NodeSamplingConfig", "PipelineConfig", "accuracy",
    "apply_feature_mask", "auc", "bias_report", "build_graph", "correlation_rho",
    "delta_eo_link", "delta_eo_node", "delta_sp_link", "delta_sp_node", "edge_add",
    "edge_delete", "fairaug", "gamma1", "gamma2", "group_stats", "induced_subgraph",
    "masking_probs", "mean_aggregate", "node_sample", "nt_xent_loss", "partition",
    "removal_probabilities", "correlation_bound",
]
