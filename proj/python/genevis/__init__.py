"""Python bindings for the genevis cluster/gene graph engine."""

import json

from ._core import (  # noqa: F401
    ClusterDataset,
    DiseaseDataset,
    GeneGraph,
    GenevisError,
    InteractionDataset,
    build_gene_graph,
    classify_color,
    cluster_overlay,
    cluster_view_json,
    detect_delimiter,
    ease_score,
    gene_view_json,
    highlight_levels,
    highlight_threshold,
    highlight_top_n,
    hypergeom_upper_tail,
    layout,
    mean_association,
    node_geometry,
    parse_cluster_table,
    parse_disease_table,
    parse_interaction_table,
    serialize_cluster_table,
)


def cluster_view(clusters, seed, min_overlap=1):
    """Cluster view payload as a dict."""
    return json.loads(cluster_view_json(clusters, seed, min_overlap))


def gene_view(clusters, interactions, cluster, seed):
    """Gene view payload for one cluster as a dict."""
    return json.loads(gene_view_json(clusters, interactions, cluster, seed))
