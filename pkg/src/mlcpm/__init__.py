"""Overlapping community detection in multiplex networks by clique percolation."""

from .adjacency import (
    AdjacencyEdge,
    AdjacencyRule,
    CliqueAdjacencyGraph,
    OverlapRule,
    adjacency_to_dot,
    adjacent,
    build_clique_adjacency,
)
from .cliques import Clique, CliqueQuery, candidate_filter, enumerate_max_cliques, find_max_cliques, is_maximal_clique
from .communities import Community, CommunitySet, community_layers, community_nodes, detect, find_communities
from .core import (
    CapacityError,
    LayerId,
    LayerSet,
    MultiplexNetwork,
    NetworkBuilder,
    NetworkError,
    NodeId,
    SelfLoopError,
    UnknownNameError,
    network_digest,
)
from .io import ParseError, parse_multiplex, read_multiplex, read_report, write_multiplex, write_report

__version__ = "0.1.0"

__all__ = [
    "AdjacencyEdge",
    "AdjacencyRule",
    "CapacityError",
    "Clique",
    "CliqueAdjacencyGraph",
    "CliqueQuery",
    "Community",
    "CommunitySet",
    "LayerId",
    "LayerSet",
    "MultiplexNetwork",
    "NetworkBuilder",
    "NetworkError",
    "NodeId",
    "OverlapRule",
    "ParseError",
    "SelfLoopError",
    "UnknownNameError",
    "adjacency_to_dot",
    "adjacent",
    "build_clique_adjacency",
    "candidate_filter",
    "community_layers",
    "community_nodes",
    "detect",
    "enumerate_max_cliques",
    "find_communities",
    "find_max_cliques",
    "is_maximal_clique",
    "network_digest",
    "parse_multiplex",
    "read_multiplex",
    "read_report",
    "write_multiplex",
    "write_report",
]
