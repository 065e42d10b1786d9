"""Clique-adjacency graph.

Vertices are maximal cliques.  Two cliques are joined when they share enough
nodes and at least ``m`` layers; each edge remembers the shared layers.
"""

from __future__ import annotations

import enum
import itertools
from collections import defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .cliques import Clique
from .core import LayerSet, MultiplexNetwork

# above this many cliques, candidate pairs come from shared (k-1)-subsets
BUCKET_THRESHOLD = 10_000


class OverlapRule(enum.Enum):
    K_MINUS_1 = "k-1"
    K = "k"

    def threshold(self, k: int) -> int:
        return k - 1 if self is OverlapRule.K_MINUS_1 else k


@dataclass(frozen=True)
class AdjacencyRule:
    k: int
    m: int
    overlap: OverlapRule = OverlapRule.K_MINUS_1

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError(f"k must be at least 2, got {self.k}")
        if self.m < 1:
            raise ValueError(f"m must be at least 1, got {self.m}")
        if isinstance(self.overlap, str):
            object.__setattr__(self, "overlap", OverlapRule(self.overlap))

    @property
    def node_overlap_threshold(self) -> int:
        return self.overlap.threshold(self.k)

    @property
    def layer_threshold(self) -> int:
        return self.m

    def describe(self) -> dict[str, object]:
        return {"k": self.k, "m": self.m, "adjacency": self.overlap.value}


def adjacent(c1: Clique, c2: Clique, rule: AdjacencyRule) -> bool:
    shared_nodes = len(set(c1.nodes).intersection(c2.nodes))
    shared_layers = (c1.layers.bits & c2.layers.bits).bit_count()
    return shared_nodes >= rule.node_overlap_threshold and shared_layers >= rule.m


@dataclass(frozen=True)
class AdjacencyEdge:
    a: int
    b: int
    shared_layers: LayerSet
    overlap_size: int


@dataclass(frozen=True, eq=False)
class CliqueAdjacencyGraph:
    """Cliques indexed by id, with adjacency lists and annotated edges."""

    cliques: tuple[Clique, ...]
    rule: AdjacencyRule
    neighbors: tuple[frozenset[int], ...] = field(repr=False)
    edges: dict[tuple[int, int], AdjacencyEdge] = field(repr=False)

    @property
    def vertices(self) -> range:
        return range(len(self.cliques))

    def edge(self, a: int, b: int) -> AdjacencyEdge | None:
        return self.edges.get((a, b) if a < b else (b, a))

    def degree(self, c: int) -> int:
        return len(self.neighbors[c])


def _all_pairs(cliques: Sequence[Clique]) -> Iterable[tuple[int, int]]:
    return itertools.combinations(range(len(cliques)), 2)


def _bucketed_pairs(cliques: Sequence[Clique], overlap: int) -> Iterable[tuple[int, int]]:
    # any two cliques sharing >= overlap nodes share some overlap-subset
    if overlap <= 0:
        yield from _all_pairs(cliques)
        return
    buckets: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for i, c in enumerate(cliques):
        for sub in itertools.combinations(c.nodes, overlap):
            buckets[sub].append(i)
    seen: set[tuple[int, int]] = set()
    for members in buckets.values():
        for pair in itertools.combinations(members, 2):
            if pair not in seen:
                seen.add(pair)
                yield pair


def build_clique_adjacency(
    cliques: Sequence[Clique], rule: AdjacencyRule, bucketed: bool | None = None
) -> CliqueAdjacencyGraph:
    """Build the adjacency graph; clique ``i`` in the input becomes vertex ``i``.

    ``bucketed`` forces (True) or disables (False) candidate generation through
    shared node subsets; by default it kicks in above ``BUCKET_THRESHOLD``.
    """
    cliques = tuple(c if c.id == i else Clique(c.nodes, c.layers, i) for i, c in enumerate(cliques))
    if bucketed is None:
        bucketed = len(cliques) > BUCKET_THRESHOLD
    overlap = rule.node_overlap_threshold
    pairs = _bucketed_pairs(cliques, overlap) if bucketed else _all_pairs(cliques)
    node_sets = [frozenset(c.nodes) for c in cliques]
    neighbors: list[set[int]] = [set() for _ in cliques]
    edges: dict[tuple[int, int], AdjacencyEdge] = {}
    for i, j in pairs:
        shared = cliques[i].layers.bits & cliques[j].layers.bits
        if shared.bit_count() < rule.m:
            continue
        common = len(node_sets[i] & node_sets[j])
        if common < overlap:
            continue
        a, b = (i, j) if i < j else (j, i)
        edges[(a, b)] = AdjacencyEdge(a, b, LayerSet(shared), common)
        neighbors[a].add(b)
        neighbors[b].add(a)
    return CliqueAdjacencyGraph(
        cliques=cliques,
        rule=rule,
        neighbors=tuple(frozenset(n) for n in neighbors),
        edges=dict(sorted(edges.items())),
    )


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def adjacency_to_dot(graph: CliqueAdjacencyGraph, net: MultiplexNetwork) -> str:
    rule = graph.rule
    lines = [
        "graph clique_adjacency {",
        f"  // k={rule.k} m={rule.m} adjacency={rule.overlap.value}",
        "  node [shape=box];",
    ]
    for c in graph.cliques:
        label = _dot_escape(" ".join(net.node_name_list(c.nodes))) + "\\n" + _dot_escape(
            " ".join(net.layer_name_list(c.layers))
        )
        lines.append(f'  c{c.id} [label="{label}"];')
    for (a, b), e in graph.edges.items():
        label = _dot_escape(" ".join(net.layer_name_list(e.shared_layers)))
        lines.append(f'  c{a} -- c{b} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
