"""Community extraction from the clique-adjacency graph, plus the full pipeline.

A community is a connected set of cliques in the adjacency graph whose common
layer set has at least ``m`` layers and cannot be grown by any adjacent clique
without losing a layer.  The same clique may sit in several communities.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field

from .adjacency import AdjacencyRule, CliqueAdjacencyGraph, OverlapRule, build_clique_adjacency
from .cliques import Clique, CliqueQuery, find_max_cliques
from .core import CapacityError, LayerSet, MultiplexNetwork, network_digest

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Community:
    cliques: frozenset[int]
    shared_layers: LayerSet
    nodes: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.nodes)


def community_layers(members: Iterable[Clique], layer_count: int | None = None) -> LayerSet:
    """Layers common to every clique in ``members``."""
    bits = -1 if layer_count is None else (1 << layer_count) - 1
    empty = True
    for c in members:
        bits &= c.layers.bits
        empty = False
    if empty:
        raise ValueError("community has no cliques")
    return LayerSet(bits)


def community_nodes(members: Iterable[Clique]) -> tuple[int, ...]:
    nodes: set[int] = set()
    for c in members:
        nodes.update(c.nodes)
    if not nodes:
        raise ValueError("community has no cliques")
    return tuple(sorted(nodes))


@dataclass(frozen=True, eq=False)
class CommunitySet:
    """Communities found in one run, with everything needed to report them.

    Equality compares name-level content (clique node sets and layer names),
    so two runs on relabeled or reordered inputs can be compared directly.
    """

    communities: tuple[Community, ...]
    cliques: tuple[Clique, ...]
    rule: AdjacencyRule
    node_names: tuple[str, ...]
    layer_names: tuple[str, ...]
    meta: dict[str, object] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.communities)

    def __iter__(self):
        return iter(self.communities)

    def node_names_of(self, community: Community) -> list[str]:
        return sorted(self.node_names[i] for i in community.nodes)

    def layer_names_of(self, community: Community) -> list[str]:
        return [self.layer_names[i] for i in community.shared_layers]

    def clique_names(self, clique_id: int) -> frozenset[str]:
        return frozenset(self.node_names[i] for i in self.cliques[clique_id].nodes)

    def canonical(self) -> frozenset:
        return frozenset(
            (
                frozenset(self.clique_names(c) for c in com.cliques),
                frozenset(self.layer_names_of(com)),
            )
            for com in self.communities
        )

    def node_sets(self) -> set[frozenset[str]]:
        return {frozenset(self.node_names_of(c)) for c in self.communities}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CommunitySet):
            return NotImplemented
        return self.rule == other.rule and self.canonical() == other.canonical()

    __hash__ = None  # type: ignore[assignment]


def _sort_key(names: tuple[str, ...], layer_names: tuple[str, ...]):
    def key(com: Community):
        return (
            -com.size,
            sorted(names[i] for i in com.nodes),
            sorted(layer_names[i] for i in com.shared_layers),
            sorted(com.cliques),
        )

    return key


def iter_communities(graph: CliqueAdjacencyGraph, m_min: int, max_per_seed: int | None = None):
    """Yield each maximal community as a frozenset of clique ids.

    Seeds are visited in clique-id order.  ``processed`` holds finished seeds
    for the whole run; inside one seed's search, each explored sibling is
    added for the branches that follow it and removed again when the loop
    that explored it returns.
    """
    layer_bits = [c.layers.bits for c in graph.cliques]
    neighbors = graph.neighbors
    out: list[frozenset[int]] = []

    def absorb(x: int, mask: int, members: set[int], pool: dict[int, int], done: dict[int, int], processed: set[int]) -> None:
        for y in neighbors[x]:
            if y in members or y in pool or y in done:
                continue
            m = mask & layer_bits[y]
            if m.bit_count() >= m_min:
                (done if y in processed else pool)[y] = m

    def grow(current: list[int], mask: int, pool: dict[int, int], done: dict[int, int], processed: set[int]) -> None:
        if current:
            size = mask.bit_count()
            if all(m.bit_count() < size for m in pool.values()) and all(
                m.bit_count() < size for m in done.values()
            ):
                out.append(frozenset(current))
        explored = []
        for b in sorted(pool):
            b_mask = pool[b]
            members = set(current)
            members.add(b)
            next_pool: dict[int, int] = {}
            next_done: dict[int, int] = {}
            for source, target_done in ((pool, False), (done, True)):
                for x in source:
                    if x == b:
                        continue
                    m = b_mask & layer_bits[x]
                    if m.bit_count() >= m_min:
                        (next_done if target_done or x in processed else next_pool)[x] = m
            absorb(b, b_mask, members, next_pool, next_done, processed)
            # A neighbour that keeps every layer belongs to any maximal
            # extension: take it without branching, or drop the branch if
            # it was already covered elsewhere.
            forced = [b]
            covered = False
            while not covered:
                if any(m == b_mask for m in next_done.values()):
                    covered = True
                    break
                extra = [x for x, m in next_pool.items() if m == b_mask]
                if not extra:
                    break
                for x in extra:
                    del next_pool[x]
                    members.add(x)
                    forced.append(x)
                for x in extra:
                    absorb(x, b_mask, members, next_pool, next_done, processed)
            if not covered:
                current.extend(forced)
                grow(current, b_mask, next_pool, next_done, processed)
                del current[len(current) - len(forced):]
            processed.add(b)
            explored.append(b)
        processed.difference_update(explored)

    seeds_done: set[int] = set()
    for seed in graph.vertices:
        if layer_bits[seed].bit_count() >= m_min:
            grow([], -1, {seed: layer_bits[seed]}, {}, seeds_done)
            if max_per_seed is not None and len(out) > max_per_seed:
                raise CapacityError(
                    f"seed clique {seed} produced {len(out)} communities, cap is {max_per_seed}"
                )
            yield from out
            out.clear()
        seeds_done.add(seed)


def find_communities(
    graph: CliqueAdjacencyGraph,
    m_min: int | None = None,
    *,
    node_names: Iterable[str] | None = None,
    layer_names: Iterable[str] | None = None,
    max_per_seed: int | None = None,
) -> CommunitySet:
    """Extract every maximal community from ``graph``.

    ``m_min`` defaults to the graph's rule.  Names default to stringified
    indices when the network is not at hand.
    """
    if m_min is None:
        m_min = graph.rule.m
    cliques = graph.cliques
    found: dict[frozenset[int], Community] = {}
    duplicates = 0
    for ids in iter_communities(graph, m_min, max_per_seed):
        if ids in found:
            duplicates += 1
            continue
        members = [cliques[i] for i in ids]
        found[ids] = Community(ids, community_layers(members), community_nodes(members))
    if duplicates:
        log.info("dropped %d duplicate communities", duplicates)

    if node_names is None:
        top = max((max(c.nodes) for c in cliques), default=-1)
        node_names = [str(i) for i in range(top + 1)]
    if layer_names is None:
        top = max((c.layers.bits.bit_length() for c in cliques), default=0)
        layer_names = [str(i) for i in range(top)]
    node_names, layer_names = tuple(node_names), tuple(layer_names)
    ordered = sorted(found.values(), key=_sort_key(node_names, layer_names))
    return CommunitySet(
        communities=tuple(ordered),
        cliques=tuple(cliques),
        rule=graph.rule,
        node_names=node_names,
        layer_names=layer_names,
        meta={"duplicates_dropped": duplicates},
    )


def detect(
    net: MultiplexNetwork,
    k: int,
    m: int,
    rule: OverlapRule | str = OverlapRule.K_MINUS_1,
    *,
    max_per_seed: int | None = None,
) -> CommunitySet:
    """Run clique enumeration, adjacency construction and community extraction."""
    adjacency_rule = AdjacencyRule(k, m, OverlapRule(rule))
    cliques = find_max_cliques(net, CliqueQuery(k, m))
    graph = build_clique_adjacency(cliques, adjacency_rule)
    result = find_communities(
        graph,
        m,
        node_names=net.node_names,
        layer_names=net.layer_names,
        max_per_seed=max_per_seed,
    )
    result.meta["input_digest"] = network_digest(net)
    return result
