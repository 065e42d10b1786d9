"""Brute-force reference implementations and a seeded random network generator.

Everything here works on plain Python sets built straight from the edge list,
by exhaustive enumeration.  Nothing is shared with the clique finder,
adjacency builder or community finder, so agreement between the two routes
is meaningful.  Input sizes are capped; exceeding a cap raises
:class:`CapacityError`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .adjacency import AdjacencyRule, OverlapRule
from .cliques import Clique
from .communities import Community, CommunitySet
from .core import CapacityError, LayerSet, MultiplexNetwork

MAX_ORACLE_NODES = 15
MAX_ORACLE_CLIQUES = 15

# (node names, layer names)
OracleClique = tuple[frozenset[str], frozenset[str]]
# (member cliques, shared layer names)
OracleCommunity = tuple[frozenset[frozenset[str]], frozenset[str]]


@dataclass(frozen=True)
class GeneratorSpec:
    node_count: int
    layer_count: int
    edge_probability: float | tuple[float, ...]
    seed: int = 0

    def probabilities(self) -> tuple[float, ...]:
        p = self.edge_probability
        if isinstance(p, (int, float)):
            return (float(p),) * self.layer_count
        if len(p) != self.layer_count:
            raise ValueError("one edge probability per layer expected")
        return tuple(p)


def generate(spec: GeneratorSpec) -> MultiplexNetwork:
    """Independent Erdos-Renyi draw per layer from ``random.Random(seed)``.

    Nodes are named ``n0..n{N-1}`` and layers ``L0..L{M-1}``; every node and
    layer is registered even when it ends up without edges.
    """
    if spec.node_count < 0 or spec.layer_count < 0:
        raise ValueError("counts must be non-negative")
    rng = random.Random(spec.seed)
    nodes = [f"n{i}" for i in range(spec.node_count)]
    layers = [f"L{j}" for j in range(spec.layer_count)]
    edges = []
    for layer, p in zip(layers, spec.probabilities()):
        for a, b in itertools.combinations(nodes, 2):
            if rng.random() < p:
                edges.append((a, b, layer))
    return MultiplexNetwork.from_edges(edges, nodes=nodes, layers=layers, max_layers=None)


def _pair_table(net: MultiplexNetwork) -> dict[frozenset[str], set[str]]:
    table: dict[frozenset[str], set[str]] = {}
    for a, b, layer in net.edges():
        table.setdefault(frozenset((a, b)), set()).add(layer)
    return table


def _common_layers(nodes, table, all_layers: frozenset[str]) -> frozenset[str]:
    common = set(all_layers)
    for a, b in itertools.combinations(nodes, 2):
        common &= table.get(frozenset((a, b)), set())
    return frozenset(common)


def oracle_clique_names(net: MultiplexNetwork, k_min: int, m_min: int) -> set[OracleClique]:
    """Test every node subset against the maximal k-m-AND-clique definition."""
    if net.node_count > MAX_ORACLE_NODES:
        raise CapacityError(f"oracle handles at most {MAX_ORACLE_NODES} nodes, got {net.node_count}")
    table = _pair_table(net)
    all_layers = frozenset(net.layer_names)
    names = list(net.node_names)
    result = set()
    for size in range(k_min, len(names) + 1):
        for subset in itertools.combinations(names, size):
            layers = _common_layers(subset, table, all_layers)
            if len(layers) < m_min:
                continue
            extendable = any(
                len(_common_layers(subset + (v,), table, all_layers)) == len(layers)
                for v in names
                if v not in subset
            )
            if not extendable:
                result.add((frozenset(subset), layers))
    return result


def _adjacent(c1: OracleClique, c2: OracleClique, node_overlap: int, m: int) -> bool:
    return len(c1[0] & c2[0]) >= node_overlap and len(c1[1] & c2[1]) >= m


def _connected(members: list[int], links: dict[int, set[int]]) -> bool:
    inside = set(members)
    seen = {members[0]}
    stack = [members[0]]
    while stack:
        for nb in links[stack.pop()] & inside:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(inside)


def oracle_community_names(
    net: MultiplexNetwork, k: int, m: int, rule: OverlapRule | str = "k-1"
) -> set[OracleCommunity]:
    """Enumerate every subset of the oracle cliques and keep the maximal ones.

    A subset qualifies when it is connected under the adjacency predicate,
    its cliques share at least ``m`` layers, and every adjacent clique
    outside it would shrink the shared layer set.
    """
    node_overlap = {"k-1": k - 1, "k": k}[OverlapRule(rule).value]
    cliques = sorted(oracle_clique_names(net, k, m), key=lambda c: sorted(c[0]))
    if len(cliques) > MAX_ORACLE_CLIQUES:
        raise CapacityError(f"oracle handles at most {MAX_ORACLE_CLIQUES} cliques, got {len(cliques)}")
    n = len(cliques)
    links = {
        i: {j for j in range(n) if j != i and _adjacent(cliques[i], cliques[j], node_overlap, m)}
        for i in range(n)
    }
    all_layers = frozenset(net.layer_names)
    result = set()
    for size in range(1, n + 1):
        for members in itertools.combinations(range(n), size):
            shared = set(all_layers)
            for i in members:
                shared &= cliques[i][1]
            if len(shared) < m or not _connected(list(members), links):
                continue
            frontier = set().union(*(links[i] for i in members)) - set(members)
            if any(len(shared & cliques[j][1]) == len(shared) for j in frontier):
                continue
            result.add((frozenset(cliques[i][0] for i in members), frozenset(shared)))
    return result


def _to_clique(net: MultiplexNetwork, nodes: frozenset[str], layers: frozenset[str], ident: int = -1) -> Clique:
    return Clique(
        tuple(sorted(net.node_index(n) for n in nodes)),
        LayerSet.of(net.layer_index(name) for name in layers),
        ident,
    )


def oracle_max_cliques(net: MultiplexNetwork, k_min: int, m_min: int) -> set[Clique]:
    return {_to_clique(net, nodes, layers) for nodes, layers in oracle_clique_names(net, k_min, m_min)}


def oracle_communities(
    net: MultiplexNetwork, k: int, m: int, rule: OverlapRule | str = "k-1"
) -> CommunitySet:
    """Oracle communities packaged like :func:`mlcpm.communities.detect` output."""
    raw = oracle_community_names(net, k, m, rule)
    clique_keys = sorted({c for members, _ in raw for c in members}, key=sorted)
    ids = {c: i for i, c in enumerate(clique_keys)}
    table = _pair_table(net)
    all_layers = frozenset(net.layer_names)
    cliques = tuple(_to_clique(net, c, _common_layers(c, table, all_layers), ids[c]) for c in clique_keys)
    communities = []
    for members, shared in raw:
        nodes = sorted({net.node_index(n) for c in members for n in c})
        communities.append(
            Community(
                frozenset(ids[c] for c in members),
                LayerSet.of(net.layer_index(name) for name in shared),
                tuple(nodes),
            )
        )
    communities.sort(key=lambda c: (-c.size, sorted(net.node_names[i] for i in c.nodes), sorted(c.cliques)))
    return CommunitySet(
        communities=tuple(communities),
        cliques=cliques,
        rule=AdjacencyRule(k, m, OverlapRule(rule)),
        node_names=net.node_names,
        layer_names=net.layer_names,
        meta={"oracle": True},
    )


def oracle_classic_cpm(net: MultiplexNetwork, k: int, layer: str | None = None) -> set[frozenset[str]]:
    """Classic k-clique communities on one layer: union-find over k-cliques sharing k-1 nodes."""
    if layer is None:
        if net.layer_count != 1:
            raise ValueError("classic CPM oracle needs a single-layer network or an explicit layer")
        layer = net.layer_names[0]
    if net.node_count > MAX_ORACLE_NODES:
        raise CapacityError(f"oracle handles at most {MAX_ORACLE_NODES} nodes, got {net.node_count}")
    edges = {frozenset((a, b)) for a, b, lay in net.edges() if lay == layer}
    k_cliques = [
        frozenset(s)
        for s in itertools.combinations(net.node_names, k)
        if all(frozenset(p) in edges for p in itertools.combinations(s, 2))
    ]
    parent = list(range(len(k_cliques)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(len(k_cliques)), 2):
        if len(k_cliques[i] & k_cliques[j]) == k - 1:
            parent[find(i)] = find(j)
    groups: dict[int, set[str]] = {}
    for i, c in enumerate(k_cliques):
        groups.setdefault(find(i), set()).update(c)
    return {frozenset(g) for g in groups.values()}
