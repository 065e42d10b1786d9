"""Maximal k-m-AND-clique enumeration.

A node set is a k-m-AND-clique when all of its pairs are connected on at
least ``m`` common layers.  It is maximal when no single node can be added
without shrinking that common layer set.  Enumeration is a Bron-Kerbosch
style recursion without pivoting, where candidates are filtered by the number
of layers the extended set would still be complete on.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass, field

from .core import LayerSet, MultiplexNetwork, NodeId


@dataclass(frozen=True)
class CliqueQuery:
    k_min: int = 3
    m_min: int = 1

    def __post_init__(self) -> None:
        if self.k_min < 2:
            raise ValueError(f"k_min must be at least 2, got {self.k_min}")
        if self.m_min < 1:
            raise ValueError(f"m_min must be at least 1, got {self.m_min}")


@dataclass(frozen=True)
class Clique:
    """Node indices (ascending) plus the full layer set they are complete on."""

    nodes: tuple[int, ...]
    layers: LayerSet
    id: int = field(default=-1, compare=False)

    @property
    def size(self) -> int:
        return len(self.nodes)

    def node_set(self) -> frozenset[int]:
        return frozenset(self.nodes)


# (node, mask of layers on which current set + node is a clique)
_Candidate = tuple[int, int]


def enumerate_max_cliques(
    net: MultiplexNetwork,
    query: CliqueQuery,
    emit: Callable[[tuple[int, ...], int], None],
) -> None:
    """Stream every maximal clique as ``emit(sorted_nodes, layer_mask)``.

    Emission order follows the depth-first traversal with candidates taken in
    ascending node index.
    """
    k_min, m_min = query.k_min, query.m_min
    if net.layer_count < m_min:
        return
    pair_masks = net.pair_masks
    full = (1 << net.layer_count) - 1

    def expand(current: list[int], mask: int, pool: list[_Candidate], done: list[_Candidate]) -> None:
        if len(current) >= k_min:
            size = mask.bit_count()
            # max over an empty set is 0, so an exhausted branch always reports
            if all(m.bit_count() < size for _, m in pool) and all(m.bit_count() < size for _, m in done):
                emit(tuple(sorted(current)), mask)
        done = list(done)
        for pos, (b, b_mask) in enumerate(pool):
            current.append(b)
            next_pool = []
            for x, x_mask in pool[pos + 1:]:
                m = x_mask & b_mask & pair_masks.get((b, x) if b < x else (x, b), 0)
                if m.bit_count() >= m_min:
                    next_pool.append((x, m))
            next_done = []
            for x, x_mask in done:
                m = x_mask & b_mask & pair_masks.get((b, x) if b < x else (x, b), 0)
                if m.bit_count() >= m_min:
                    next_done.append((x, m))
            expand(current, b_mask, next_pool, next_done)
            current.pop()
            done.append((b, b_mask))

    expand([], full, [(v, full) for v in range(net.node_count)], [])


def find_max_cliques(net: MultiplexNetwork, query: CliqueQuery) -> list[Clique]:
    """All maximal cliques, sorted by node tuple, with ids assigned in that order."""
    found: list[tuple[tuple[int, ...], int]] = []
    enumerate_max_cliques(net, query, lambda nodes, mask: found.append((nodes, mask)))
    found.sort()
    return [Clique(nodes, LayerSet(mask), i) for i, (nodes, mask) in enumerate(found)]


def _indices(net: MultiplexNetwork, nodes: Iterable[NodeId | str | int]) -> list[int]:
    return sorted({net.node_index(n) for n in nodes})


def candidate_filter(
    net: MultiplexNetwork,
    current: Iterable[NodeId | str | int],
    pool: Iterable[NodeId | str | int],
    m_min: int,
) -> list[int]:
    """Pool members that keep ``current`` complete on at least ``m_min`` layers."""
    base = _indices(net, current)
    base_mask = net.clique_mask(base)
    out = []
    for v in _indices(net, pool):
        if v in base:
            continue
        mask = base_mask
        for u in base:
            mask &= net.pair_mask(u, v)
        if mask.bit_count() >= m_min:
            out.append(v)
    return out


def is_maximal_clique(
    net: MultiplexNetwork, nodes: Iterable[NodeId | str | int], query: CliqueQuery
) -> bool:
    members = _indices(net, nodes)
    if len(members) < query.k_min:
        return False
    mask = net.clique_mask(members)
    size = mask.bit_count()
    if size < query.m_min:
        return False
    inside = set(members)
    for v in range(net.node_count):
        if v in inside:
            continue
        extended = mask
        for u in members:
            extended &= net.pair_mask(u, v)
        if extended.bit_count() == size:
            return False
    return True
