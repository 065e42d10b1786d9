"""Multiplex network data model and layer-set algebra.

A multiplex network is stored as an edge-labeled multigraph: every node pair
maps to the set of layers on which the two nodes are connected.  Layer sets
are bit masks over dense layer indices, so intersecting the layer sets of a
candidate clique is a chain of integer ANDs.
"""

from __future__ import annotations

import hashlib
import json
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field

DEFAULT_MAX_LAYERS = 64


class NetworkError(ValueError):
    """Invalid network construction request."""


class SelfLoopError(NetworkError):
    pass


class UnknownNameError(NetworkError, KeyError):
    pass


class CapacityError(RuntimeError):
    """A configured size limit was exceeded."""


@dataclass(frozen=True, slots=True)
class NodeId:
    index: int
    name: str


@dataclass(frozen=True, slots=True)
class LayerId:
    index: int
    name: str


@dataclass(frozen=True, slots=True)
class LayerSet:
    """Immutable set of layer indices backed by an integer bit mask.

    Python integers are arbitrary width, so masks wider than one machine word
    work unchanged (just slower).
    """

    bits: int = 0

    @classmethod
    def of(cls, indices: Iterable[int]) -> LayerSet:
        bits = 0
        for i in indices:
            if i < 0:
                raise ValueError(f"negative layer index {i}")
            bits |= 1 << i
        return cls(bits)

    @classmethod
    def full(cls, layer_count: int) -> LayerSet:
        return cls((1 << layer_count) - 1)

    def __and__(self, other: LayerSet) -> LayerSet:
        return LayerSet(self.bits & other.bits)

    def __or__(self, other: LayerSet) -> LayerSet:
        return LayerSet(self.bits | other.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __contains__(self, index: object) -> bool:
        return isinstance(index, int) and index >= 0 and bool(self.bits >> index & 1)

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def issubset(self, other: LayerSet) -> bool:
        return self.bits & ~other.bits == 0

    def __le__(self, other: LayerSet) -> bool:
        return self.issubset(other)

    def __repr__(self) -> str:
        return f"LayerSet({sorted(self)})"


def _pair_key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True, eq=False)
class MultiplexNetwork:
    """Immutable multiplex network.

    Build one with :class:`NetworkBuilder` (or the :meth:`from_edges`
    shortcut).  ``pair_masks`` maps each connected unordered index pair
    ``(i, j)`` with ``i < j`` to a layer bit mask; ``neighbor_masks[v]`` is
    the bit mask over node indices of every node sharing at least one layer
    with ``v``.
    """

    node_names: tuple[str, ...]
    layer_names: tuple[str, ...]
    pair_masks: Mapping[tuple[int, int], int]
    layer_adjacency: tuple[tuple[frozenset[int], ...], ...] = field(repr=False)
    neighbor_masks: tuple[int, ...] = field(repr=False)
    _node_index: Mapping[str, int] = field(repr=False)
    _layer_index: Mapping[str, int] = field(repr=False)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[str, str, str]],
        nodes: Iterable[str] = (),
        layers: Iterable[str] = (),
        max_layers: int | None = DEFAULT_MAX_LAYERS,
    ) -> MultiplexNetwork:
        builder = NetworkBuilder(max_layers=max_layers)
        for name in nodes:
            builder.add_node(name)
        for name in layers:
            builder.add_layer(name)
        for a, b, layer in edges:
            builder.add_node(a)
            builder.add_node(b)
            builder.add_layer(layer)
            builder.add_edge(a, b, layer)
        return builder.build()

    @property
    def node_count(self) -> int:
        return len(self.node_names)

    @property
    def layer_count(self) -> int:
        return len(self.layer_names)

    @property
    def nodes(self) -> tuple[NodeId, ...]:
        return tuple(NodeId(i, n) for i, n in enumerate(self.node_names))

    @property
    def layers(self) -> tuple[LayerId, ...]:
        return tuple(LayerId(i, n) for i, n in enumerate(self.layer_names))

    @property
    def all_layers(self) -> LayerSet:
        return LayerSet.full(self.layer_count)

    def node(self, name: str) -> NodeId:
        try:
            return NodeId(self._node_index[name], name)
        except KeyError:
            raise UnknownNameError(f"unknown node {name!r}") from None

    def layer(self, name: str) -> LayerId:
        try:
            return LayerId(self._layer_index[name], name)
        except KeyError:
            raise UnknownNameError(f"unknown layer {name!r}") from None

    def node_index(self, node: NodeId | str | int) -> int:
        if isinstance(node, NodeId):
            return node.index
        if isinstance(node, str):
            return self.node(node).index
        if not 0 <= node < self.node_count:
            raise UnknownNameError(f"node index {node} out of range")
        return node

    def layer_index(self, layer: LayerId | str | int) -> int:
        if isinstance(layer, LayerId):
            return layer.index
        if isinstance(layer, str):
            return self.layer(layer).index
        if not 0 <= layer < self.layer_count:
            raise UnknownNameError(f"layer index {layer} out of range")
        return layer

    def pair_mask(self, a: int, b: int) -> int:
        return self.pair_masks.get(_pair_key(a, b), 0)

    def pair_layers(self, a: NodeId | str | int, b: NodeId | str | int) -> LayerSet:
        """Layers on which ``a`` and ``b`` are directly connected."""
        i, j = self.node_index(a), self.node_index(b)
        if i == j:
            raise SelfLoopError(f"pair_layers needs two distinct nodes, got {self.node_names[i]!r} twice")
        return LayerSet(self.pair_mask(i, j))

    def clique_mask(self, indices: Sequence[int]) -> int:
        """Bit mask of layers on which every pair of ``indices`` is connected.

        Fewer than two nodes yields the full layer mask.
        """
        mask = (1 << self.layer_count) - 1
        masks = self.pair_masks
        for pos, i in enumerate(indices):
            for j in indices[pos + 1:]:
                mask &= masks.get(_pair_key(i, j), 0)
                if not mask:
                    return 0
        return mask

    def clique_layers(self, nodes: Iterable[NodeId | str | int]) -> LayerSet:
        indices = sorted({self.node_index(n) for n in nodes})
        return LayerSet(self.clique_mask(indices))

    def layer_name_list(self, layers: LayerSet | int) -> list[str]:
        bits = layers.bits if isinstance(layers, LayerSet) else layers
        return [self.layer_names[i] for i in LayerSet(bits)]

    def node_name_list(self, indices: Iterable[int]) -> list[str]:
        return [self.node_names[i] for i in indices]

    def edges(self) -> Iterator[tuple[str, str, str]]:
        """Yield ``(node, node, layer)`` name triples in index order."""
        for (i, j), mask in sorted(self.pair_masks.items()):
            for layer in LayerSet(mask):
                yield self.node_names[i], self.node_names[j], self.layer_names[layer]

    @property
    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.pair_masks.values())

    def add_edge(self, a: NodeId | str, b: NodeId | str, layer: LayerId | str) -> MultiplexNetwork:
        """Return a copy of this network with one more edge.

        All three endpoints must already be registered.  Adding an existing
        edge returns an equal network.
        """
        builder = NetworkBuilder.from_network(self)
        builder.add_edge(_name(a), _name(b), _name(layer))
        return builder.build()

    def layer_graph(self, layer: LayerId | str | int) -> tuple[frozenset[int], ...]:
        return self.layer_adjacency[self.layer_index(layer)]

    def relabeled(self, mapping: Mapping[str, str]) -> MultiplexNetwork:
        """Copy with node names replaced through ``mapping`` (a bijection)."""
        renamed = [mapping.get(n, n) for n in self.node_names]
        if len(set(renamed)) != len(renamed):
            raise NetworkError("relabeling is not injective")
        return MultiplexNetwork.from_edges(
            ((mapping.get(a, a), mapping.get(b, b), layer) for a, b, layer in self.edges()),
            nodes=renamed,
            layers=self.layer_names,
            max_layers=None,
        )

    def _canonical(self) -> tuple:
        return (
            frozenset(self.node_names),
            frozenset(self.layer_names),
            frozenset((frozenset((a, b)), layer) for a, b, layer in self.edges()),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiplexNetwork):
            return NotImplemented
        return self._canonical() == other._canonical()

    def __hash__(self) -> int:
        return hash(self._canonical())


def _name(x: NodeId | LayerId | str) -> str:
    return x if isinstance(x, str) else x.name


class NetworkBuilder:
    """Mutable accumulator that produces an immutable :class:`MultiplexNetwork`.

    Names are interned on registration; indices follow first registration.
    """

    def __init__(self, max_layers: int | None = DEFAULT_MAX_LAYERS) -> None:
        self.max_layers = max_layers
        self._nodes: dict[str, int] = {}
        self._layers: dict[str, int] = {}
        self._pairs: dict[tuple[int, int], int] = {}

    @classmethod
    def from_network(cls, net: MultiplexNetwork) -> NetworkBuilder:
        builder = cls(max_layers=None)
        builder._nodes = dict(net._node_index)
        builder._layers = dict(net._layer_index)
        builder._pairs = dict(net.pair_masks)
        return builder

    def add_node(self, name: str) -> int:
        index = self._nodes.get(name)
        if index is None:
            index = self._nodes[name] = len(self._nodes)
        return index

    def add_layer(self, name: str) -> int:
        index = self._layers.get(name)
        if index is None:
            if self.max_layers is not None and len(self._layers) >= self.max_layers:
                raise CapacityError(
                    f"layer {name!r} exceeds the configured limit of {self.max_layers} layers"
                )
            index = self._layers[name] = len(self._layers)
        return index

    def has_node(self, name: str) -> bool:
        return name in self._nodes

    def add_edge(self, a: str, b: str, layer: str) -> None:
        if a == b:
            raise SelfLoopError(f"self-loop on node {a!r} in layer {layer!r}")
        for kind, name, registry in (("node", a, self._nodes), ("node", b, self._nodes),
                                     ("layer", layer, self._layers)):
            if name not in registry:
                raise UnknownNameError(f"unknown {kind} {name!r}")
        key = _pair_key(self._nodes[a], self._nodes[b])
        self._pairs[key] = self._pairs.get(key, 0) | 1 << self._layers[layer]

    def build(self) -> MultiplexNetwork:
        node_names = tuple(sorted(self._nodes, key=self._nodes.__getitem__))
        layer_names = tuple(sorted(self._layers, key=self._layers.__getitem__))
        n = len(node_names)
        per_layer: list[list[set[int]]] = [[set() for _ in range(n)] for _ in layer_names]
        neighbors = [0] * n
        for (i, j), mask in self._pairs.items():
            neighbors[i] |= 1 << j
            neighbors[j] |= 1 << i
            for layer in LayerSet(mask):
                per_layer[layer][i].add(j)
                per_layer[layer][j].add(i)
        return MultiplexNetwork(
            node_names=node_names,
            layer_names=layer_names,
            pair_masks=dict(self._pairs),
            layer_adjacency=tuple(tuple(frozenset(s) for s in adj) for adj in per_layer),
            neighbor_masks=tuple(neighbors),
            _node_index=dict(self._nodes),
            _layer_index=dict(self._layers),
        )


def network_digest(net: MultiplexNetwork) -> str:
    """Order-independent SHA-256 of a network's nodes, layers and edges."""
    h = hashlib.sha256()
    for part in (
        sorted(net.node_names),
        sorted(net.layer_names),
        sorted(tuple(sorted((a, b))) + (layer,) for a, b, layer in net.edges()),
    ):
        h.update(json.dumps(part).encode())
    return "sha256:" + h.hexdigest()
