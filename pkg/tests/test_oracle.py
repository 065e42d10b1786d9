from __future__ import annotations

import pytest

from mlcpm import CapacityError, MultiplexNetwork, network_digest
from mlcpm.oracle import (
    MAX_ORACLE_CLIQUES,
    MAX_ORACLE_NODES,
    GeneratorSpec,
    generate,
    oracle_classic_cpm,
    oracle_communities,
    oracle_max_cliques,
)

from .conftest import net_from

# two triangles-plus-one joined at node 4
SHARED_NODE = "1 2 L\n1 3 L\n2 3 L\n2 4 L\n3 4 L\n4 5 L\n4 6 L\n5 6 L\n5 7 L\n6 7 L"


class TestGenerator:
    def test_seed_is_reproducible(self):
        spec = GeneratorSpec(10, 3, 0.4, seed=42)
        first, second = generate(spec), generate(spec)
        assert first == second
        assert first.edge_count == 60
        assert network_digest(first) == (
            "sha256:16e059948f5143bd031eed04557cc6d84e926a9baa6d2e2cc858db09e1033929"
        )

    def test_different_seeds_differ(self):
        assert generate(GeneratorSpec(10, 3, 0.4, seed=1)) != generate(GeneratorSpec(10, 3, 0.4, seed=2))

    def test_extreme_probabilities(self):
        empty = generate(GeneratorSpec(6, 2, 0.0))
        assert empty.edge_count == 0
        assert empty.node_count == 6 and empty.layer_count == 2
        full = generate(GeneratorSpec(6, 2, 1.0))
        assert full.edge_count == 2 * 15

    def test_per_layer_probabilities(self):
        net = generate(GeneratorSpec(6, 2, (1.0, 0.0)))
        assert net.edge_count == 15
        with pytest.raises(ValueError):
            generate(GeneratorSpec(6, 2, (1.0,)))

    def test_negative_counts(self):
        with pytest.raises(ValueError):
            generate(GeneratorSpec(-1, 2, 0.5))


class TestFrozenValues:
    def test_seed_42_m2(self):
        net = generate(GeneratorSpec(10, 3, 0.4, seed=42))
        assert len(oracle_max_cliques(net, 3, 2)) == 2
        assert oracle_communities(net, 3, 2).node_sets() == {frozenset({"n0", "n2", "n8", "n9"})}

    def test_shared_node_classic(self):
        net = net_from(SHARED_NODE)
        assert oracle_classic_cpm(net, 3) == {frozenset("1234"), frozenset("4567")}
        assert oracle_classic_cpm(net, 4) == set()

    def test_full_network_is_one_community(self):
        net = generate(GeneratorSpec(6, 3, 1.0))
        cs = oracle_communities(net, 3, 3)
        assert len(cs) == 1
        assert cs.layer_names_of(cs.communities[0]) == ["L0", "L1", "L2"]


class TestCaps:
    def test_node_cap(self):
        net = generate(GeneratorSpec(MAX_ORACLE_NODES + 1, 1, 0.2))
        with pytest.raises(CapacityError):
            oracle_max_cliques(net, 3, 1)
        with pytest.raises(CapacityError):
            oracle_classic_cpm(net, 3)

    def test_clique_cap(self):
        net = generate(GeneratorSpec(10, 3, 0.4, seed=42))
        assert len(oracle_max_cliques(net, 3, 1)) > MAX_ORACLE_CLIQUES
        with pytest.raises(CapacityError):
            oracle_communities(net, 3, 1)

    def test_classic_needs_one_layer(self):
        net = generate(GeneratorSpec(5, 2, 0.5))
        with pytest.raises(ValueError):
            oracle_classic_cpm(net, 3)
        assert isinstance(oracle_classic_cpm(net, 3, layer="L0"), set)


@pytest.mark.parametrize("seed", range(5))
def test_relabeling_does_not_change_oracle(seed):
    net = generate(GeneratorSpec(9, 2, 0.5, seed=seed))
    mapping = {n: f"x{len(net.node_names) - i}" for i, n in enumerate(net.node_names)}
    other = net.relabeled(mapping)
    other = MultiplexNetwork.from_edges(sorted(other.edges()), nodes=sorted(other.node_names))
    renamed = {frozenset(mapping[n] for n in s) for s in oracle_communities(net, 3, 1).node_sets()}
    assert oracle_communities(other, 3, 1).node_sets() == renamed
