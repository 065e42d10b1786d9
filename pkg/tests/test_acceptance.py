"""Acceptance suite: one test per headline criterion.

Each test stores a one-line outcome on ``request.node.acceptance_detail``;
the terminal summary prints a PASS/FAIL line per criterion.
"""

from __future__ import annotations

import itertools
import random
import time

import pytest

from mlcpm import CliqueQuery, MultiplexNetwork, detect, find_max_cliques, write_report
from mlcpm.oracle import GeneratorSpec, generate, oracle_classic_cpm, oracle_communities, oracle_max_cliques

from .conftest import net_from
from .test_communities import CXY, NESTED, check_invariants
from .test_oracle import SHARED_NODE

PROBABILITIES = (0.3, 0.5, 0.7)
KM_GRID = list(itertools.product((3, 4), (1, 2, 3)))
RULES = ("k-1", "k")

AUCS_COUNT = 26
AUCS_SIZES = (3, 12)
AUCS_ROWS = {
    "C16": ({"U59", "U91", "U110"}, {"facebook", "lunch", "work", "leisure"}),
    "C17": ({"U59", "U91", "U110", "U113", "U138"}, {"work", "leisure"}),
    "C04": ({"U91", "U65", "U72"}, {"lunch", "work", "leisure"}),
}
AUCS_TOLERANCE = 3
# rows printed with unnamed extra members: listed members, full size, layers
AUCS_PARTIAL_ROWS = {
    "C11": ({"U107", "U1", "U29", "U32", "U17", "U14"}, 9, {"lunch", "work"}),
    "C24": ({"U123", "U59", "U71", "U91", "U130", "U47"}, 12, {"facebook", "work"}),
}


def grid_instance(i: int) -> MultiplexNetwork:
    return generate(
        GeneratorSpec(node_count=6 + i % 7, layer_count=1 + i % 4, edge_probability=PROBABILITIES[i % 3], seed=i)
    )


def named_cliques(net, cliques):
    return {(frozenset(net.node_name_list(c.nodes)), frozenset(net.layer_name_list(c.layers))) for c in cliques}


def check_clique_layers(net, cs):
    for c in cs.cliques:
        assert c.layers == net.clique_layers(c.nodes)


def aucs_checks(cs):
    rows = {(frozenset(cs.node_names_of(c)), frozenset(cs.layer_names_of(c))) for c in cs}
    missing = [name for name, (nodes, layers) in AUCS_ROWS.items() if (frozenset(nodes), frozenset(layers)) not in rows]
    node_sets = [set(cs.node_names_of(c)) for c in cs]
    overlap = max((len(a & b) for a, b in itertools.combinations(node_sets, 2)), default=0)
    if overlap < 5:
        missing.append("C21/C22 overlap")
    sizes = [c.size for c in cs]
    return missing, len(cs), (min(sizes, default=0), max(sizes, default=0))


def partial_rows(cs) -> str:
    found = []
    for name, (listed, size, layers) in AUCS_PARTIAL_ROWS.items():
        hits = [c.size for c in cs if listed <= set(cs.node_names_of(c)) and set(cs.layer_names_of(c)) == layers]
        state = "ok" if size in hits else f"sizes {hits or 'none'} vs {size}"
        found.append(f"{name} {state}")
    return ", ".join(found)


@pytest.mark.acceptance("AUCS reproduction")
def test_aucs_reproduction(aucs, request):
    results = {}
    partial = {}
    for rule in RULES:
        start = time.perf_counter()
        cs = detect(aucs, 3, 2, rule)
        elapsed = time.perf_counter() - start
        results[rule] = (*aucs_checks(cs), elapsed)
        partial[rule] = partial_rows(cs)
        check_invariants(cs, 2)
    summary = "; ".join(
        f"rule {rule}: {count} communities, sizes {lo}-{hi}, missing rows {missing or 'none'}, partial rows {partial[rule]}, {elapsed * 1000:.0f} ms"
        for rule, (missing, count, (lo, hi), elapsed) in results.items()
    )
    for rule, (missing, count, sizes, elapsed) in results.items():
        if not missing and count == AUCS_COUNT and sizes == AUCS_SIZES and elapsed < 10:
            request.node.acceptance_detail = f"exact under rule {rule}"
            return
    for rule, (missing, count, sizes, elapsed) in results.items():
        if not missing and abs(count - AUCS_COUNT) <= AUCS_TOLERANCE and elapsed < 10:
            request.node.acceptance_detail = f"downgraded match under rule {rule}; {summary}"
            return
    request.node.acceptance_detail = f"expected {AUCS_COUNT} (+-{AUCS_TOLERANCE}); {summary}"
    pytest.fail(f"AUCS count not reproduced: expected {AUCS_COUNT} within +-{AUCS_TOLERANCE}; {summary}")


@pytest.mark.acceptance("oracle equivalence (cliques)")
def test_clique_oracle_equivalence(request):
    start = time.perf_counter()
    checked = 0
    mismatches = []
    for i in range(200):
        net = grid_instance(i)
        for k, m in KM_GRID:
            got = named_cliques(net, find_max_cliques(net, CliqueQuery(k, m)))
            if got != named_cliques(net, oracle_max_cliques(net, k, m)):
                mismatches.append((i, k, m))
            checked += 1
    elapsed = time.perf_counter() - start
    request.node.acceptance_detail = f"{checked - len(mismatches)}/{checked} agree in {elapsed:.1f}s"
    assert not mismatches
    assert elapsed < 120


@pytest.mark.acceptance("oracle equivalence (communities)")
def test_community_oracle_equivalence(request):
    checked = 0
    mismatches = []
    for i in range(200):
        net = grid_instance(i)
        for k, m in KM_GRID:
            if len(oracle_max_cliques(net, k, m)) > 15:
                continue
            for rule in RULES:
                cs = detect(net, k, m, rule)
                if cs != oracle_communities(net, k, m, rule):
                    mismatches.append((i, k, m, rule))
                checked += 1
    request.node.acceptance_detail = f"{checked - len(mismatches)}/{checked} agree"
    assert checked > 0
    assert not mismatches


@pytest.mark.acceptance("classic CPM reduction")
def test_classic_cpm_reduction(request):
    checked = 0
    mismatches = []
    for i in range(100):
        net = generate(GeneratorSpec(6 + i % 7, 1, PROBABILITIES[i % 3], seed=1000 + i))
        for k in (3, 4):
            if detect(net, k, 1, "k-1").node_sets() != oracle_classic_cpm(net, k):
                mismatches.append((i, k))
            checked += 1
    figure = detect(net_from(SHARED_NODE), 3, 1).node_sets()
    figure_ok = figure == {frozenset("1234"), frozenset("4567")}
    request.node.acceptance_detail = (
        f"{checked - len(mismatches)}/{checked} agree; shared-node fixture {'ok' if figure_ok else 'wrong'}"
    )
    assert not mismatches
    assert figure_ok
    assert oracle_classic_cpm(net_from(SHARED_NODE), 3) == figure


@pytest.mark.acceptance("maximality and constraint invariants")
def test_invariants(aucs, request):
    runs = 0
    for i in range(200):
        net = grid_instance(i)
        for (k, m), rule in itertools.product(KM_GRID, RULES):
            cs = detect(net, k, m, rule)
            check_invariants(cs, m)
            check_clique_layers(net, cs)
            runs += 1
    for i in range(100):
        net = generate(GeneratorSpec(6 + i % 7, 1, PROBABILITIES[i % 3], seed=1000 + i))
        for k in (3, 4):
            cs = detect(net, k, 1)
            check_invariants(cs, 1)
            check_clique_layers(net, cs)
            runs += 1
    for rule in RULES:
        cs = detect(aucs, 3, 2, rule)
        check_invariants(cs, 2)
        check_clique_layers(aucs, cs)
        runs += 1
    request.node.acceptance_detail = f"{runs} runs, zero violations"


@pytest.mark.acceptance("overlap and hierarchy witnesses")
def test_overlap_and_hierarchy(request):
    cxy = net_from(CXY)
    cs = detect(cxy, 3, 2)
    assert cs == oracle_communities(cxy, 3, 2)
    memberships = max(sum(c in com.cliques for com in cs) for c in range(len(cs.cliques)))
    assert memberships >= 2

    nested = net_from(NESTED)
    ns = detect(nested, 3, 2)
    assert ns == oracle_communities(nested, 3, 2)
    witnesses = [
        (a, b)
        for a, b in itertools.permutations(ns.communities, 2)
        if set(a.nodes) < set(b.nodes) and len(b.shared_layers) < len(a.shared_layers)
    ]
    assert witnesses
    request.node.acceptance_detail = f"one clique in {memberships} communities; {len(witnesses)} nested pair(s)"


@pytest.mark.acceptance("determinism")
def test_determinism(aucs, request):
    for net in (aucs, generate(GeneratorSpec(12, 3, 0.5, seed=7))):
        for rule in RULES:
            reports = {write_report(detect(net, 3, 2, rule), "structured") for _ in range(5)}
            assert len(reports) == 1

    rng = random.Random(0)
    names = list(aucs.node_names)
    shuffled = names[:]
    rng.shuffle(shuffled)
    mapping = {a: f"v{b}" for a, b in zip(names, shuffled)}
    renamed = aucs.relabeled(mapping)
    renamed = MultiplexNetwork.from_edges(
        sorted(renamed.edges(), reverse=True), nodes=sorted(renamed.node_names, reverse=True)
    )
    original = detect(aucs, 3, 2)
    expected = {
        (frozenset(frozenset(mapping[n] for n in original.clique_names(c)) for c in com.cliques),
         frozenset(original.layer_names_of(com)))
        for com in original
    }
    assert detect(renamed, 3, 2).canonical() == expected
    request.node.acceptance_detail = "5 runs byte-identical; relabeled AUCS gives the renamed communities"
