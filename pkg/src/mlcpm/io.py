"""Edge-list ingestion and community report serialization.

Input is a multiplex edge list: one ``actor actor layer`` record per line,
separated by whitespace or commas.  Sectioned files (``#LAYERS``,
``#ACTORS``, ``#EDGES`` ...), as shipped with the AUCS data, are understood
too.  Sections other than layers, actors and edges are skipped.
"""

from __future__ import annotations

import json
import logging
import re
from collections import Counter
from collections.abc import Iterable
from pathlib import Path

from .adjacency import AdjacencyRule, OverlapRule
from .cliques import Clique
from .communities import Community, CommunitySet
from .core import LayerSet, MultiplexNetwork, NetworkBuilder, NetworkError

log = logging.getLogger(__name__)

REPORT_FORMATS = ("plain", "structured", "dot")
_SECTION = re.compile(r"#\s*([A-Za-z][A-Za-z ]*?)\s*$")
_KNOWN_SECTIONS = {
    "TYPE", "LAYERS", "ACTORS", "VERTICES", "EDGES",
    "ACTOR ATTRIBUTES", "VERTEX ATTRIBUTES", "EDGE ATTRIBUTES", "LAYER ATTRIBUTES",
}
_HEADER_WORDS = {
    "source", "target", "from", "to", "node1", "node2", "actor1", "actor2",
    "u", "v", "layer", "type", "relation", "edge_type", "label",
}


class ParseError(NetworkError):
    def __init__(self, message: str, line: int, column: int = 1) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _fields(text: str) -> list[tuple[str, int]]:
    """Split a record into (field, 1-based column) pairs."""
    pattern = r"[^,]+" if "," in text else r"\S+"
    out = []
    for match in re.finditer(pattern, text):
        value = match.group().strip()
        if value:
            out.append((value, match.start() + 1 + len(match.group()) - len(match.group().lstrip())))
    return out


def parse_multiplex(document: str | Iterable[str], max_layers: int | None = 64) -> MultiplexNetwork:
    """Build a network from edge-list text.

    Duplicate edges collapse.  Layers declared ``DIRECTED`` are accepted and
    symmetrized with a warning.
    """
    lines = document.splitlines() if isinstance(document, str) else list(document)
    builder = NetworkBuilder(max_layers=max_layers)
    section: str | None = None
    directed_layers: set[str] = set()
    seen_record = False
    for lineno, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text:
            continue
        if text.startswith("#"):
            match = _SECTION.fullmatch(text)
            name = match.group(1).upper() if match else None
            if name in _KNOWN_SECTIONS:
                section = name
            continue
        fields = _fields(text)
        if not fields:
            continue
        if section == "LAYERS":
            layer = fields[0][0]
            builder.add_layer(layer)
            if any(f.upper() == "DIRECTED" for f, _ in fields[1:]):
                directed_layers.add(layer)
            continue
        if section in ("ACTORS", "VERTICES"):
            builder.add_node(fields[0][0])
            continue
        if section not in (None, "EDGES"):
            continue
        if len(fields) != 3:
            column = fields[3][1] if len(fields) > 3 else len(raw.rstrip()) + 1
            raise ParseError(
                f"expected 3 fields (actor actor layer), found {len(fields)}", lineno, column
            )
        (a, _), (b, col_b), (layer, _) = fields
        if not seen_record and {a.lower(), b.lower(), layer.lower()} <= _HEADER_WORDS:
            seen_record = True
            continue
        seen_record = True
        if a == b:
            raise ParseError(f"self-loop on {a!r} in layer {layer!r}", lineno, col_b)
        builder.add_node(a)
        builder.add_node(b)
        builder.add_layer(layer)
        builder.add_edge(a, b, layer)
    if directed_layers:
        log.warning("symmetrizing directed layers: %s", ", ".join(sorted(directed_layers)))
    return builder.build()


def read_multiplex(path: str | Path, max_layers: int | None = 64) -> MultiplexNetwork:
    return parse_multiplex(Path(path).read_text(encoding="utf-8"), max_layers=max_layers)


def _check_name(name: str) -> str:
    if not name or "," in name or name != name.strip() or name.startswith("#") or "\n" in name:
        raise ValueError(f"name {name!r} cannot be written to an edge list")
    return name


def write_multiplex(net: MultiplexNetwork) -> str:
    """Sectioned, comma-separated edge list that :func:`parse_multiplex` reads back."""
    out = ["#TYPE", "multiplex", "#LAYERS"]
    out += [f"{_check_name(layer)},UNDIRECTED" for layer in net.layer_names]
    out.append("#ACTORS")
    out += [_check_name(n) for n in net.node_names]
    out.append("#EDGES")
    out += [f"{a},{b},{layer}" for a, b, layer in net.edges()]
    return "\n".join(out) + "\n"


def _summary(cs: CommunitySet) -> dict[str, object]:
    sizes = [c.size for c in cs.communities]
    participation = Counter(name for c in cs.communities for name in cs.layer_names_of(c))
    return {
        "communities": len(sizes),
        "size_min": min(sizes) if sizes else 0,
        "size_max": max(sizes) if sizes else 0,
        "layer_participation": {name: participation.get(name, 0) for name in cs.layer_names},
    }


def _config(cs: CommunitySet) -> dict[str, object]:
    config = cs.rule.describe()
    config["input_digest"] = cs.meta.get("input_digest")
    return config


def _plain(cs: CommunitySet) -> str:
    config = _config(cs)
    rows = [
        (f"C{i:02d}", " ".join(cs.node_names_of(c)), " ".join(sorted(cs.layer_names_of(c))))
        for i, c in enumerate(cs.communities, start=1)
    ]
    width = max([len("nodes")] + [len(r[1]) for r in rows])
    ident = max([1] + [len(r[0]) for r in rows])
    lines = [
        f"# k={config['k']} m={config['m']} adjacency={config['adjacency']} input={config['input_digest']}",
        f"{'#':<{ident}}  {'nodes':<{width}}  layers",
    ]
    lines += [f"{r[0]:<{ident}}  {r[1]:<{width}}  {r[2]}" for r in rows]
    summary = _summary(cs)
    lines.append(
        f"communities: {summary['communities']}  sizes: {summary['size_min']}-{summary['size_max']}"
    )
    lines.append(
        "layer participation: "
        + " ".join(f"{name}={count}" for name, count in summary["layer_participation"].items())
    )
    return "\n".join(lines) + "\n"


def _structured(cs: CommunitySet) -> str:
    doc = {
        "config": _config(cs),
        "nodes": list(cs.node_names),
        "layers": list(cs.layer_names),
        "cliques": [
            {
                "id": c.id,
                "nodes": [cs.node_names[i] for i in c.nodes],
                "layers": [cs.layer_names[i] for i in c.layers],
            }
            for c in cs.cliques
        ],
        "communities": [
            {
                "id": f"C{i:02d}",
                "nodes": cs.node_names_of(c),
                "layers": cs.layer_names_of(c),
                "cliques": sorted(c.cliques),
            }
            for i, c in enumerate(cs.communities, start=1)
        ],
        "summary": _summary(cs),
    }
    return json.dumps(doc, indent=2) + "\n"


def _dot(cs: CommunitySet) -> str:
    def q(text: str) -> str:
        return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'

    config = _config(cs)
    lines = [
        "graph communities {",
        f"  // k={config['k']} m={config['m']} adjacency={config['adjacency']}",
        "  node [shape=ellipse];",
    ]
    used = sorted({n for c in cs.communities for n in cs.node_names_of(c)})
    lines += [f"  {q('n:' + n)} [label={q(n)}];" for n in used]
    for i, c in enumerate(cs.communities, start=1):
        cid = f"C{i:02d}"
        label = cid + "\\n" + " ".join(cs.layer_names_of(c)).replace('"', '\\"')
        lines.append(f'  {cid} [shape=box, label="{label}"];')
        lines += [f"  {cid} -- {q('n:' + n)};" for n in cs.node_names_of(c)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_report(cs: CommunitySet, fmt: str = "plain") -> str:
    if fmt == "plain":
        return _plain(cs)
    if fmt in ("structured", "json"):
        return _structured(cs)
    if fmt == "dot":
        return _dot(cs)
    raise ValueError(f"unknown report format {fmt!r}; expected one of {REPORT_FORMATS}")


def read_report(text: str) -> CommunitySet:
    """Rebuild a :class:`CommunitySet` from :func:`write_report` structured output."""
    doc = json.loads(text)
    node_names = tuple(doc["nodes"])
    layer_names = tuple(doc["layers"])
    node_index = {n: i for i, n in enumerate(node_names)}
    layer_index = {n: i for i, n in enumerate(layer_names)}
    cliques = tuple(
        Clique(
            tuple(sorted(node_index[n] for n in c["nodes"])),
            LayerSet.of(layer_index[name] for name in c["layers"]),
            c["id"],
        )
        for c in doc["cliques"]
    )
    communities = tuple(
        Community(
            frozenset(c["cliques"]),
            LayerSet.of(layer_index[name] for name in c["layers"]),
            tuple(sorted(node_index[n] for n in c["nodes"])),
        )
        for c in doc["communities"]
    )
    config = doc["config"]
    return CommunitySet(
        communities=communities,
        cliques=cliques,
        rule=AdjacencyRule(config["k"], config["m"], OverlapRule(config["adjacency"])),
        node_names=node_names,
        layer_names=layer_names,
        meta={"input_digest": config.get("input_digest")},
    )
