"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 input parse error, 4 capacity error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from . import io
from .adjacency import AdjacencyRule, OverlapRule, adjacency_to_dot, build_clique_adjacency
from .cliques import CliqueQuery, find_max_cliques
from .communities import detect
from .core import CapacityError, MultiplexNetwork, NetworkError, network_digest
from .oracle import oracle_communities

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_CAPACITY = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _k(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"k must be at least 2, got {value}")
    return value


def _m(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"m must be at least 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mlcpm", description="Clique percolation communities in multiplex networks.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser, formats: Sequence[str]) -> None:
        p.add_argument("input", help="edge-list file, or - for standard input")
        p.add_argument("-k", type=_k, default=3, help="minimum clique size (default 3)")
        p.add_argument("-m", type=_m, default=1, help="minimum number of shared layers (default 1)")
        p.add_argument("--adjacency", choices=[r.value for r in OverlapRule], default="k-1",
                       help="node overlap required for adjacent cliques")
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("-o", "--output", help="write here instead of standard output")

    p = sub.add_parser("detect", help="find communities")
    common(p, io.REPORT_FORMATS)
    p.add_argument("--max-per-seed", type=int, default=None,
                   help="fail if one seed clique yields more communities than this")

    p = sub.add_parser("cliques", help="list maximal cliques (dot: clique-adjacency graph)")
    common(p, ("plain", "dot"))

    p = sub.add_parser("stats", help="summarize a network")
    p.add_argument("input")
    p.add_argument("-o", "--output")

    p = sub.add_parser("oracle", help="brute-force communities, small inputs only")
    common(p, io.REPORT_FORMATS)
    return parser


def _load(path: str) -> MultiplexNetwork:
    if path == "-":
        return io.parse_multiplex(sys.stdin.read())
    return io.read_multiplex(path)


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _stats(net: MultiplexNetwork) -> str:
    lines = [
        f"nodes: {net.node_count}",
        f"layers: {net.layer_count}",
        f"edges: {net.edge_count}",
        f"connected pairs: {len(net.pair_masks)}",
        f"digest: {network_digest(net)}",
    ]
    for i, name in enumerate(net.layer_names):
        edges = sum(len(adj) for adj in net.layer_adjacency[i]) // 2
        active = sum(1 for adj in net.layer_adjacency[i] if adj)
        lines.append(f"layer {name}: {edges} edges, {active} active nodes")
    return "\n".join(lines) + "\n"


def _cliques(net: MultiplexNetwork, args: argparse.Namespace) -> str:
    cliques = find_max_cliques(net, CliqueQuery(args.k, args.m))
    if args.format == "dot":
        graph = build_clique_adjacency(cliques, AdjacencyRule(args.k, args.m, OverlapRule(args.adjacency)))
        return adjacency_to_dot(graph, net)
    lines = [f"# k>={args.k} m>={args.m} cliques={len(cliques)}"]
    for c in cliques:
        lines.append(
            f"c{c.id}  {' '.join(net.node_name_list(c.nodes))}  {' '.join(net.layer_name_list(c.layers))}"
        )
    return "\n".join(lines) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help or a usage error
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        net = _load(args.input)
    except OSError as exc:
        print(f"mlcpm: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"mlcpm: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except NetworkError as exc:
        print(f"mlcpm: {args.input}: {exc}", file=sys.stderr)
        return EXIT_PARSE

    try:
        if args.command == "stats":
            text = _stats(net)
        elif args.command == "cliques":
            text = _cliques(net, args)
        elif args.command == "detect":
            cs = detect(net, args.k, args.m, args.adjacency, max_per_seed=args.max_per_seed)
            text = io.write_report(cs, args.format)
        else:
            cs = oracle_communities(net, args.k, args.m, args.adjacency)
            cs.meta["input_digest"] = network_digest(net)
            text = io.write_report(cs, args.format)
    except CapacityError as exc:
        print(f"mlcpm: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    _emit(text, getattr(args, "output", None))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
