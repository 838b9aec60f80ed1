"""Command-line surface: parse, build, compare, and corpus batch runs.

Exit codes: 0 success, 1 usage, 2 parse/lex error, 3 ontology error,
4 I/O error, 5 corpus completed with per-file failures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import LexError, OntologyError, ParseError, SchemaError
from .graphs import Psg, Spt, node_multiset
from .ontology import PslOntology, load_base_ontology, load_ontology
from .parser import ParseNode, export_parse_tree, parse
from .psg import build_psg
from .serialize import CSV_HEADER, csv_row, report_to_csv, report_to_text, to_dot, to_json
from .similarity import similarity_report
from .spt import PLACEHOLDER_MODES, build_spt

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_ONTOLOGY = 3
EXIT_IO = 4
EXIT_PARTIAL = 5

ONTOLOGY_ENV_VAR = "PSGKIT_ONTOLOGY"


class _Failure(Exception):
    """Internal: abort the command with a message and exit code."""

    def __init__(self, code: int, message: str):
        self.code = code
        self.message = message
        super().__init__(message)


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the documented usage code is 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_source(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _Failure(EXIT_IO, f"cannot read {path}: {exc}")


def _parse_source(path: str) -> ParseNode:
    text = _read_source(path)
    try:
        return parse(text)
    except (LexError, ParseError) as exc:
        raise _Failure(EXIT_PARSE, f"{path}: {exc}")


def _load_configured_ontology(path_arg: str | None) -> PslOntology:
    path = path_arg or os.environ.get(ONTOLOGY_ENV_VAR)
    try:
        if path is None:
            return load_base_ontology()
        return load_ontology(Path(path).read_text())
    except OSError as exc:
        raise _Failure(EXIT_ONTOLOGY, f"cannot read ontology: {exc}")
    except (SchemaError, OntologyError) as exc:
        raise _Failure(EXIT_ONTOLOGY, f"invalid ontology: {exc}")


def _build_graph(tree: ParseNode, args) -> tuple[Spt | Psg, PslOntology | None]:
    if args.rep == "psg":
        ontology = _load_configured_ontology(args.ontology)
        return build_psg(tree, ontology), ontology
    return build_spt(tree, placeholders=args.spt_placeholders), None


def _emit(text: str, out: str | None) -> None:
    data = text if text.endswith("\n") else text + "\n"
    if out is None:
        sys.stdout.write(data)
        return
    try:
        Path(out).write_text(data)
    except OSError as exc:
        raise _Failure(EXIT_IO, f"cannot write {out}: {exc}")


def _graph_text_summary(graph: Spt | Psg) -> str:
    kind = "psg" if isinstance(graph, Psg) else "spt"
    lines = [f"{kind}: {len(graph.nodes)} nodes, {len(graph.edges)} edges"]
    for node in graph.nodes:
        level = "" if node.level is None else f" k={node.level}"
        lines.append(f"  [{node.id}]{level} {node.label} x{node.occurrences}")
    return "\n".join(lines)


def cmd_parse(args) -> int:
    tree = _parse_source(args.file)
    _emit(json.dumps(export_parse_tree(tree), indent=2), args.out)
    return EXIT_OK


def cmd_build(args) -> int:
    tree = _parse_source(args.file)
    graph, ontology = _build_graph(tree, args)
    print(
        f"{args.rep}: {len(graph.nodes)} nodes, {len(graph.edges)} edges",
        file=sys.stderr,
    )
    if args.format == "dot":
        _emit(to_dot(graph, ontology), args.out)
    elif args.format == "text":
        _emit(_graph_text_summary(graph), args.out)
    else:
        _emit(to_json(graph), args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    tree_a = _parse_source(args.file_a)
    tree_b = _parse_source(args.file_b)
    graph_a, _ = _build_graph(tree_a, args)
    graph_b, _ = _build_graph(tree_b, args)
    report = similarity_report(node_multiset(graph_a), node_multiset(graph_b))
    if args.format == "csv":
        _emit(report_to_csv(report), args.out)
    else:
        _emit(report_to_text(report), args.out)
    return EXIT_OK


def cmd_corpus(args) -> int:
    directory = Path(args.dir)
    if not directory.is_dir():
        raise _Failure(EXIT_IO, f"not a directory: {args.dir}")
    files = sorted(p for p in directory.iterdir() if p.is_file())

    ontology = _load_configured_ontology(args.ontology) if args.rep == "psg" else None

    multisets = []
    failed = False
    for path in files:
        try:
            tree = _parse_source(str(path))
        except _Failure as exc:
            print(f"skipping {path.name}: {exc.message}", file=sys.stderr)
            failed = True
            continue
        if ontology is not None:
            graph: Spt | Psg = build_psg(tree, ontology)
        else:
            graph = build_spt(tree, placeholders=args.spt_placeholders)
        multisets.append((path.name, node_multiset(graph)))

    rows = ["file_a,file_b," + CSV_HEADER]
    for i in range(len(multisets)):
        for j in range(i + 1, len(multisets)):
            name_a, counts_a = multisets[i]
            name_b, counts_b = multisets[j]
            report = similarity_report(counts_a, counts_b)
            rows.append(f"{name_a},{name_b},{csv_row(report)}")
    _emit("\n".join(rows), args.out)
    return EXIT_PARTIAL if failed else EXIT_OK


def _add_common(sub, with_format: tuple[str, ...] | None, default_format: str | None) -> None:
    sub.add_argument("--rep", choices=("spt", "psg"), default="spt",
                     help="representation to build (default: spt)")
    sub.add_argument("--ontology", metavar="PATH",
                     help=f"ontology file (default: ${ONTOLOGY_ENV_VAR} "
                          f"or the packaged base ontology)")
    sub.add_argument("--spt-placeholders", choices=PLACEHOLDER_MODES, default="fine",
                     help="leaf placeholder detail for spt (default: fine)")
    if with_format:
        sub.add_argument("--format", choices=with_format, default=default_format,
                         help=f"output format (default: {default_format})")
    sub.add_argument("--out", metavar="PATH", help="write output to a file instead of stdout")


def make_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="psgkit",
                             description="Parse C-like sources, build simplified parse "
                                         "trees or semantics graphs, and compare them.")
    commands = parser.add_subparsers(dest="command", required=True)

    p_parse = commands.add_parser("parse", help="parse one file to a tree document")
    p_parse.add_argument("file")
    p_parse.add_argument("--out", metavar="PATH")
    p_parse.set_defaults(func=cmd_parse)

    p_build = commands.add_parser("build", help="build a graph for one file")
    p_build.add_argument("file")
    _add_common(p_build, ("json", "dot", "text"), "json")
    p_build.set_defaults(func=cmd_build)

    p_compare = commands.add_parser("compare", help="compare two files")
    p_compare.add_argument("file_a")
    p_compare.add_argument("file_b")
    _add_common(p_compare, ("text", "csv"), "text")
    p_compare.set_defaults(func=cmd_compare)

    p_corpus = commands.add_parser("corpus",
                                   help="pairwise comparison CSV over a directory")
    p_corpus.add_argument("dir")
    _add_common(p_corpus, None, None)
    p_corpus.set_defaults(func=cmd_corpus)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Failure as failure:
        print(f"psgkit: {failure.message}", file=sys.stderr)
        return failure.code


if __name__ == "__main__":
    sys.exit(main())
