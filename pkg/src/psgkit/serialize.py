"""Interchange formats: graph JSON, DOT, and report text/CSV."""

from __future__ import annotations

import json

from .errors import SchemaError
from .graphs import (
    EDGE_CHILD,
    EDGE_MINIMUM,
    EDGE_POTENTIAL,
    GraphEdge,
    GraphNode,
    Psg,
    Spt,
)
from .ontology import PslOntology
from .similarity import SimilarityReport

CSV_HEADER = "n1,n2,i1,i2,p1,p2,eta,lower,range_lo,range_hi,average"


def to_json(graph: Spt | Psg) -> str:
    """Render a graph as a JSON document (stable field order)."""
    nodes = []
    for node in graph.nodes:
        record: dict = {"id": node.id, "label": node.label}
        if node.level is not None:
            record["level"] = node.level
        record["occurrences"] = node.occurrences
        nodes.append(record)
    edges = [{"from": e.src, "to": e.dst, "kind": e.kind} for e in graph.edges]
    if isinstance(graph, Psg):
        doc = {"kind": "psg", "ontology": graph.ontology_id, "nodes": nodes, "edges": edges}
    else:
        doc = {"kind": "spt", "root": graph.root, "nodes": nodes, "edges": edges}
    return json.dumps(doc, indent=2)


def _node_from_record(record: object, path: str, want_level: bool) -> GraphNode:
    if not isinstance(record, dict):
        raise SchemaError(f"{path}: expected an object")
    node_id = record.get("id")
    if not isinstance(node_id, int) or isinstance(node_id, bool):
        raise SchemaError(f"{path}.id: expected an integer")
    label = record.get("label")
    if not isinstance(label, str) or not label:
        raise SchemaError(f"{path}.label: expected a non-empty string")
    occurrences = record.get("occurrences", 1)
    if not isinstance(occurrences, int) or isinstance(occurrences, bool) or occurrences < 1:
        raise SchemaError(f"{path}.occurrences: expected a positive integer")
    level = record.get("level")
    if want_level:
        if not isinstance(level, int) or isinstance(level, bool):
            raise SchemaError(f"{path}.level: expected an integer")
    elif level is not None:
        raise SchemaError(f"{path}.level: tree nodes carry no level")
    return GraphNode(node_id, label, level=level, occurrences=occurrences)


def from_json(text: str | bytes) -> Spt | Psg:
    """Rebuild a graph from its JSON document, validating references."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"graph document is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("$: expected an object")
    kind = doc.get("kind")
    if kind not in ("spt", "psg"):
        raise SchemaError(f"$.kind: expected 'spt' or 'psg', got {kind!r}")

    raw_nodes = doc.get("nodes")
    if not isinstance(raw_nodes, list):
        raise SchemaError("$.nodes: expected a list")
    nodes = [
        _node_from_record(record, f"$.nodes[{i}]", want_level=(kind == "psg"))
        for i, record in enumerate(raw_nodes)
    ]
    ids = set()
    for i, node in enumerate(nodes):
        if node.id in ids:
            raise SchemaError(f"$.nodes[{i}].id: duplicate node id {node.id}")
        ids.add(node.id)
    if kind == "psg":
        labels = set()
        for i, node in enumerate(nodes):
            if node.label in labels:
                raise SchemaError(
                    f"$.nodes[{i}].label: duplicate label {node.label!r} "
                    f"(one node per concept)"
                )
            labels.add(node.label)

    allowed_kinds = {EDGE_MINIMUM, EDGE_POTENTIAL} if kind == "psg" else {EDGE_CHILD}
    raw_edges = doc.get("edges")
    if not isinstance(raw_edges, list):
        raise SchemaError("$.edges: expected a list")
    edges = []
    for i, record in enumerate(raw_edges):
        path = f"$.edges[{i}]"
        if not isinstance(record, dict):
            raise SchemaError(f"{path}: expected an object")
        src = record.get("from")
        dst = record.get("to")
        edge_kind = record.get("kind")
        for key, value in (("from", src), ("to", dst)):
            if not isinstance(value, int) or isinstance(value, bool):
                raise SchemaError(f"{path}.{key}: expected an integer")
            if value not in ids:
                raise SchemaError(f"{path}.{key}: no node with id {value}")
        if edge_kind not in allowed_kinds:
            raise SchemaError(
                f"{path}.kind: expected one of {sorted(allowed_kinds)}, got {edge_kind!r}"
            )
        edges.append(GraphEdge(src, dst, edge_kind))

    if kind == "psg":
        ontology_id = doc.get("ontology")
        if ontology_id is not None and not isinstance(ontology_id, str):
            raise SchemaError("$.ontology: expected a string or null")
        return Psg(nodes=nodes, edges=edges, ontology_id=ontology_id)

    root = doc.get("root")
    if not isinstance(root, int) or isinstance(root, bool):
        raise SchemaError("$.root: expected an integer")
    if root not in ids:
        raise SchemaError(f"$.root: no node with id {root}")
    return Spt(nodes=nodes, edges=edges, root=root)


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(graph: Spt | Psg, ontology: PslOntology | None = None) -> str:
    """Render a graph in DOT. Semantics graphs get one cluster per
    level (named from the ontology when given) with the syntactic
    cluster flagged; minimum edges are solid, potential edges dashed.
    """
    lines: list[str] = []
    if isinstance(graph, Psg):
        lines.append("digraph psg {")
        by_level: dict[int, list[GraphNode]] = {}
        for node in graph.nodes:
            by_level.setdefault(node.level, []).append(node)
        if ontology is not None:
            level_ks = sorted(level.k for level in ontology.levels)
            syal_k = ontology.syntactic_k()
        else:
            level_ks = sorted(by_level)
            syal_k = level_ks[-1] if level_ks else None
        for k in level_ks:
            name = ontology.level_name(k) if ontology is not None else f"level {k}"
            if k == syal_k:
                name += " (syntactic)"
            lines.append(f"  subgraph cluster_level_{k} {{")
            lines.append(f'    label="{_dot_escape(name)}";')
            for node in sorted(by_level.get(k, []), key=lambda n: n.id):
                text = f"{node.label} ({node.occurrences})"
                lines.append(f'    n{node.id} [label="{_dot_escape(text)}"];')
            lines.append("  }")
        for edge in sorted(graph.edges, key=lambda e: (e.src, e.dst, e.kind)):
            style = "solid" if edge.kind == EDGE_MINIMUM else "dashed"
            lines.append(f"  n{edge.src} -> n{edge.dst} [style={style}];")
        lines.append("}")
        return "\n".join(lines)

    lines.append("digraph spt {")
    for node in sorted(graph.nodes, key=lambda n: n.id):
        lines.append(f'  n{node.id} [label="{_dot_escape(node.label)}"];')
    for edge in graph.edges:
        lines.append(f"  n{edge.src} -> n{edge.dst};")
    lines.append("}")
    return "\n".join(lines)


def report_to_text(report: SimilarityReport) -> str:
    """The five steps, one line each, fractions next to percentages."""
    r = report.rendered
    lines = [
        f"step 1  |N1| = {report.n1_card}  |N2| = {report.n2_card}  "
        f"|I1| = {report.i1_card}  |I2| = {report.i2_card}",
        f"step 2  P1 = {report.i1_card}/{report.n1_card} = {r['p1']}%  "
        f"P2 = {report.i2_card}/{report.n2_card} = {r['p2']}%",
        f"step 3  eta = |P1 - P2| = {report.eta} = {r['eta']}%",
        f"step 4  L = |min(P1, P2) - eta| = {report.lower} = {r['lower']}%",
        f"step 5  R = [{r['range_lo']}%, {r['range_hi']}%]  "
        f"A = {report.average} = {r['average']}%",
    ]
    return "\n".join(lines)


def report_to_csv(report: SimilarityReport) -> str:
    """Header plus one data row; percent columns use 2 decimals."""
    return CSV_HEADER + "\n" + csv_row(report)


def csv_row(report: SimilarityReport) -> str:
    r = report.rendered
    return ",".join([
        str(report.n1_card),
        str(report.n2_card),
        str(report.i1_card),
        str(report.i2_card),
        r["p1"],
        r["p2"],
        r["eta"],
        r["lower"],
        r["range_lo"],
        r["range_hi"],
        r["average"],
    ])
