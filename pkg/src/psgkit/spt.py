"""Simplified parse trees: each parse node relabeled, structure kept."""

from __future__ import annotations

from .graphs import EDGE_CHILD, GraphEdge, GraphNode, Spt
from .lexer import Token
from .parser import ParseNode, TYPE_KEYWORDS

PLACEHOLDER_MODES = ("fine", "coarse")

_STRUCTURAL_KINDS = frozenset({"keyword", "operator", "punctuation"})


def _leaf_label(token: Token, fine: bool) -> str:
    if token.kind == "identifier":
        return "#VAR" if fine else "%"
    if token.kind in ("int-literal", "float-literal"):
        return "#LIT" if fine else "%"
    if token.kind == "keyword" and token.text in TYPE_KEYWORDS:
        return "#TYPE" if fine else "%"
    return token.text


def spt_label(node: ParseNode, placeholders: str = "fine") -> str:
    """Label one parse node the way build_spt would.

    Leaves keep structural token text but hide names and values behind
    placeholders; an internal label strings together its children's
    structural text with % standing in for everything else.
    """
    if placeholders not in PLACEHOLDER_MODES:
        raise ValueError(f"placeholders must be one of {PLACEHOLDER_MODES}")
    fine = placeholders == "fine"
    if node.token is not None:
        return _leaf_label(node.token, fine)
    parts = []
    for child in node.children:
        if child.token is not None and child.token.kind in _STRUCTURAL_KINDS:
            parts.append(_leaf_label(child.token, fine))
        else:
            parts.append("%")
    return " ".join(parts)


def build_spt(root: ParseNode, placeholders: str = "fine") -> Spt:
    """Relabel a parse tree node-for-node into a simplified parse tree."""
    nodes: list[GraphNode] = []
    edges: list[GraphEdge] = []

    def walk(node: ParseNode) -> None:
        node_id = len(nodes)
        nodes.append(GraphNode(node_id, spt_label(node, placeholders)))
        for child in node.children:
            # preorder ids are assigned on entry, so the child's id is
            # known before descending into it
            edges.append(GraphEdge(node_id, len(nodes), EDGE_CHILD))
            walk(child)

    walk(root)
    return Spt(nodes=nodes, edges=edges, root=0)
