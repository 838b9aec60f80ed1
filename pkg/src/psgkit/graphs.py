"""Shared graph containers and the label-multiset view used for comparison."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

Label = str

# Counter already is a multiset; the alias names the role, not the type.
LabelMultiset = Counter

EDGE_CHILD = "child"
EDGE_MINIMUM = "dependency-minimum"
EDGE_POTENTIAL = "dependency-potential"

EDGE_KINDS = frozenset({EDGE_CHILD, EDGE_MINIMUM, EDGE_POTENTIAL})


@dataclass(frozen=True)
class GraphNode:
    """One node of a built graph.

    level is None for tree nodes; graph levels count up from 0 with
    the syntactic level on top. occurrences records how many source
    sites back this node.
    """

    id: int
    label: Label
    level: int | None = None
    occurrences: int = 1


@dataclass(frozen=True)
class GraphEdge:
    src: int
    dst: int
    kind: str


@dataclass
class Spt:
    """A simplified parse tree flattened to labeled nodes plus child edges."""

    nodes: list[GraphNode] = field(default_factory=list)
    edges: list[GraphEdge] = field(default_factory=list)
    root: int = 0

    def node_count(self) -> int:
        return len(self.nodes)


@dataclass
class Psg:
    """A semantics graph: one node per instantiated concept, edges from
    the ontology's dependency rules, nodes grouped into levels."""

    nodes: list[GraphNode] = field(default_factory=list)
    edges: list[GraphEdge] = field(default_factory=list)
    ontology_id: str | None = None

    def node_count(self) -> int:
        return len(self.nodes)

    def level_sizes(self) -> dict[int, int]:
        sizes: dict[int, int] = {}
        for node in self.nodes:
            sizes[node.level] = sizes.get(node.level, 0) + 1
        return sizes


def node_multiset(graph: Spt | Psg) -> LabelMultiset:
    """Collapse a graph to its comparison view.

    Tree nodes count once per node, so repeated labels accumulate.
    Semantics-graph nodes are already deduplicated per concept and
    contribute multiplicity 1 each regardless of occurrences.
    """
    counts: LabelMultiset = Counter()
    if isinstance(graph, Psg):
        for node in graph.nodes:
            counts[node.label] = 1
        return counts
    for node in graph.nodes:
        counts[node.label] += 1
    return counts
