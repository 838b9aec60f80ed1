"""Instantiate semantics graphs from parse trees and an ontology."""

from __future__ import annotations

from collections import Counter

from .errors import UnmappedCategory
from .graphs import EDGE_MINIMUM, EDGE_POTENTIAL, GraphEdge, GraphNode, Psg
from .ontology import MINIMUM, PslOntology, minimum_closure
from .parser import ParseNode, iter_nodes

# Concept seeded when a function calls itself; skipped silently if the
# ontology does not model it.
SELF_INVOCATION_CONCEPT = "self-invocation"

# The token classes that classify. Keyword and punctuation tokens are
# structure already captured by their parent's category, and the
# translation-unit wrapper is an artifact of parsing, so none of them
# contribute occurrences.
_TOKEN_CLASS_KEYS = {
    "identifier": "identifier",
    "int-literal": "int-literal",
    "float-literal": "float-literal",
}

_SKIPPED_CATEGORIES = frozenset({"translation-unit"})


def _category_keys(tree: ParseNode) -> Counter:
    keys: Counter = Counter()
    for node in iter_nodes(tree):
        if node.token is None:
            if node.category not in _SKIPPED_CATEGORIES:
                keys[node.category] += 1
            continue
        kind = node.token.kind
        if kind in _TOKEN_CLASS_KEYS:
            keys[_TOKEN_CLASS_KEYS[kind]] += 1
        elif kind == "operator":
            keys[f"operator:{node.token.text}"] += 1
    return keys


def _entry_for(o: PslOntology, key: str):
    entry = o.mapping_by_category.get(key)
    if entry is None:
        raise UnmappedCategory(key)
    return entry


def _partition_entry(o: PslOntology, entry) -> tuple[str, list[str]]:
    n = o.max_level()
    syal = ""
    semantic: list[str] = []
    for cid in entry.concepts:
        if o.concept_by_id[cid].level == n:
            syal = cid
        else:
            semantic.append(cid)
    return syal, semantic


def classify_syntax(tree: ParseNode, o: PslOntology) -> Counter:
    """Count syntactic-level concept instantiations for a (sub)tree.

    Identifier and literal text is discarded; only token classes and
    node categories survive.
    """
    counts: Counter = Counter()
    for key, count in _category_keys(tree).items():
        syal, _ = _partition_entry(o, _entry_for(o, key))
        counts[syal] += count
    return counts


def _self_call_counts(tree: ParseNode) -> dict[str, int]:
    counts: dict[str, int] = {}
    for node in iter_nodes(tree):
        if node.category != "function-definition":
            continue
        name = node.children[1].token.text
        body = node.children[-1]
        calls = 0
        for sub in iter_nodes(body):
            if sub.category == "call-expression" and sub.children[0].token.text == name:
                calls += 1
        if calls:
            counts[name] = counts.get(name, 0) + calls
    return counts


def detect_recursion(tree: ParseNode) -> set[str]:
    """Names of functions that call themselves directly."""
    return set(_self_call_counts(tree))


def build_psg(tree: ParseNode, o: PslOntology) -> Psg:
    """Build the semantics graph for a tree under an ontology.

    Nodes are one-per-concept: the syntactic instantiations plus the
    minimum closure of the mapped semantic seeds (and the self-call
    trigger). Occurrence counts enter at the seeds and flow toward
    level 0 along instantiated minimum edges; syntactic counts come
    straight from classification.
    """
    n = o.max_level()

    syal_occ: Counter = Counter()
    seed_occ: Counter = Counter()
    for key, count in _category_keys(tree).items():
        syal, semantic = _partition_entry(o, _entry_for(o, key))
        syal_occ[syal] += count
        for cid in semantic:
            seed_occ[cid] += count

    self_calls = sum(_self_call_counts(tree).values())
    if self_calls and o.has_concept(SELF_INVOCATION_CONCEPT):
        seed_occ[SELF_INVOCATION_CONCEPT] += self_calls

    closure = minimum_closure(o, set(seed_occ))

    by_level: dict[int, list[str]] = {}
    for cid in closure:
        by_level.setdefault(o.concept_by_id[cid].level, []).append(cid)
    for members in by_level.values():
        members.sort()

    occurrences: dict[str, int] = dict(seed_occ)
    for k in range(n - 2, -1, -1):
        for cid in by_level.get(k, ()):
            total = seed_occ.get(cid, 0)
            for child in by_level.get(k + 1, ()):
                if cid in o.minimum_parents(child):
                    total += occurrences[child]
            occurrences[cid] = total

    members: list[tuple[int, str, int]] = []
    for cid, count in syal_occ.items():
        members.append((n, cid, count))
    for cid in closure:
        members.append((o.concept_by_id[cid].level, cid, occurrences[cid]))
    members.sort(key=lambda item: (item[0], item[1]))

    nodes = [
        GraphNode(i, cid, level=level, occurrences=count)
        for i, (level, cid, count) in enumerate(members)
    ]
    ids = {node.label: node.id for node in nodes}

    edge_set = set()
    for rule in o.rules:
        if rule.src in ids and rule.dst in ids:
            kind = EDGE_MINIMUM if rule.strength == MINIMUM else EDGE_POTENTIAL
            edge_set.add(GraphEdge(ids[rule.src], ids[rule.dst], kind))
    edges = sorted(edge_set, key=lambda e: (e.src, e.dst, e.kind))

    return Psg(nodes=nodes, edges=edges, ontology_id=o.id)
