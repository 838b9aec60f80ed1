"""Abstraction-level ontology: loading, validation, and closure queries.

The ontology is plain data. Levels are indexed k = 0 (most abstract)
through n (least abstract); exactly one level, the last, is syntactic.
Minimum dependency rules step from level k to level k-1 and drive node
instantiation; potential rules only ever add edges.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .errors import OntologyError, SchemaError, UnknownConcept
from .lexer import OPERATORS
from .parser import INTERNAL_CATEGORIES

SEMANTIC = "semantic"
SYNTACTIC = "syntactic"
LEVEL_KINDS = (SEMANTIC, SYNTACTIC)

MINIMUM = "minimum"
POTENTIAL = "potential"
RULE_STRENGTHS = (MINIMUM, POTENTIAL)

BASE_ONTOLOGY_RESOURCE = "data/base_ontology.json"

# Every key the classifier can emit, plus the two value-leaf categories
# (kept mapped for completeness even though leaves classify by token
# class). Each needs exactly one mapping entry.
REQUIRED_MAPPING_CATEGORIES = frozenset(
    INTERNAL_CATEGORIES
    | {"identifier-expression", "literal-expression"}
    | {"identifier", "int-literal", "float-literal"}
    | {f"operator:{op}" for op in OPERATORS}
)


@dataclass(frozen=True)
class AbstractionLevel:
    k: int
    kind: str
    name: str


@dataclass(frozen=True)
class Concept:
    id: str
    level: int
    display: str


@dataclass(frozen=True)
class DependencyRule:
    src: str
    dst: str
    strength: str


@dataclass(frozen=True)
class MappingEntry:
    category: str
    concepts: tuple[str, ...]


@dataclass
class PslOntology:
    """Validated ontology plus lookup tables. Treat as immutable."""

    id: str | None
    levels: list[AbstractionLevel]
    concepts: list[Concept]
    rules: list[DependencyRule]
    mapping: list[MappingEntry]
    concept_by_id: dict[str, Concept] = field(init=False, repr=False)
    mapping_by_category: dict[str, MappingEntry] = field(init=False, repr=False)
    _min_parents: dict[str, tuple[str, ...]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.concept_by_id = {c.id: c for c in self.concepts}
        self.mapping_by_category = {m.category: m for m in self.mapping}
        parents: dict[str, list[str]] = {}
        for rule in self.rules:
            if rule.strength == MINIMUM:
                parents.setdefault(rule.src, []).append(rule.dst)
        self._min_parents = {src: tuple(sorted(set(dsts))) for src, dsts in parents.items()}

    def max_level(self) -> int:
        return max(level.k for level in self.levels)

    def syntactic_k(self) -> int | None:
        ks = [level.k for level in self.levels if level.kind == SYNTACTIC]
        return ks[0] if len(ks) == 1 else None

    def level_name(self, k: int) -> str:
        for level in self.levels:
            if level.k == k:
                return level.name
        raise UnknownConcept(f"level {k}")

    def level_sizes(self) -> dict[int, int]:
        sizes = {level.k: 0 for level in self.levels}
        for concept in self.concepts:
            if concept.level in sizes:
                sizes[concept.level] += 1
        return sizes

    def minimum_parents(self, concept_id: str) -> tuple[str, ...]:
        return self._min_parents.get(concept_id, ())

    def has_concept(self, concept_id: str) -> bool:
        return concept_id in self.concept_by_id


def validate_ontology(o: PslOntology) -> list[str]:
    """Report every invariant violation; an empty list means valid."""
    violations: list[str] = []

    if not o.levels:
        violations.append("ontology declares no levels")
        return violations

    ks = sorted(level.k for level in o.levels)
    contiguous = ks == list(range(len(ks)))
    if not contiguous:
        violations.append(f"level indices not contiguous from 0: {ks}")
    for level in o.levels:
        if level.kind not in LEVEL_KINDS:
            violations.append(f"level {level.k} has unknown kind {level.kind!r}")

    n = max(ks)
    syntactic_ks = sorted(level.k for level in o.levels if level.kind == SYNTACTIC)
    if len(syntactic_ks) != 1:
        violations.append(
            f"exactly one syntactic level required, found {len(syntactic_ks)}"
        )
    elif syntactic_ks[0] != n:
        violations.append(
            f"exactly one syntactic level required and it must be the last "
            f"(k={n}), found it at k={syntactic_ks[0]}"
        )

    declared_levels = {level.k for level in o.levels}
    seen_ids: set[str] = set()
    for concept in o.concepts:
        if concept.id in seen_ids:
            violations.append(f"duplicate concept id {concept.id!r}")
        seen_ids.add(concept.id)
        if concept.level not in declared_levels:
            violations.append(
                f"concept {concept.id!r} references undeclared level {concept.level}"
            )

    by_id = {c.id: c for c in o.concepts}

    for rule in o.rules:
        if rule.strength not in RULE_STRENGTHS:
            violations.append(
                f"rule {rule.src} -> {rule.dst} has unknown strength {rule.strength!r}"
            )
            continue
        missing = [cid for cid in (rule.src, rule.dst) if cid not in by_id]
        if missing:
            for cid in missing:
                violations.append(
                    f"rule {rule.src} -> {rule.dst} references unknown concept {cid!r}"
                )
            continue
        if rule.strength == MINIMUM:
            src_level = by_id[rule.src].level
            dst_level = by_id[rule.dst].level
            if dst_level != src_level - 1:
                violations.append(
                    f"minimum rule {rule.src} -> {rule.dst} must step from level "
                    f"k to k-1, got {src_level} -> {dst_level}"
                )

    min_sources = {
        rule.src
        for rule in o.rules
        if rule.strength == MINIMUM and rule.src in by_id and rule.dst in by_id
        and by_id[rule.dst].level == by_id[rule.src].level - 1
    }
    for concept in o.concepts:
        if concept.level > 0 and concept.level in declared_levels:
            if concept.id not in min_sources:
                violations.append(
                    f"orphan concept {concept.id!r}: no minimum dependency from "
                    f"level {concept.level} to level {concept.level - 1}"
                )

    if contiguous:
        sizes = o.level_sizes()
        for k in range(n):
            if sizes[k] > sizes[k + 1]:
                violations.append(
                    f"non-monotone level sizes: m_{k}={sizes[k]} > m_{k + 1}={sizes[k + 1]}"
                )

    syal_k = syntactic_ks[0] if len(syntactic_ks) == 1 else None
    seen_categories: set[str] = set()
    for entry in o.mapping:
        if entry.category in seen_categories:
            violations.append(f"category {entry.category!r} mapped more than once")
            continue
        seen_categories.add(entry.category)
        if entry.category not in REQUIRED_MAPPING_CATEGORIES:
            violations.append(f"mapping references unknown category {entry.category!r}")
        if not entry.concepts:
            violations.append(f"mapping entry for {entry.category!r} lists no concepts")
            continue
        unknown = [cid for cid in entry.concepts if cid not in by_id]
        for cid in unknown:
            violations.append(
                f"mapping entry for {entry.category!r} references unknown concept {cid!r}"
            )
        if unknown or syal_k is None:
            continue
        syal = [cid for cid in entry.concepts if by_id[cid].level == syal_k]
        semantic = [cid for cid in entry.concepts if by_id[cid].level == syal_k - 1]
        if len(syal) != 1:
            violations.append(
                f"mapping entry for {entry.category!r} must name exactly one "
                f"level-{syal_k} concept, found {len(syal)}"
            )
        if len(syal) + len(semantic) != len(entry.concepts):
            violations.append(
                f"mapping entry for {entry.category!r} may only name level-{syal_k} "
                f"and level-{syal_k - 1} concepts"
            )
        if len(syal) == 1 and semantic:
            parents = set(o.minimum_parents(syal[0]))
            if not parents.intersection(semantic):
                violations.append(
                    f"mapping entry for {entry.category!r}: none of its semantic "
                    f"concepts is a minimum parent of {syal[0]!r}"
                )
    for category in sorted(REQUIRED_MAPPING_CATEGORIES - seen_categories):
        violations.append(f"category {category!r} has no mapping entry")

    return violations


def minimum_closure(o: PslOntology, seed) -> set[str]:
    """Seeds plus everything reachable by walking minimum rules toward
    level 0. Idempotent and monotone in the seed set."""
    result: set[str] = set()
    frontier: list[str] = []
    for cid in seed:
        if not o.has_concept(cid):
            raise UnknownConcept(cid)
        if cid not in result:
            result.add(cid)
            frontier.append(cid)
    while frontier:
        cid = frontier.pop()
        for parent in o.minimum_parents(cid):
            if parent not in result:
                result.add(parent)
                frontier.append(parent)
    return result


def _expect(doc: dict, key: str, types, path: str):
    if key not in doc:
        raise SchemaError(f"{path}.{key}: missing")
    value = doc[key]
    if not isinstance(value, types) or isinstance(value, bool):
        raise SchemaError(f"{path}.{key}: wrong type")
    return value


def _parse_document(doc: object) -> PslOntology:
    if not isinstance(doc, dict):
        raise SchemaError("$: expected an object")

    ontology_id = doc.get("id")
    if ontology_id is not None and not isinstance(ontology_id, str):
        raise SchemaError("$.id: expected a string")

    raw_levels = _expect(doc, "levels", list, "$")
    levels = []
    for i, item in enumerate(raw_levels):
        path = f"$.levels[{i}]"
        if not isinstance(item, dict):
            raise SchemaError(f"{path}: expected an object")
        k = _expect(item, "k", int, path)
        kind = _expect(item, "kind", str, path)
        name = _expect(item, "name", str, path)
        if kind not in LEVEL_KINDS:
            raise SchemaError(f"{path}.kind: expected one of {LEVEL_KINDS}")
        levels.append(AbstractionLevel(k, kind, name))

    raw_concepts = _expect(doc, "concepts", list, "$")
    concepts = []
    for i, item in enumerate(raw_concepts):
        path = f"$.concepts[{i}]"
        if not isinstance(item, dict):
            raise SchemaError(f"{path}: expected an object")
        cid = _expect(item, "id", str, path)
        level = _expect(item, "level", int, path)
        display = _expect(item, "display", str, path)
        concepts.append(Concept(cid, level, display))

    raw_rules = _expect(doc, "rules", list, "$")
    rules = []
    for i, item in enumerate(raw_rules):
        path = f"$.rules[{i}]"
        if not isinstance(item, dict):
            raise SchemaError(f"{path}: expected an object")
        src = _expect(item, "from", str, path)
        dst = _expect(item, "to", str, path)
        strength = _expect(item, "strength", str, path)
        if strength not in RULE_STRENGTHS:
            raise SchemaError(f"{path}.strength: expected one of {RULE_STRENGTHS}")
        rules.append(DependencyRule(src, dst, strength))

    raw_mapping = _expect(doc, "mapping", list, "$")
    mapping = []
    for i, item in enumerate(raw_mapping):
        path = f"$.mapping[{i}]"
        if not isinstance(item, dict):
            raise SchemaError(f"{path}: expected an object")
        category = _expect(item, "category", str, path)
        concept_ids = _expect(item, "concepts", list, path)
        for j, cid in enumerate(concept_ids):
            if not isinstance(cid, str):
                raise SchemaError(f"{path}.concepts[{j}]: expected a string")
        mapping.append(MappingEntry(category, tuple(concept_ids)))

    return PslOntology(ontology_id, levels, concepts, rules, mapping)


def load_ontology(document: str | bytes | dict) -> PslOntology:
    """Parse and validate an ontology document (JSON text or parsed dict).

    Raises SchemaError for malformed documents and OntologyError when
    the structure parses but an invariant fails.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"ontology is not valid JSON: {exc}") from exc
    ontology = _parse_document(document)
    violations = validate_ontology(ontology)
    if violations:
        raise OntologyError(violations)
    return ontology


def base_ontology_text() -> str:
    """JSON text of the ontology shipped inside the package."""
    return resources.files(__package__).joinpath(BASE_ONTOLOGY_RESOURCE).read_text()


def load_base_ontology() -> PslOntology:
    return load_ontology(base_ontology_text())
