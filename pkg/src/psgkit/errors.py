"""Exception types shared across the toolkit."""

from __future__ import annotations


class PsgkitError(Exception):
    """Base class for all toolkit errors."""


class LexError(PsgkitError):
    """Raised on input that cannot be tokenized."""

    def __init__(self, line: int, column: int, text: str):
        self.line = line
        self.column = column
        self.text = text
        super().__init__(f"cannot tokenize {text!r} at {line}:{column}")


class ParseError(PsgkitError):
    """Raised on token streams that do not match the grammar."""

    def __init__(self, line: int, column: int, expected: set[str], found: str):
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        self.found = found
        wanted = ", ".join(sorted(expected))
        super().__init__(f"at {line}:{column}: found {found!r}, expected {wanted}")


class SchemaError(PsgkitError):
    """Raised when an external document does not match its schema."""


class OntologyError(PsgkitError):
    """Raised when an ontology fails structural validation."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(violations))


class UnknownConcept(PsgkitError):
    """Raised when a concept id is not declared in the ontology."""

    def __init__(self, concept_id: str):
        self.concept_id = concept_id
        super().__init__(f"unknown concept id {concept_id!r}")


class UnmappedCategory(PsgkitError):
    """Raised when classification meets a key with no mapping entry."""

    def __init__(self, category: str):
        self.category = category
        super().__init__(f"no mapping entry for {category!r}")
