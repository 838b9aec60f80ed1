"""Semantics graphs and simplified parse trees for C-like source,
with exact multiset-overlap similarity."""

from .errors import (
    LexError,
    OntologyError,
    ParseError,
    PsgkitError,
    SchemaError,
    UnknownConcept,
    UnmappedCategory,
)
from .graphs import (
    EDGE_CHILD,
    EDGE_MINIMUM,
    EDGE_POTENTIAL,
    GraphEdge,
    GraphNode,
    LabelMultiset,
    Psg,
    Spt,
    node_multiset,
)
from .lexer import Token, tokenize
from .ontology import (
    PslOntology,
    load_base_ontology,
    load_ontology,
    minimum_closure,
    validate_ontology,
)
from .parser import (
    ParseNode,
    count_nodes,
    export_parse_tree,
    import_parse_tree,
    iter_nodes,
    parse,
)
from .psg import build_psg, classify_syntax, detect_recursion
from .serialize import from_json, report_to_csv, report_to_text, to_dot, to_json
from .similarity import (
    SimilarityReport,
    filter_intersection,
    format_percent,
    lower_bound,
    percent_intersection,
    percentages_distance,
    similarity_report,
)
from .spt import build_spt, spt_label

__version__ = "0.1.0"

__all__ = [
    "EDGE_CHILD",
    "EDGE_MINIMUM",
    "EDGE_POTENTIAL",
    "GraphEdge",
    "GraphNode",
    "LabelMultiset",
    "LexError",
    "OntologyError",
    "ParseError",
    "ParseNode",
    "Psg",
    "PsgkitError",
    "PslOntology",
    "SchemaError",
    "SimilarityReport",
    "Spt",
    "Token",
    "UnknownConcept",
    "UnmappedCategory",
    "build_psg",
    "build_spt",
    "classify_syntax",
    "count_nodes",
    "detect_recursion",
    "export_parse_tree",
    "filter_intersection",
    "format_percent",
    "from_json",
    "import_parse_tree",
    "iter_nodes",
    "load_base_ontology",
    "load_ontology",
    "lower_bound",
    "minimum_closure",
    "node_multiset",
    "parse",
    "percent_intersection",
    "percentages_distance",
    "report_to_csv",
    "report_to_text",
    "similarity_report",
    "spt_label",
    "to_dot",
    "to_json",
    "tokenize",
    "validate_ontology",
]
