"""Reasoning and set-like operations over lightweight description-logic ontologies."""

from .algebra import (
    RenamingMap,
    closed_fragment,
    closure_delta,
    deprecate,
    difference,
    intersect,
    project,
    rename,
    union,
)
from .formats import (
    ParseError,
    SourceSpan,
    export_dot,
    export_table,
    parse_constraint,
    parse_document,
    parse_ontology,
    serialize_ontology,
)
from .graph import ConstraintGraph, build_graph, reaches, tag_graph, transitive_closure
from .minimize import generate_constraints, minimize_constraints, minimize_graph
from .model import (
    BOTTOM,
    TOP,
    AtLeast,
    Atomic,
    Inclusion,
    Name,
    Not,
    Ontology,
    OntologyError,
    Role,
    Vocabulary,
    VocabularyError,
    canonical_order,
    complement,
)
from .normalize import NormalizationError, classify_inclusion, expand_abbreviations, normalize_inclusion
from .oracle import oracle_implies
from .reason import all_consequences, empty_descriptions, equivalent_theories, implies

__version__ = "0.1.0"
