"""Implication via constraint-graph reachability, and queries built on it."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .graph import ConstraintGraph, build_graph
from .model import BOTTOM, TOP, Concept, Inclusion, OntologyError, complement, concept_key, is_positive
from .normalize import Kind, NormalizationError, classify_inclusion, expand_abbreviations


@lru_cache(maxsize=256)
def _graph(sigma: frozenset[Inclusion]) -> ConstraintGraph:
    return build_graph(sigma)


def graph_for(sigma: Iterable[Inclusion]) -> ConstraintGraph:
    """G(sigma, ∅), shared between calls; do not mutate the result."""
    return _graph(frozenset(sigma))


def holds(g: ConstraintGraph, e: Concept, f: Concept) -> bool:
    """The three-way reachability test for ``e ⊑ f`` on a tagged graph.

    ``e`` and ``f`` may be absent from ``g``; see :meth:`ConstraintGraph.probe`.
    """
    if e == f or Inclusion(e, f).is_valid:
        return True
    if TOP in g.node_of and g.node_of[TOP] in g.bottom:
        # an unsatisfiable theory implies everything
        return True
    if e == TOP and e not in g.node_of:
        # without ⊤ in the constraints every positive description may be empty
        return f is not BOTTOM and g.probe(complement(f))[1]
    reach, bottom = g.probe(e)
    if bottom:
        return True
    if f is BOTTOM and f not in g.node_of:
        return False
    if g.probe(complement(f))[1]:
        return True
    return bool(reach & g.entry_mask(f))


def _prepare(q: Inclusion) -> Inclusion | None:
    """Expand and classify a query; None means it holds in every interpretation."""
    q = Inclusion(expand_abbreviations(q.lhs), expand_abbreviations(q.rhs))
    cls = classify_inclusion(q)
    if cls.kind is Kind.VACUOUS:
        return None
    if cls.kind is Kind.CONTRAPOSITIVE:
        return cls.rewritten
    if cls.kind is Kind.ILL_FORMED:
        raise NormalizationError(f"{q}: {cls.reason}", q)
    return q


def implies(sigma: Iterable[Inclusion], q: Inclusion) -> bool:
    """Decide sigma ⊨ q."""
    q = _prepare(q)
    if q is None:
        return True
    return holds(graph_for(sigma), q.lhs, q.rhs)


def equivalent_theories(sigma1: Iterable[Inclusion], sigma2: Iterable[Inclusion]) -> bool:
    sigma1, sigma2 = frozenset(sigma1), frozenset(sigma2)
    return all(implies(sigma1, s) for s in sigma2) and all(implies(sigma2, s) for s in sigma1)


def all_consequences(sigma: Iterable[Inclusion]) -> frozenset[Inclusion]:
    """Every non-valid implied inclusion between labels of G(sigma, ∅)."""
    sigma = frozenset(sigma)
    g = graph_for(sigma)
    labels = sorted(g.node_of, key=concept_key)
    targets = labels if BOTTOM in g.node_of else labels + [BOTTOM]
    sources = [c for c in labels if is_positive(c) or c == TOP]
    out = set()
    for e in sources:
        for f in targets:
            q = Inclusion(e, f)
            if not q.is_extended or q.is_valid:
                continue
            if implies(sigma, q):
                out.add(q)
    return frozenset(out)


def empty_descriptions(sigma: Iterable[Inclusion]) -> frozenset[Concept]:
    """Positive descriptions that every model of sigma interprets as empty."""
    g = graph_for(sigma)
    return frozenset(c for u in g.bottom for c in g.labels[u] if is_positive(c))


def check_query(q: Inclusion) -> Inclusion:
    """Normalize a user query, raising on forms the procedure cannot decide."""
    prepared = _prepare(q)
    if prepared is None:
        return q
    if not prepared.is_extended:
        raise OntologyError(f"not a lightweight inclusion: {q}")
    return prepared
