"""Minimal equivalent graphs and regeneration of a small constraint set."""

from __future__ import annotations

from typing import Iterable

from .graph import ConstraintGraph, bottom_nodes, build_graph
from .model import BOTTOM, TOP, Inclusion, Not, complement, concept_key, sorted_inclusions
from .reason import implies


def minimize_graph(g: ConstraintGraph) -> ConstraintGraph:
    """Drop every non-tautological arc whose target is reachable another way.

    The test runs against the input's reachability, which for a DAG gives the
    transitive reduction in one pass.  Duals go together.
    """
    h = g.copy()
    reach = g.reach()
    for u in range(len(g)):
        for v in sorted(g.succ[u]):
            if g.is_tautological(u, v):
                continue
            others = 0
            for w in g.succ[u]:
                if w != v:
                    others |= reach[w]
            if others >> v & 1:
                h.drop_arc(u, v)
                h.drop_arc(g.dual[v], g.dual[u])
    return h


def _prune(kept: list[Inclusion], candidates: list[Inclusion]) -> list[Inclusion]:
    """Greedily discard candidates implied by everything else, last first."""
    if any(TOP in (c.lhs, c.rhs) for c in kept + candidates):
        return _prune_by_implication(kept, candidates)
    # Without ⊤ every candidate reads e ⊑ ⊥, and asking whether the others
    # still force e empty only needs a reseeded ⊥ fixpoint on one graph.
    g = build_graph(kept, [c.lhs for c in candidates])
    node = {c: g.node_of[c.lhs] for c in candidates}
    current = list(candidates)
    for c in sorted_inclusions(candidates)[::-1]:
        rest = [x for x in current if x != c]
        if node[c] in bottom_nodes(g, [node[x] for x in rest]):
            current = rest
    return current


def _prune_by_implication(kept: list[Inclusion], candidates: list[Inclusion]) -> list[Inclusion]:
    current = list(candidates)
    for c in sorted_inclusions(candidates)[::-1]:
        rest = [x for x in current if x != c]
        if implies(kept + rest, c):
            current = rest
    return current


def generate_constraints(h: ConstraintGraph) -> frozenset[Inclusion]:
    """Read a constraint set back off a (reduced, tagged) constraint graph."""
    processed = {(u, v) for u, v in h.arcs if h.is_tautological(u, v)}
    top = h.top
    out: list[Inclusion] = []
    empties: list[Inclusion] = []

    order = sorted(range(len(h)), key=lambda u: concept_key(h.least_label(u)))
    for u in order:
        if u in h.bottom:
            labels = h.sorted_labels(u)
            if h.is_positive(u):
                empties.extend(Inclusion(e, BOTTOM) for e in labels)
            elif BOTTOM not in h.labels[u]:
                # ¬f is empty, so f is universal; no positive label to anchor f' ⊑ ⊥
                empties.extend(Inclusion(TOP, complement(e)) for e in labels if isinstance(e, Not))
            continue
        if not h.is_positive(u):
            continue
        labels = h.sorted_labels(u)
        if len(labels) > 1:
            for a, b in zip(labels, labels[1:] + labels[:1]):
                incl = Inclusion(a, b)
                if not incl.is_valid:
                    out.append(incl)
        for v in sorted(h.succ[u], key=lambda v: concept_key(h.least_label(v))):
            if (u, v) in processed or v in top:
                continue
            out.append(Inclusion(h.least_label(u), h.least_label(v)))
            processed.add((u, v))
            processed.add((h.dual[v], h.dual[u]))

    # role coupling and cardinality weakening can make some of these redundant
    empties = [e for e in empties if e.is_extended and not e.is_valid]
    if len(empties) > 1:
        empties = _prune(out, empties)
    return frozenset(out) | frozenset(empties)


def minimize_constraints(sigma: Iterable[Inclusion]) -> frozenset[Inclusion]:
    """A small constraint set with the same theory as ``sigma``."""
    sigma = frozenset(sigma)
    if not sigma:
        return frozenset()
    return generate_constraints(minimize_graph(build_graph(sigma)))
