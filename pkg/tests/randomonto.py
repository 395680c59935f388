"""Random small ontologies for property tests.

Two front ends over one shape: a seeded ``random.Random`` corpus for the
acceptance suite, and a hypothesis strategy for the unit property tests.
"""

from __future__ import annotations

import random

from hypothesis import strategies as st

from ontoalgebra.model import (
    BOTTOM,
    AtLeast,
    Atomic,
    Inclusion,
    Name,
    Not,
    Ontology,
    TOP,
    Role,
    Vocabulary,
    complement,
    concept_key,
)
from ontoalgebra.reason import graph_for

CONCEPTS = [Name.plain(f"C{i}") for i in range(6)]
ROLES = [Name.plain(f"P{i}") for i in range(3)]
VOCAB = Vocabulary(frozenset(CONCEPTS), frozenset(ROLES))
MAX_N = 3
MAX_CONSTRAINTS = 15


def _basic(r: random.Random):
    if r.random() < 0.55:
        return Atomic(r.choice(CONCEPTS))
    return AtLeast(r.randint(1, MAX_N), Role(r.choice(ROLES), r.random() < 0.4))


def random_sigma(r: random.Random, max_size: int = MAX_CONSTRAINTS) -> frozenset[Inclusion]:
    out = set()
    for _ in range(r.randint(0, max_size)):
        lhs = _basic(r)
        x = r.random()
        if x < 0.05:
            rhs = BOTTOM
        elif x < 0.35:
            rhs = Not(_basic(r))
        else:
            rhs = _basic(r)
        out.add(Inclusion(lhs, rhs))
    return frozenset(out)


def corpus(seed: int, count: int) -> list[frozenset[Inclusion]]:
    r = random.Random(seed)
    return [random_sigma(r) for _ in range(count)]


def random_keep(r: random.Random) -> frozenset[Name]:
    return frozenset(n for n in CONCEPTS + ROLES if r.random() < 0.6)


def ontology(sigma) -> Ontology:
    return Ontology(VOCAB, frozenset(sigma))


def candidates(*sigmas) -> list[Inclusion]:
    """Non-valid queries from positive labels (or ⊤) to labels of the combined graph."""
    g = graph_for(frozenset().union(*sigmas))
    labels = sorted(g.node_of, key=concept_key)
    targets = labels if BOTTOM in labels else labels + [BOTTOM]
    out = []
    for e in labels:
        if isinstance(e, (Atomic, AtLeast)) or e == TOP:
            for f in targets:
                q = Inclusion(e, f)
                if not q.is_valid:
                    out.append(q)
    return out


# -- hypothesis ----------------------------------------------------------------

atomics = st.sampled_from(CONCEPTS).map(Atomic)
roles = st.builds(Role, st.sampled_from(ROLES), st.booleans())
at_leasts = st.builds(AtLeast, st.integers(1, MAX_N), roles)
basics = st.one_of(atomics, at_leasts)
right_sides = st.one_of(basics, basics.map(Not), st.just(BOTTOM))
inclusions = st.builds(Inclusion, basics, right_sides)
sigmas = st.frozensets(inclusions, max_size=10)


def _kind(g, u) -> str:
    labels = g.labels[u]
    if labels == {BOTTOM}:
        return "bottom"
    if labels == {Not(BOTTOM)}:
        return "top"
    if all(isinstance(c, (Atomic, AtLeast)) for c in labels):
        return "pos"
    if all(isinstance(c, Not) and isinstance(c.basic, (Atomic, AtLeast)) for c in labels):
        return "neg"
    return "mixed"


ARC_SHAPES = {("pos", "pos"), ("pos", "bottom"), ("pos", "neg"), ("neg", "neg"), ("top", "neg")}


def assert_graph_invariants(g) -> None:
    """Acyclicity, unique labels, homogeneity, duality and the arc taxonomy."""
    g.topological_order()  # raises on a cycle
    seen = set()
    for u in range(len(g)):
        assert g.labels[u], "unlabelled node"
        assert not (g.labels[u] & seen), "label on two nodes"
        seen |= g.labels[u]
        assert _kind(g, u) != "mixed", f"inhomogeneous node {g.labels[u]}"
        d = g.dual[u]
        assert g.dual[d] == u
        assert {complement(c) for c in g.labels[u]} == g.labels[d]
    for u, v in g.arcs:
        assert (g.dual[v], g.dual[u]) in g.arcs, "missing dual arc"
        assert (_kind(g, u), _kind(g, v)) in ARC_SHAPES, f"arc shape {_kind(g, u)}->{_kind(g, v)}"
    assert g.top == {g.dual[b] for b in g.bottom}
