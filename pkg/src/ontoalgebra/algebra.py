"""Operations that build new ontologies from existing ones.

Every operation returns an :class:`~ontoalgebra.model.Ontology` whose
constraints have already been minimized.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .graph import ConstraintGraph, build_graph, tag_graph, transitive_closure
from .minimize import generate_constraints, minimize_constraints, minimize_graph
from .model import (
    BOTTOM,
    TOP,
    AtLeast,
    Atomic,
    Concept,
    Inclusion,
    Name,
    Not,
    Ontology,
    Role,
    Vocabulary,
    VocabularyError,
    concept_key,
    concept_names,
    is_positive,
    sorted_inclusions,
)
from .normalize import normalize_constraint_set, prefer_lightweight
from .reason import holds, implies


def _names_in(constraints: Iterable[Inclusion]) -> frozenset[Name]:
    out: set[Name] = set()
    for c in constraints:
        out |= c.symbols()
    return frozenset(out)


def union(o1: Ontology, o2: Ontology) -> Ontology:
    o1.vocabulary.check_compatible(o2.vocabulary)
    return Ontology(o1.vocabulary | o2.vocabulary, minimize_constraints(o1.constraints | o2.constraints))


def deprecate(o1: Ontology, psi: Iterable[Inclusion]) -> Ontology:
    """Remove the listed axioms syntactically and minimize what is left."""
    psi = normalize_constraint_set(psi, allow_extended=True)
    absent = psi - o1.constraints
    if absent:
        shown = ", ".join(str(c) for c in sorted_inclusions(absent))
        warnings.warn(f"not among the constraints, ignored: {shown}", stacklevel=2)
    return o1.with_constraints(minimize_constraints(o1.constraints - psi))


def project(o1: Ontology, keep: Iterable[Name]) -> Ontology:
    """The fragment of ``o1`` expressible over the names in ``keep``."""
    w = frozenset(keep)
    unknown = w - o1.vocabulary.names
    if unknown:
        names = ", ".join(sorted(str(n) for n in unknown))
        raise VocabularyError(f"not in the vocabulary: {names}")
    vocab = o1.vocabulary.restrict(w)
    if not o1.constraints:
        return Ontology(vocab)
    closed = transitive_closure(build_graph(o1.constraints))
    gw = closed.restrict(lambda c: concept_names(c) <= w)
    return Ontology(vocab, generate_constraints(minimize_graph(gw)))


def closure_delta(sigma1: Iterable[Inclusion], sigma2: Iterable[Inclusion]) -> frozenset[Concept]:
    """Descriptions occurring in exactly one of the two constraint sets."""

    def occurring(sigma):
        return {c for incl in sigma for c in (incl.lhs, incl.rhs)}

    d1, d2 = occurring(sigma1), occurring(sigma2)
    return frozenset(d1 ^ d2)


def _fit(constraints: frozenset[Inclusion], vocab: Vocabulary) -> frozenset[Inclusion]:
    """Minimize, projecting away names that fall outside ``vocab``."""
    if _names_in(constraints) <= vocab.names:
        return minimize_constraints(constraints)
    wide = Ontology(vocab | Vocabulary.of(constraints), constraints)
    return project(wide, vocab.names).constraints


def intersect(o1: Ontology, o2: Ontology) -> Ontology:
    """Constraints implied by both ontologies, over the shared vocabulary."""
    o1.vocabulary.check_compatible(o2.vocabulary)
    s1, s2 = o1.constraints, o2.constraints
    delta = closure_delta(s1, s2)
    g1, g2 = build_graph(s1, delta), build_graph(s2, delta)

    labels = sorted(set(g1.node_of) | set(g2.node_of), key=concept_key)
    targets = labels if BOTTOM in labels else labels + [BOTTOM]
    sources = [c for c in labels if is_positive(c)] + [TOP]
    sigma3 = set()
    for e in sources:
        for f in targets:
            q = Inclusion(e, f)
            if e == f or not q.is_extended or q.is_valid:
                continue
            if holds(g1, e, f) and holds(g2, e, f):
                sigma3.add(prefer_lightweight(q))
    vocab = o1.vocabulary & o2.vocabulary
    return Ontology(vocab, _fit(frozenset(sigma3), vocab))


# -- difference --------------------------------------------------------------


def _drop_with_dual(h: ConstraintGraph, u: int, v: int) -> None:
    h.drop_arc(u, v)
    h.drop_arc(h.dual[v], h.dual[u])


def _drop_leaving(h: ConstraintGraph, k: int) -> None:
    for v in list(h.succ[k]):
        _drop_with_dual(h, k, v)


def _drop_entering(h: ConstraintGraph, l: int) -> None:
    for u in range(len(h)):
        if l in h.succ[u]:
            _drop_with_dual(h, u, l)


def _least_path(h: ConstraintGraph, k: int, l: int) -> list[tuple[int, int]]:
    """Arcs of the path k→l that always steps to the least successor still reaching l."""
    key = lambda v: concept_key(h.least_label(v))
    arcs = []
    u = k
    while u != l:
        nxt = min((v for v in h.succ[u] if h.path(v, l)), key=key)
        arcs.append((u, nxt))
        u = nxt
    return arcs


def _cut(h: ConstraintGraph, k: int, l: int) -> None:
    """Remove arcs until no path leads from k to l."""
    while k != l and h.path(k, l):
        path = _least_path(h, k, l)
        cuttable = [a for a in path if not h.is_tautological(*a)]
        if not cuttable:
            return
        _drop_with_dual(h, *cuttable[-1])


def _violations(gamma: frozenset[Inclusion], sigma2: frozenset[Inclusion], universe: list[Concept]) -> bool:
    sources = [c for c in universe if is_positive(c)]
    targets = universe + [BOTTOM]
    for e in sources:
        for f in targets:
            q = Inclusion(e, f)
            if q.is_extended and not q.is_valid and implies(gamma, q) and implies(sigma2, q):
                return True
    return False


def difference(o1: Ontology, o2: Ontology) -> Ontology:
    """Some of what ``o1`` implies and ``o2`` does not.

    Exact difference is not always finitely expressible, so the result is a
    sound under-approximation chosen by a fixed pruning policy.
    """
    s1, s2 = o1.constraints, o2.constraints
    if not s1:
        return Ontology(o1.vocabulary)
    delta = closure_delta(s1, s2)
    g1, g2 = build_graph(s1, delta), build_graph(s2, delta)
    h = transitive_closure(g1)

    for m in sorted(g2.bottom):
        for e in g2.sorted_labels(m):
            if e in h.node_of:
                _drop_leaving(h, h.node_of[e])
    for n in sorted(g2.top):
        for f in g2.sorted_labels(n):
            if f in h.node_of:
                _drop_entering(h, h.node_of[f])

    pairs = []
    reach2 = g2.reach()
    for m in range(len(g2)):
        for n in _bits_sorted(reach2[m]):
            for e in g2.labels[m]:
                for f in g2.labels[n]:
                    if e != f and not Inclusion(e, f).is_valid:
                        pairs.append((e, f))
    pairs.sort(key=lambda p: (concept_key(p[0]), concept_key(p[1])))
    for e, f in pairs:
        k, l = g1.node_of.get(e), g1.node_of.get(f)
        if k is not None and k in g1.bottom:
            _drop_leaving(h, k)
        if l is not None and l in g1.top:
            _drop_entering(h, l)
        if k is not None and l is not None:
            _cut(h, k, l)

    gamma = generate_constraints(minimize_graph(tag_graph(h)))
    gamma = _repair(gamma, s1, s2, delta)
    return Ontology(o1.vocabulary, _fit(gamma, o1.vocabulary))


def _bits_sorted(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def _repair(gamma: frozenset[Inclusion], s1, s2, delta) -> frozenset[Inclusion]:
    """Rebuild ``gamma`` greedily if it still implies something ``s2`` implies."""
    universe = sorted(build_graph(s1 | s2 | gamma, delta).node_of, key=concept_key)
    if not _violations(gamma, s2, universe):
        return gamma
    kept: list[Inclusion] = []
    for c in sorted_inclusions(gamma):
        trial = frozenset(kept + [c])
        if not _violations(trial, s2, universe):
            kept.append(c)
    return frozenset(kept)


# -- fragments and renaming --------------------------------------------------


def closed_fragment(o1: Ontology, keep: Iterable[Name]) -> Ontology:
    """Projection onto ``keep`` plus axioms forcing every other name empty."""
    w = frozenset(keep)
    projected = project(o1, w)
    phi = set()
    for c in o1.vocabulary.concepts - w:
        phi.add(Inclusion(Atomic(c), BOTTOM))
    for p in o1.vocabulary.roles - w:
        phi.add(Inclusion(AtLeast(1, Role(p)), BOTTOM))
    lifted = Ontology(o1.vocabulary, projected.constraints)
    return union(lifted, Ontology(o1.vocabulary, frozenset(phi)))


@dataclass(frozen=True)
class RenamingMap:
    """An injective map from old names to new ones."""

    pairs: Mapping[Name, Name] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "pairs", dict(self.pairs))
        targets = list(self.pairs.values())
        if len(set(targets)) != len(targets):
            raise VocabularyError("renaming map sends two names to the same target")

    def __call__(self, name: Name) -> Name:
        return self.pairs.get(name, name)

    def inverse(self) -> RenamingMap:
        return RenamingMap({v: k for k, v in self.pairs.items()})


def _rename_concept(c: Concept, m: RenamingMap) -> Concept:
    if isinstance(c, Not):
        return Not(_rename_concept(c.basic, m))
    if isinstance(c, Atomic):
        return Atomic(m(c.name))
    if isinstance(c, AtLeast):
        return AtLeast(c.n, Role(m(c.role.name), c.role.inverse))
    return c


def rename(o: Ontology, mapping: RenamingMap | Mapping[Name, Name]) -> Ontology:
    m = mapping if isinstance(mapping, RenamingMap) else RenamingMap(mapping)
    vocab = o.vocabulary
    unknown = [str(s) for s in m.pairs if s not in vocab.names]
    if unknown:
        raise VocabularyError(f"renaming unknown names: {', '.join(sorted(unknown))}")
    sources = set(m.pairs)
    for src, dst in m.pairs.items():
        if dst != src and dst in vocab.names and dst not in sources:
            raise VocabularyError(f"renaming {src} to {dst} would merge it with an existing name")
    concepts = {m(n) for n in vocab.concepts}
    roles = {m(n) for n in vocab.roles}
    constraints = {Inclusion(_rename_concept(c.lhs, m), _rename_concept(c.rhs, m)) for c in o.constraints}
    return Ontology(Vocabulary(concepts, roles), frozenset(constraints))
