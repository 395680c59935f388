"""Constraint graphs: condensed, dual-closed, tagged digraphs over descriptions.

Nodes are integers ``0..n-1`` ordered by their canonically least label, so two
builds from the same input produce identical graphs.  Reachability is kept as
one Python int bitset per node.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Callable, Iterable, Iterator

from .model import (
    BOTTOM,
    AtLeast,
    Atomic,
    Concept,
    Inclusion,
    Not,
    OntologyError,
    Role,
    complement,
    concept_key,
    is_positive,
)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def is_tautological_pair(a: Concept, b: Concept) -> bool:
    """True when ``a ⊑ b`` is a valid cardinality weakening (including its dual form)."""
    if isinstance(a, AtLeast) and isinstance(b, AtLeast):
        return a.role == b.role and b.n < a.n
    if isinstance(a, Not) and isinstance(b, Not):
        return is_tautological_pair(b.basic, a.basic)
    return False


def strongly_connected_components(nodes: list, succ: dict) -> list[list]:
    """Iterative Tarjan; returns components in reverse topological order."""
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    out: list[list] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


class ConstraintGraph:
    """A labeled DAG whose nodes carry sets of concept descriptions and tags.

    Treat instances returned by :func:`build_graph` as read-only; the pruning
    helpers (:meth:`copy`, :meth:`drop_arc`) exist for algorithms that work
    on a private copy.
    """

    def __init__(
        self,
        labels: list[frozenset[Concept]],
        arcs: Iterable[tuple[int, int]],
        bottom: Iterable[int] = (),
    ):
        self.labels = list(labels)
        self.node_of: dict[Concept, int] = {}
        for i, labs in enumerate(self.labels):
            for c in labs:
                if c in self.node_of:
                    raise OntologyError(f"{c} labels more than one node")
                self.node_of[c] = i
        self.dual = [self.node_of[complement(next(iter(labs)))] for labs in self.labels]
        self.succ: list[set[int]] = [set() for _ in self.labels]
        for u, v in arcs:
            self.succ[u].add(v)
        self.bottom = frozenset(bottom)
        self._reach: list[int] | None = None

    # -- structure ---------------------------------------------------------

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def arcs(self) -> set[tuple[int, int]]:
        return {(u, v) for u, vs in enumerate(self.succ) for v in vs}

    @property
    def top(self) -> frozenset[int]:
        return frozenset(self.dual[b] for b in self.bottom)

    def sorted_labels(self, u: int) -> list[Concept]:
        return sorted(self.labels[u], key=concept_key)

    def least_label(self, u: int) -> Concept:
        return min(self.labels[u], key=concept_key)

    def is_positive(self, u: int) -> bool:
        return all(is_positive(c) for c in self.labels[u])

    def is_tautological(self, u: int, v: int) -> bool:
        return any(is_tautological_pair(a, b) for a in self.labels[u] for b in self.labels[v])

    def node(self, c: Concept) -> int:
        try:
            return self.node_of[c]
        except KeyError:
            raise OntologyError(f"{c} labels no node of the graph") from None

    def copy(self) -> ConstraintGraph:
        return ConstraintGraph(self.labels, self.arcs, self.bottom)

    def drop_arc(self, u: int, v: int) -> None:
        self.succ[u].discard(v)
        self._reach = None

    def with_tags(self, bottom: Iterable[int]) -> ConstraintGraph:
        return ConstraintGraph(self.labels, self.arcs, bottom)

    # -- reachability ------------------------------------------------------

    def topological_order(self) -> list[int]:
        indeg = [0] * len(self)
        for vs in self.succ:
            for v in vs:
                indeg[v] += 1
        ready = [u for u in range(len(self)) if indeg[u] == 0]
        order = []
        while ready:
            u = ready.pop()
            order.append(u)
            for v in self.succ[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    ready.append(v)
        if len(order) != len(self):
            raise OntologyError("constraint graph has a cycle")
        return order

    def reach(self) -> list[int]:
        """Bitset per node of everything reachable from it, itself included."""
        if self._reach is None:
            reach = [0] * len(self)
            for u in reversed(self.topological_order()):
                mask = 1 << u
                for v in self.succ[u]:
                    mask |= reach[v]
                reach[u] = mask
            self._reach = reach
        return self._reach

    def path(self, u: int, v: int) -> bool:
        """A path from u to v, possibly of length 0."""
        return bool(self.reach()[u] >> v & 1)

    def reachable_from(self, u: int) -> list[int]:
        return list(_bits(self.reach()[u]))

    def _weakening_neighbours(self, d: Concept, upward: bool) -> list[int]:
        """Existing nodes that a tautological arc joins to ``d``, in either direction."""
        negated = isinstance(d, Not)
        b = d.basic if negated else d
        if not isinstance(b, AtLeast):
            return []
        smaller = upward == negated
        out = []
        for c, u in self.node_of.items():
            if isinstance(c, Not) != negated:
                continue
            o = c.basic if negated else c
            if isinstance(o, AtLeast) and o.role == b.role:
                # successors of (≥n p) have smaller n, those of ¬(≥n p) larger
                if (o.n < b.n) if smaller else (o.n > b.n):
                    out.append(u)
        return out

    def probe(self, d: Concept) -> tuple[int, bool]:
        """Reach bitset (over existing nodes) and ⊥-status of ``d``.

        ``d`` need not label a node.  Adding ``d`` to the graph would only give
        it tautological arcs to existing at-least nodes on its role, and would
        change nothing about the existing nodes, so both answers follow from
        its would-be successors.
        """
        reach = self.reach()
        u = self.node_of.get(d)
        if u is not None:
            return reach[u], u in self.bottom
        mask = 0
        bottom = False
        for v in self._weakening_neighbours(d, upward=False):
            mask |= reach[v]
            bottom = bottom or v in self.bottom
        if not bottom:
            duals = 0
            for x in _bits(mask):
                duals |= 1 << self.dual[x]
            bottom = bool(mask & duals)
        return mask, bottom

    def entry_mask(self, d: Concept) -> int:
        """Nodes from which a path enters ``d``, whether or not ``d`` is present."""
        u = self.node_of.get(d)
        if u is not None:
            return 1 << u
        mask = 0
        for v in self._weakening_neighbours(d, upward=True):
            mask |= 1 << v
        return mask

    def reaches(self, e: Concept, f: Concept) -> bool:
        if f is BOTTOM and f not in self.node_of:
            return self.node(e) in self.bottom
        if e == Not(BOTTOM) and e not in self.node_of:
            return self.node(f) in self.top
        return self.path(self.node(e), self.node(f))

    # -- derived graphs ----------------------------------------------------

    def restrict(self, keep: Callable[[Concept], bool]) -> ConstraintGraph:
        """Drop labels failing ``keep``, then nodes left without labels; tags are kept."""
        old_to_new: dict[int, int] = {}
        labels = []
        order = sorted(
            (u for u in range(len(self)) if any(keep(c) for c in self.labels[u])),
            key=lambda u: concept_key(min((c for c in self.labels[u] if keep(c)), key=concept_key)),
        )
        for u in order:
            old_to_new[u] = len(labels)
            labels.append(frozenset(c for c in self.labels[u] if keep(c)))
        arcs = [(old_to_new[u], old_to_new[v]) for u, v in self.arcs if u in old_to_new and v in old_to_new]
        bottom = [old_to_new[b] for b in self.bottom if b in old_to_new]
        return ConstraintGraph(labels, arcs, bottom)

    def __repr__(self) -> str:
        return f"<ConstraintGraph {len(self)} nodes, {len(self.arcs)} arcs, {len(self.bottom)} ⊥-nodes>"


def _occurring(sigma: Iterable[Inclusion], omega: Iterable[Concept]) -> set[Concept]:
    descs: set[Concept] = set()
    for incl in sigma:
        descs.add(incl.lhs)
        descs.add(incl.rhs)
    descs.update(omega)
    for c in list(descs):
        b = c.basic if isinstance(c, Not) else c
        if isinstance(b, Atomic):
            descs.add(b)
        elif isinstance(b, AtLeast):
            descs.add(AtLeast(1, Role(b.role.name)))
            descs.add(AtLeast(1, Role(b.role.name, True)))
    descs |= {complement(c) for c in descs}
    return descs


def build_graph(sigma: Iterable[Inclusion], omega: Iterable[Concept] = ()) -> ConstraintGraph:
    """Construct and tag the constraint graph for ``sigma`` and ``omega``."""
    sigma = list(sigma)
    descs = sorted(_occurring(sigma, omega), key=concept_key)
    succ: dict[Concept, set[Concept]] = {c: set() for c in descs}
    for incl in sigma:
        succ[incl.lhs].add(incl.rhs)
        succ[complement(incl.rhs)].add(complement(incl.lhs))

    by_role: dict[Role, list[AtLeast]] = defaultdict(list)
    for c in descs:
        if isinstance(c, AtLeast):
            by_role[c.role].append(c)
    for restrictions in by_role.values():
        for a in restrictions:
            for b in restrictions:
                if b.n < a.n:
                    succ[a].add(b)
                    succ[Not(b)].add(Not(a))

    comps = strongly_connected_components(descs, succ)
    comps = sorted((frozenset(c) for c in comps), key=lambda labs: concept_key(min(labs, key=concept_key)))
    comp_of = {c: i for i, labs in enumerate(comps) for c in labs}
    arcs = {(comp_of[a], comp_of[b]) for a in descs for b in succ[a] if comp_of[a] != comp_of[b]}
    return tag_graph(ConstraintGraph(comps, arcs))


def bottom_nodes(g: ConstraintGraph, seeds: Iterable[int] = ()) -> frozenset[int]:
    """Least fixpoint of the ⊥-node conditions.

    ``seeds`` are extra nodes taken to be empty, as if each had an arc to ⊥.
    """
    reach = g.reach()
    bottom = {u for u in range(len(g)) if BOTTOM in g.labels[u]} | set(seeds)
    for u in range(len(g)):
        r = reach[u]
        duals = 0
        for x in _bits(r):
            duals |= 1 << g.dual[x]
        if r & duals:
            bottom.add(u)

    pred: list[list[int]] = [[] for _ in range(len(g))]
    for u, vs in enumerate(g.succ):
        for v in vs:
            pred[v].append(u)
    partner: dict[int, list[int]] = defaultdict(list)
    for c, u in g.node_of.items():
        if isinstance(c, AtLeast) and c.n == 1:
            other = g.node_of.get(AtLeast(1, c.role.inv()))
            if other is not None:
                partner[u].append(other)

    todo = list(bottom)
    while todo:
        u = todo.pop()
        for w in pred[u] + partner.get(u, []):
            if w not in bottom:
                bottom.add(w)
                todo.append(w)
    return frozenset(bottom)


def tag_graph(g: ConstraintGraph) -> ConstraintGraph:
    return g.with_tags(bottom_nodes(g))


def transitive_closure(g: ConstraintGraph) -> ConstraintGraph:
    reach = g.reach()
    arcs = [(u, v) for u in range(len(g)) for v in _bits(reach[u]) if v != u]
    return ConstraintGraph(g.labels, arcs, g.bottom)


def reaches(g: ConstraintGraph, e: Concept, f: Concept) -> bool:
    return g.reaches(e, f)
