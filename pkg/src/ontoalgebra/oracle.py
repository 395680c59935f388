"""Brute-force saturation reasoner, kept independent of the graph code.

It exists to cross-check :func:`ontoalgebra.reason.implies`.  The universe of
descriptions is whatever occurs in the constraints and the query, closed under
complement, plus ⊥ and ⊤.  Only suitable for small inputs.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .model import BOTTOM, TOP, AtLeast, Concept, Inclusion, complement
from .normalize import expand_abbreviations


class _Saturation:
    def __init__(self, sigma: frozenset[Inclusion], extra: frozenset[Concept]):
        universe = {BOTTOM, TOP}
        for incl in sigma:
            universe.update((incl.lhs, incl.rhs))
        universe.update(extra)
        universe |= {complement(c) for c in universe}
        self.items = sorted(universe, key=repr)
        self.index = {c: i for i, c in enumerate(self.items)}
        n = len(self.items)
        idx = self.index
        self.comp = [idx[complement(c)] for c in self.items]
        full = (1 << n) - 1
        bot, top = idx[BOTTOM], idx[TOP]

        rel = [1 << i for i in range(n)]
        for i in range(n):
            rel[i] |= 1 << top
        rel[bot] = full
        for incl in sigma:
            rel[idx[incl.lhs]] |= 1 << idx[incl.rhs]
        for a in self.items:
            for b in self.items:
                if isinstance(a, AtLeast) and isinstance(b, AtLeast) and a.role == b.role and b.n <= a.n:
                    rel[idx[a]] |= 1 << idx[b]

        by_role: dict = {}
        for c in self.items:
            if isinstance(c, AtLeast):
                by_role.setdefault(c.role.name, []).append(idx[c])
        seeds = {}
        for c in self.items:
            if isinstance(c, AtLeast) and c.n == 1:
                seeds.setdefault(c.role.name, []).append(idx[c])

        changed = True
        while changed:
            changed = False
            new = rel[:]
            for i in range(n):
                r = new[i]
                # transitivity
                acc = r
                m = r
                while m:
                    low = m & -m
                    acc |= rel[low.bit_length() - 1]
                    m ^= low
                r = acc
                # contradiction, then bottom propagation
                comps = 0
                m = r
                while m:
                    low = m & -m
                    comps |= 1 << self.comp[low.bit_length() - 1]
                    m ^= low
                if r & comps or r >> bot & 1:
                    r = full
                new[i] = r
            # contraposition
            for i in range(n):
                m = new[i]
                ci = self.comp[i]
                while m:
                    low = m & -m
                    j = low.bit_length() - 1
                    new[self.comp[j]] |= 1 << ci
                    m ^= low
            # role emptiness couples both directions and every cardinality
            for name, firsts in seeds.items():
                if any(new[i] >> bot & 1 for i in firsts):
                    for j in by_role[name]:
                        new[j] = full
            if new != rel:
                rel = new
                changed = True
        self.rel = rel

    def holds(self, e: Concept, f: Concept) -> bool:
        return bool(self.rel[self.index[e]] >> self.index[f] & 1)


@lru_cache(maxsize=512)
def _saturate(sigma: frozenset[Inclusion], extra: frozenset[Concept]) -> _Saturation:
    return _Saturation(sigma, extra)


def oracle_implies(sigma: Iterable[Inclusion], q: Inclusion) -> bool:
    """Decide sigma ⊨ q by saturating a finite derivation relation."""
    sigma = frozenset(sigma)
    e, f = expand_abbreviations(q.lhs), expand_abbreviations(q.rhs)
    base = _saturate(sigma, frozenset())
    if e in base.index and f in base.index:
        return base.holds(e, f)
    return _saturate(sigma, frozenset((e, f))).holds(e, f)

