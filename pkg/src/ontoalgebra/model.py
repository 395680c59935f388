"""Immutable value types for lightweight ontologies.

Concept descriptions come in two layers.  A *basic* description is one of
:data:`BOTTOM`, :class:`Atomic` or :class:`AtLeast`; a full description is a
basic one or its negation :class:`Not`.  The universal concept is not a
separate type: it is ``Not(BOTTOM)``, exported as :data:`TOP`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union


class OntologyError(ValueError):
    """Base class for every error raised by this package."""


class VocabularyError(OntologyError):
    """A name is missing from a vocabulary or used with the wrong kind."""


@dataclass(frozen=True)
class Name:
    """A class or property name.

    Equality, hashing and ordering use the resolved IRI only; the prefix and
    local part are kept for display.
    """

    iri: str
    prefix: str | None = field(default=None, compare=False)
    local: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.iri:
            raise OntologyError("a name needs a non-empty IRI")
        if not self.local:
            object.__setattr__(self, "local", self.iri)

    @classmethod
    def plain(cls, local: str) -> Name:
        return cls(local, None, local)

    @classmethod
    def prefixed(cls, prefix: str, namespace: str, local: str) -> Name:
        return cls(namespace + local, prefix, local)

    @property
    def namespace(self) -> str:
        return self.iri[: len(self.iri) - len(self.local)]

    def __lt__(self, other: Name) -> bool:
        return self.iri < other.iri

    def __str__(self) -> str:
        return f"{self.prefix}:{self.local}" if self.prefix else self.local

    def __repr__(self) -> str:
        return f"Name({str(self)!r})"


@dataclass(frozen=True)
class Role:
    """An atomic role, or its inverse when ``inverse`` is set."""

    name: Name
    inverse: bool = False

    def inv(self) -> Role:
        return Role(self.name, not self.inverse)

    def __str__(self) -> str:
        return f"{self.name}⁻" if self.inverse else str(self.name)


class _Bottom:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __reduce__(self):
        return (_Bottom, ())

    def __repr__(self) -> str:
        return "BOTTOM"

    def __str__(self) -> str:
        return "⊥"


BOTTOM = _Bottom()


@dataclass(frozen=True)
class Atomic:
    name: Name

    def __str__(self) -> str:
        return str(self.name)


@dataclass(frozen=True)
class AtLeast:
    n: int
    role: Role

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise OntologyError(f"at-least restriction needs n >= 1, got {self.n!r}")

    def __str__(self) -> str:
        return f"(≥{self.n} {self.role})"


Basic = Union[_Bottom, Atomic, AtLeast]
_BASIC_TYPES = (_Bottom, Atomic, AtLeast)


@dataclass(frozen=True)
class Not:
    basic: Basic

    def __post_init__(self):
        if not isinstance(self.basic, _BASIC_TYPES):
            raise OntologyError(f"only basic descriptions can be negated, got {self.basic!r}")

    def __str__(self) -> str:
        if self.basic is BOTTOM:
            return "⊤"
        return f"¬{self.basic}"


Concept = Union[_Bottom, Atomic, AtLeast, Not]
TOP = Not(BOTTOM)


def is_basic(c: Concept) -> bool:
    return isinstance(c, _BASIC_TYPES)


def is_positive(c: Concept) -> bool:
    """True for atomic concepts and at-least restrictions (not ⊥, not negations)."""
    return isinstance(c, (Atomic, AtLeast))


def complement(c: Concept) -> Concept:
    if isinstance(c, Not):
        return c.basic
    return Not(c)


def _basic_key(b: Basic) -> tuple:
    if b is BOTTOM:
        return (0,)
    if isinstance(b, Atomic):
        return (1, b.name.iri)
    return (2, b.role.name.iri, b.role.inverse, b.n)


def concept_key(c: Concept) -> tuple:
    """Sort key: ⊥ < atomic < at-least < every negated form (same sub-order)."""
    if isinstance(c, Not):
        return (1,) + _basic_key(c.basic)
    return (0,) + _basic_key(c)


def canonical_order(a: Concept, b: Concept) -> int:
    """Three-way comparison: -1, 0 or 1."""
    ka, kb = concept_key(a), concept_key(b)
    return (ka > kb) - (ka < kb)


def _admissible_rhs(c: Concept) -> bool:
    if isinstance(c, Not):
        return is_positive(c.basic)
    return True


def concept_names(c: Concept) -> frozenset[Name]:
    b = c.basic if isinstance(c, Not) else c
    if isinstance(b, Atomic):
        return frozenset([b.name])
    if isinstance(b, AtLeast):
        return frozenset([b.role.name])
    return frozenset()


@dataclass(frozen=True)
class Inclusion:
    lhs: Concept
    rhs: Concept

    @property
    def is_lightweight(self) -> bool:
        return is_positive(self.lhs) and _admissible_rhs(self.rhs)

    @property
    def is_extended(self) -> bool:
        """Lightweight, or ``⊤ ⊑ f`` with an admissible right-hand side."""
        return (is_positive(self.lhs) or self.lhs == TOP) and _admissible_rhs(self.rhs)

    @property
    def is_valid(self) -> bool:
        """True when every interpretation satisfies the inclusion."""
        lhs, rhs = self.lhs, self.rhs
        if lhs == rhs or lhs is BOTTOM or rhs == TOP:
            return True
        if isinstance(lhs, AtLeast) and isinstance(rhs, AtLeast):
            return lhs.role == rhs.role and rhs.n <= lhs.n
        if isinstance(lhs, Not) and isinstance(rhs, Not):
            return Inclusion(rhs.basic, lhs.basic).is_valid
        return False

    def symbols(self) -> frozenset[Name]:
        return concept_names(self.lhs) | concept_names(self.rhs)

    def key(self) -> tuple:
        return (concept_key(self.lhs), concept_key(self.rhs))

    def __str__(self) -> str:
        return f"{self.lhs} ⊑ {self.rhs}"


def symbols_of(incl: Inclusion) -> frozenset[Name]:
    return incl.symbols()


def sorted_inclusions(items: Iterable[Inclusion]) -> list[Inclusion]:
    return sorted(items, key=Inclusion.key)


@dataclass(frozen=True)
class Vocabulary:
    concepts: frozenset[Name] = frozenset()
    roles: frozenset[Name] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "concepts", frozenset(self.concepts))
        object.__setattr__(self, "roles", frozenset(self.roles))
        clash = self.concepts & self.roles
        if clash:
            names = ", ".join(sorted(str(n) for n in clash))
            raise VocabularyError(f"names declared both as concept and role: {names}")

    @property
    def names(self) -> frozenset[Name]:
        return self.concepts | self.roles

    def __or__(self, other: Vocabulary) -> Vocabulary:
        return Vocabulary(self.concepts | other.concepts, self.roles | other.roles)

    def __and__(self, other: Vocabulary) -> Vocabulary:
        return Vocabulary(self.concepts & other.concepts, self.roles & other.roles)

    def restrict(self, names: Iterable[Name]) -> Vocabulary:
        keep = frozenset(names)
        return Vocabulary(self.concepts & keep, self.roles & keep)

    def check_compatible(self, other: Vocabulary) -> None:
        clash = (self.concepts & other.roles) | (self.roles & other.concepts)
        if clash:
            names = ", ".join(sorted(str(n) for n in clash))
            raise VocabularyError(f"names used as concept in one vocabulary and role in the other: {names}")

    @classmethod
    def of(cls, constraints: Iterable[Inclusion]) -> Vocabulary:
        concepts, roles = set(), set()
        for incl in constraints:
            for c in (incl.lhs, incl.rhs):
                b = c.basic if isinstance(c, Not) else c
                if isinstance(b, Atomic):
                    concepts.add(b.name)
                elif isinstance(b, AtLeast):
                    roles.add(b.role.name)
        return cls(concepts, roles)


@dataclass(frozen=True)
class Ontology:
    vocabulary: Vocabulary
    constraints: frozenset[Inclusion] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "constraints", frozenset(self.constraints))
        used = Vocabulary.of(self.constraints)
        self.vocabulary.check_compatible(used)
        missing = (used.concepts - self.vocabulary.concepts) | (used.roles - self.vocabulary.roles)
        if missing:
            names = ", ".join(sorted(str(n) for n in missing))
            raise VocabularyError(f"constraints use undeclared names: {names}")
        bad = [c for c in self.constraints if not c.is_extended]
        if bad:
            raise OntologyError(f"not a lightweight inclusion: {sorted_inclusions(bad)[0]}")

    @classmethod
    def from_constraints(cls, constraints: Iterable[Inclusion], vocabulary: Vocabulary | None = None) -> Ontology:
        constraints = frozenset(constraints)
        vocab = Vocabulary.of(constraints)
        if vocabulary is not None:
            vocab = vocabulary | vocab
        return cls(vocab, constraints)

    def with_constraints(self, constraints: Iterable[Inclusion]) -> Ontology:
        return Ontology(self.vocabulary, frozenset(constraints))

    def __len__(self) -> int:
        return len(self.constraints)

    def __iter__(self):
        return iter(sorted_inclusions(self.constraints))
