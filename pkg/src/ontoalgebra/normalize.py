"""Abbreviation expansion and classification of raw inclusions."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Union

from .model import (
    BOTTOM,
    TOP,
    AtLeast,
    Concept,
    Inclusion,
    Not,
    OntologyError,
    Role,
    is_positive,
)


class NormalizationError(OntologyError):
    """An inclusion cannot be brought into lightweight form."""

    def __init__(self, message: str, inclusion=None):
        super().__init__(message)
        self.inclusion = inclusion


@dataclass(frozen=True)
class Exists:
    """``∃p``, shorthand for ``(≥1 p)``."""

    role: Role


@dataclass(frozen=True)
class AtMost:
    """``(≤n p)``, shorthand for ``¬(≥n+1 p)``."""

    n: int
    role: Role


class _Top:
    def __repr__(self) -> str:
        return "Top"


Top = _Top()

SugarConcept = Union[Concept, Exists, AtMost, _Top]


@dataclass(frozen=True)
class SugarNot:
    """Negation whose operand may still be abbreviated (``not exists p``)."""

    operand: SugarConcept


def expand_abbreviations(c) -> Concept:
    if c is Top:
        return TOP
    if isinstance(c, Exists):
        return AtLeast(1, c.role)
    if isinstance(c, AtMost):
        if c.n < 0:
            raise NormalizationError(f"at-most restriction needs n >= 0, got {c.n}")
        return Not(AtLeast(c.n + 1, c.role))
    if isinstance(c, SugarNot):
        inner = expand_abbreviations(c.operand)
        if isinstance(inner, Not):
            return inner.basic
        return Not(inner)
    return c


class Kind(enum.Enum):
    LIGHTWEIGHT = "lightweight"
    VACUOUS = "vacuous"
    CONTRAPOSITIVE = "contrapositive"
    EXTENDED_TOTAL = "extended"
    ILL_FORMED = "ill-formed"


@dataclass(frozen=True)
class InclusionClass:
    kind: Kind
    rewritten: Inclusion | None = None
    reason: str | None = None


def classify_inclusion(incl: Inclusion) -> InclusionClass:
    """Sort an unabbreviated inclusion into one of the :class:`Kind` buckets."""
    lhs, rhs = incl.lhs, incl.rhs
    if lhs is BOTTOM or rhs == TOP:
        return InclusionClass(Kind.VACUOUS)
    if incl.is_lightweight:
        return InclusionClass(Kind.LIGHTWEIGHT)
    if lhs == TOP:
        if isinstance(rhs, Not):
            # ¬⊥ ⊑ ¬g is the contrapositive of g ⊑ ⊥
            return InclusionClass(Kind.CONTRAPOSITIVE, Inclusion(rhs.basic, BOTTOM))
        return InclusionClass(Kind.EXTENDED_TOTAL)
    if isinstance(lhs, Not) and isinstance(rhs, Not):
        rewritten = Inclusion(rhs.basic, lhs.basic)
        if rewritten.is_lightweight:
            return InclusionClass(Kind.CONTRAPOSITIVE, rewritten)
    if isinstance(lhs, Not):
        return InclusionClass(
            Kind.ILL_FORMED, reason="a negated description may not appear on the left-hand side"
        )
    return InclusionClass(Kind.ILL_FORMED, reason="not of a lightweight form")


def normalize_inclusion(incl: Inclusion, allow_extended: bool = False) -> Inclusion | None:
    """Return the lightweight form of ``incl``, or None when it is vacuous."""
    incl = Inclusion(expand_abbreviations(incl.lhs), expand_abbreviations(incl.rhs))
    cls = classify_inclusion(incl)
    if cls.kind is Kind.VACUOUS:
        return None
    if cls.kind is Kind.CONTRAPOSITIVE:
        return cls.rewritten
    if cls.kind is Kind.ILL_FORMED:
        raise NormalizationError(f"{incl}: {cls.reason}", incl)
    if cls.kind is Kind.EXTENDED_TOTAL and not allow_extended:
        raise NormalizationError(f"{incl}: ⊤ on the left-hand side is not a lightweight inclusion", incl)
    return incl


def normalize_constraint_set(raw: Iterable[Inclusion], allow_extended: bool = False) -> frozenset[Inclusion]:
    out = set()
    for incl in raw:
        norm = normalize_inclusion(incl, allow_extended)
        if norm is not None:
            out.add(norm)
    return frozenset(out)


def prefer_lightweight(incl: Inclusion) -> Inclusion:
    """Re-express ``⊤ ⊑ ¬g`` as ``g ⊑ ⊥``; other inclusions pass through."""
    if incl.lhs == TOP and isinstance(incl.rhs, Not) and is_positive(incl.rhs.basic):
        return Inclusion(incl.rhs.basic, BOTTOM)
    return incl

