"""Reading and writing the ``.onto`` text format, plus DOT and TSV exports.

The format, one statement per ``.``::

    @prefix foaf: <http://xmlns.com/foaf/0.1/> .
    concept foaf:Agent .
    role foaf:name .
    atleast 1 inv foaf:name sub xsd:string .
    foaf:Person sub not foaf:Organization .
    exists mo:member_of sub foaf:Person .
    mo:Label sub atmost 0 foaf:name .

``#`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .graph import ConstraintGraph
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
    OntologyError,
    Role,
    Vocabulary,
    concept_key,
    sorted_inclusions,
)
from .normalize import AtMost, Exists, NormalizationError, SugarNot, Top, expand_abbreviations, normalize_inclusion
from .reason import empty_descriptions

KEYWORDS = frozenset({"Bottom", "Top", "not", "atleast", "atmost", "exists", "inv", "sub", "equiv", "concept", "role"})


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}"


class ParseError(OntologyError):
    def __init__(self, message: str, span: SourceSpan | None = None):
        super().__init__(f"{span}: {message}" if span else message)
        self.message = message
        self.span = span


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<prefix>@prefix)
  | (?P<iri><[^<>\s]*>)
  | (?P<int>[0-9]+)
  | (?P<word>[A-Za-z_][A-Za-z0-9_\-]*)
  | (?P<colon>:)
  | (?P<dot>\.)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    span: SourceSpan


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        span = SourceSpan(line, pos - line_start + 1)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", span)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), span))
        chunk = m.group()
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", SourceSpan(line, pos - line_start + 1)))
    return toks


@dataclass
class Document:
    """A parsed file: the ontology plus the prefixes it declared."""

    ontology: Ontology
    prefixes: dict[str, str] = field(default_factory=dict)


@dataclass
class _Use:
    name: Name
    kind: str
    span: SourceSpan


class _Parser:
    def __init__(self, text: str, prefixes: dict[str, str] | None = None):
        self.toks = _tokenize(text)
        self.i = 0
        self.prefixes: dict[str, str] = dict(prefixes or {})
        self.uses: list[_Use] = []
        self.declared: dict[Name, tuple[str, SourceSpan]] = {}

    # -- token helpers --

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def at_word(self, *words: str) -> bool:
        t = self.tok
        return t.kind == "word" and t.text in words and self.toks[self.i + 1].kind != "colon"

    def expect(self, kind: str, what: str) -> _Tok:
        if self.tok.kind != kind:
            got = self.tok.text or "end of input"
            raise ParseError(f"expected {what}, found {got!r}", self.tok.span)
        return self.advance()

    def expect_word(self, word: str) -> _Tok:
        if not self.at_word(word):
            got = self.tok.text or "end of input"
            raise ParseError(f"expected {word!r}, found {got!r}", self.tok.span)
        return self.advance()

    # -- grammar --

    def name(self, kind: str) -> Name:
        t = self.expect("word", f"a {kind} name")
        if self.tok.kind == "colon":
            self.advance()
            local = self.expect("word", "a local name after ':'")
            if t.text not in self.prefixes:
                raise ParseError(f"undeclared prefix {t.text!r}", t.span)
            name = Name.prefixed(t.text, self.prefixes[t.text], local.text)
        else:
            if t.text in KEYWORDS:
                raise ParseError(f"keyword {t.text!r} cannot be used as a name", t.span)
            name = Name.plain(t.text)
        self.uses.append(_Use(name, kind, t.span))
        return name

    def role(self) -> Role:
        if self.at_word("inv"):
            self.advance()
            return Role(self.name("role"), True)
        return Role(self.name("role"))

    def count(self) -> int:
        return int(self.expect("int", "a number").text)

    def basic(self):
        if self.at_word("Bottom"):
            self.advance()
            return BOTTOM
        if self.at_word("atleast"):
            t = self.advance()
            n = self.count()
            if n < 1:
                raise ParseError("atleast needs a number of at least 1", t.span)
            return AtLeast(n, self.role())
        if self.at_word("exists"):
            self.advance()
            return Exists(self.role())
        return Atomic(self.name("concept"))

    def concept(self):
        if self.at_word("Top"):
            self.advance()
            return Top
        if self.at_word("not"):
            self.advance()
            return SugarNot(self.basic())
        if self.at_word("atmost"):
            self.advance()
            n = self.count()
            return AtMost(n, self.role())
        return self.basic()

    def constraint(self) -> tuple[list[Inclusion], SourceSpan]:
        span = self.tok.span
        lhs = self.concept()
        if self.at_word("sub"):
            self.advance()
            rhs = self.concept()
            pairs = [(lhs, rhs)]
        elif self.at_word("equiv"):
            self.advance()
            rhs = self.concept()
            pairs = [(lhs, rhs), (rhs, lhs)]
        else:
            got = self.tok.text or "end of input"
            raise ParseError(f"expected 'sub' or 'equiv', found {got!r}", self.tok.span)
        self.expect("dot", "'.'")
        try:
            return [Inclusion(expand_abbreviations(a), expand_abbreviations(b)) for a, b in pairs], span
        except OntologyError as exc:
            raise ParseError(str(exc), span) from None

    def prefix_decl(self) -> None:
        self.advance()
        p = self.expect("word", "a prefix name")
        self.expect("colon", "':'")
        iri = self.expect("iri", "an IRI in angle brackets")
        self.expect("dot", "'.'")
        self.prefixes[p.text] = iri.text[1:-1]

    def declaration(self) -> None:
        kind = self.advance().text
        start = len(self.uses)
        name = self.name(kind)
        del self.uses[start:]
        self.expect("dot", "'.'")
        prior = self.declared.get(name)
        if prior is not None and prior[0] != kind:
            raise ParseError(f"{name} declared both as concept and role", self.toks[self.i - 2].span)
        self.declared[name] = (kind, self.toks[self.i - 2].span)

    def document(self) -> list[tuple[list[Inclusion], SourceSpan]]:
        out = []
        while self.tok.kind != "eof":
            if self.tok.kind == "prefix":
                self.prefix_decl()
            elif self.at_word("concept", "role") and self.toks[self.i + 1].kind == "word":
                self.declaration()
            else:
                out.append(self.constraint())
        return out

    def vocabulary(self) -> Vocabulary:
        kinds: dict[Name, str] = {n: k for n, (k, _) in self.declared.items()}
        first: dict[Name, _Use] = {}
        for use in self.uses:
            known = kinds.get(use.name)
            if known is None:
                kinds[use.name] = use.kind
                first[use.name] = use
            elif known != use.kind:
                if use.name in self.declared:
                    why = f"declared as a {known}"
                else:
                    why = f"used as a {known} at {first[use.name].span}"
                raise ParseError(f"{use.name} is used as a {use.kind} but {why}", use.span)
        return Vocabulary(
            frozenset(n for n, k in kinds.items() if k == "concept"),
            frozenset(n for n, k in kinds.items() if k == "role"),
        )


def parse_document(text: str, allow_extended: bool = False) -> Document:
    """Parse a whole file, normalizing every constraint."""
    p = _Parser(text)
    raw = p.document()
    vocab = p.vocabulary()
    constraints = set()
    for incls, span in raw:
        for incl in incls:
            try:
                norm = normalize_inclusion(incl, allow_extended)
            except NormalizationError as exc:
                raise ParseError(str(exc), span) from None
            if norm is not None:
                constraints.add(norm)
    return Document(Ontology(vocab, frozenset(constraints)), p.prefixes)


def parse_ontology(text: str, allow_extended: bool = False) -> Ontology:
    return parse_document(text, allow_extended).ontology


def parse_constraint(text: str, prefixes: dict[str, str] | None = None) -> list[Inclusion]:
    """Parse one ``sub``/``equiv`` statement; abbreviations are expanded, nothing else."""
    p = _Parser(text, prefixes)
    incls, _ = p.constraint()
    if p.tok.kind != "eof":
        raise ParseError("expected a single constraint", p.tok.span)
    return incls


def parse_names(text: str, prefixes: dict[str, str] | None = None) -> list[Name]:
    """Parse a whitespace- or comma-separated list of names."""
    p = _Parser(text.replace(",", " "), prefixes)
    out = []
    while p.tok.kind != "eof":
        if p.tok.kind == "prefix":
            p.prefix_decl()
            continue
        out.append(p.name("name"))
    return out


def parse_renaming(text: str, prefixes: dict[str, str] | None = None) -> dict[Name, Name]:
    """Parse ``old -> new`` lines (``@prefix`` lines allowed)."""
    pairs: dict[Name, Name] = {}
    prefixes = dict(prefixes or {})
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if body.startswith("@prefix"):
            p = _Parser(body)
            p.prefix_decl()
            prefixes.update(p.prefixes)
            continue
        if body.count("->") != 1:
            raise ParseError("expected 'old -> new'", SourceSpan(lineno, 1))
        old, new = (part.strip() for part in body.split("->"))
        try:
            [src] = parse_names(old, prefixes)
            [dst] = parse_names(new, prefixes)
        except ParseError as exc:
            raise ParseError(exc.message, SourceSpan(lineno, 1)) from None
        except ValueError:
            raise ParseError("expected exactly one name on each side", SourceSpan(lineno, 1)) from None
        if src in pairs:
            raise ParseError(f"{src} renamed twice", SourceSpan(lineno, 1))
        pairs[src] = dst
    return pairs


# -- output ----------------------------------------------------------------


def format_name(name: Name) -> str:
    return f"{name.prefix}:{name.local}" if name.prefix else name.local


def format_role(role: Role) -> str:
    return ("inv " if role.inverse else "") + format_name(role.name)


def format_concept(c: Concept) -> str:
    if c is BOTTOM:
        return "Bottom"
    if c == TOP:
        return "Top"
    if isinstance(c, Not):
        return "not " + format_concept(c.basic)
    if isinstance(c, AtLeast):
        return f"atleast {c.n} {format_role(c.role)}"
    return format_name(c.name)


def format_inclusion(incl: Inclusion) -> str:
    return f"{format_concept(incl.lhs)} sub {format_concept(incl.rhs)} ."


def _collect_prefixes(names: Iterable[Name], extra: dict[str, str] | None) -> dict[str, str]:
    out = dict(extra or {})
    for n in sorted(names):
        if n.prefix and n.prefix not in out:
            out[n.prefix] = n.namespace
    return out


def serialize_ontology(o: Ontology, prefixes: dict[str, str] | None = None) -> str:
    """Deterministic text form: prefixes, declarations, then constraints."""
    used = _collect_prefixes(o.vocabulary.names, None)
    declared = {p: ns for p, ns in (prefixes or {}).items() if p in used}
    declared.update({p: ns for p, ns in used.items() if p not in declared})
    lines = [f"@prefix {p}: <{ns}> ." for p, ns in sorted(declared.items())]
    decls = [f"concept {format_name(n)} ." for n in sorted(o.vocabulary.concepts)]
    decls += [f"role {format_name(n)} ." for n in sorted(o.vocabulary.roles)]
    body = [format_inclusion(c) for c in sorted_inclusions(o.constraints)]
    blocks = [b for b in (lines, decls, body) if b]
    return "\n\n".join("\n".join(b) for b in blocks) + ("\n" if blocks else "")


def export_table(o: Ontology) -> str:
    """Two tab-separated columns per constraint, plus a Bottom row per empty description."""
    rows = [f"{format_concept(c.lhs)}\t{format_concept(c.rhs)}" for c in sorted_inclusions(o.constraints)]
    for e in sorted(empty_descriptions(o.constraints), key=concept_key):
        row = f"{format_concept(e)}\tBottom"
        if row not in rows:
            rows.append(row)
    return "".join(r + "\n" for r in rows)


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(g: ConstraintGraph, name: str = "constraints") -> str:
    lines = [f"digraph {name} {{"]
    for u in range(len(g)):
        text = "\\n".join(_dot_escape(format_concept(c)) for c in g.sorted_labels(u))
        attrs = [f'label="{text}"']
        if u in g.bottom:
            attrs += ['xlabel="bottom"', "style=filled", 'fillcolor="#f4cccc"']
        elif u in g.top:
            attrs += ['xlabel="top"', "style=filled", 'fillcolor="#d9ead3"']
        lines.append(f"  n{u} [{', '.join(attrs)}];")
    for u, v in sorted(g.arcs):
        style = " [style=dashed]" if g.is_tautological(u, v) else ""
        lines.append(f"  n{u} -> n{v}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
