"""Command-line interface.

Exit status: 0 on success or a true answer, 1 on a false answer, 2 on any
usage, parse or validation error.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from typing import Sequence

from . import algebra
from .formats import (
    Document,
    export_dot,
    export_table,
    format_concept,
    format_inclusion,
    parse_constraint,
    parse_document,
    parse_names,
    parse_renaming,
    serialize_ontology,
)
from .graph import build_graph
from .minimize import minimize_constraints
from .model import Ontology, OntologyError, concept_key, sorted_inclusions
from .reason import all_consequences, empty_descriptions, equivalent_theories, implies

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> Document:
    try:
        return parse_document(_read(path), allow_extended=True)
    except OntologyError as exc:
        raise OntologyError(f"{path}: {exc}") from None


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_ontology(o: Ontology, args, *docs: Document) -> int:
    prefixes: dict[str, str] = {}
    for d in docs:
        for p, ns in d.prefixes.items():
            prefixes.setdefault(p, ns)
    _emit(serialize_ontology(o, prefixes), args.out)
    return EXIT_TRUE


def _boolean(value: bool) -> int:
    print("true" if value else "false")
    return EXIT_TRUE if value else EXIT_FALSE


def _second_operand(args) -> tuple[Document, Document]:
    a, b = _load(args.a), _load(args.b)
    if args.rename:
        mapping = parse_renaming(_read(args.rename), b.prefixes)
        b = Document(algebra.rename(b.ontology, mapping), b.prefixes)
    return a, b


def _keep(args, doc: Document):
    if args.keep is None and args.keep_file is None:
        raise _UsageError("give --keep or --keep-file")
    text = args.keep if args.keep is not None else _read(args.keep_file)
    return parse_names(text, doc.prefixes)


# -- commands ----------------------------------------------------------------


def cmd_implies(args) -> int:
    doc = _load(args.file)
    queries = parse_constraint(args.constraint, doc.prefixes)
    return _boolean(all(implies(doc.ontology.constraints, q) for q in queries))


def cmd_equiv(args) -> int:
    a, b = _load(args.a), _load(args.b)
    return _boolean(equivalent_theories(a.ontology.constraints, b.ontology.constraints))


def cmd_consequences(args) -> int:
    doc = _load(args.file)
    found = sorted_inclusions(all_consequences(doc.ontology.constraints))
    _emit("".join(format_inclusion(c) + "\n" for c in found), args.out)
    return EXIT_TRUE


def cmd_empty(args) -> int:
    doc = _load(args.file)
    found = sorted(empty_descriptions(doc.ontology.constraints), key=concept_key)
    _emit("".join(format_concept(c) + "\n" for c in found), args.out)
    return EXIT_TRUE


def cmd_minimize(args) -> int:
    doc = _load(args.file)
    o = doc.ontology
    return _emit_ontology(o.with_constraints(minimize_constraints(o.constraints)), args, doc)


def cmd_project(args) -> int:
    doc = _load(args.file)
    return _emit_ontology(algebra.project(doc.ontology, _keep(args, doc)), args, doc)


def cmd_closed(args) -> int:
    doc = _load(args.file)
    return _emit_ontology(algebra.closed_fragment(doc.ontology, _keep(args, doc)), args, doc)


def cmd_union(args) -> int:
    a, b = _load(args.a), _load(args.b)
    return _emit_ontology(algebra.union(a.ontology, b.ontology), args, a, b)


def cmd_intersect(args) -> int:
    a, b = _second_operand(args)
    return _emit_ontology(algebra.intersect(a.ontology, b.ontology), args, a, b)


def cmd_diff(args) -> int:
    a, b = _second_operand(args)
    return _emit_ontology(algebra.difference(a.ontology, b.ontology), args, a, b)


def cmd_deprecate(args) -> int:
    doc = _load(args.file)
    drop = parse_document(_read(args.drop), allow_extended=True)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        result = algebra.deprecate(doc.ontology, drop.ontology.constraints)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return _emit_ontology(result, args, doc)


def cmd_graph(args) -> int:
    doc = _load(args.file)
    _emit(export_dot(build_graph(doc.ontology.constraints)), args.dot)
    return EXIT_TRUE


def cmd_table(args) -> int:
    doc = _load(args.file)
    _emit(export_table(doc.ontology), args.out)
    return EXIT_TRUE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ontoalgebra", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help, *operands, out=True):
        p = sub.add_parser(name, help=help)
        for op in operands:
            p.add_argument(op, help="ontology file, or - for stdin" if op in ("file", "a", "b") else None)
        if out:
            p.add_argument("--out", metavar="PATH", help="write the result here instead of stdout")
        p.set_defaults(func=func)
        return p

    add("implies", cmd_implies, "does FILE imply CONSTRAINT?", "file", "constraint", out=False)
    add("equiv", cmd_equiv, "do A and B have the same theory?", "a", "b", out=False)
    add("consequences", cmd_consequences, "list implied inclusions between occurring descriptions", "file")
    add("empty", cmd_empty, "list descriptions that must be empty", "file")
    add("minimize", cmd_minimize, "an equivalent, minimal constraint set", "file")
    for name, func, text in (
        ("project", cmd_project, "the part of FILE expressible over the kept names"),
        ("closed", cmd_closed, "projection plus emptiness of every other name"),
    ):
        p = add(name, func, text, "file")
        p.add_argument("--keep", metavar="NAMES", help="names to keep, comma or space separated")
        p.add_argument("--keep-file", metavar="F", help="file listing names to keep")
    add("union", cmd_union, "union of A and B", "a", "b")
    for name, func, text in (
        ("intersect", cmd_intersect, "what A and B both imply"),
        ("diff", cmd_diff, "some of what A implies and B does not"),
    ):
        p = add(name, func, text, "a", "b")
        p.add_argument("--rename", metavar="MAPFILE", help="'old -> new' lines applied to B first")
    p = add("deprecate", cmd_deprecate, "remove the constraints listed in DROPFILE", "file")
    p.add_argument("--drop", metavar="DROPFILE", required=True)
    p = add("graph", cmd_graph, "constraint graph in Graphviz DOT", "file", out=False)
    p.add_argument("--dot", metavar="OUT", required=True, help="DOT output path, or - for stdout")
    add("table", cmd_table, "two-column constraint table", "file")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_ERROR
    except OntologyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except SystemExit as exc:  # --help
        return EXIT_TRUE if exc.code in (0, None) else EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
