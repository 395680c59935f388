"""Bundled example ontologies."""

from __future__ import annotations

from importlib import resources

from .formats import Document, parse_document, parse_renaming
from .model import Name, Ontology


def read_text(filename: str) -> str:
    return resources.files(__package__).joinpath("data", filename).read_text(encoding="utf-8")


def available() -> list[str]:
    """Stems accepted by :func:`load`."""
    files = resources.files(__package__).joinpath("data").iterdir()
    return sorted(p.name[: -len(".onto")] for p in files if p.name.endswith(".onto"))


def load_document(stem: str) -> Document:
    return parse_document(read_text(f"{stem}.onto"))


def load(stem: str) -> Ontology:
    """Load ``data/<stem>.onto``, e.g. ``load("apo")``."""
    return load_document(stem).ontology


def load_renaming(stem: str) -> dict[Name, Name]:
    return parse_renaming(read_text(f"{stem}.map"))
