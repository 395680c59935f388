"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ontoalgebra.algebra import difference, intersect, project, rename
from ontoalgebra.datasets import load, load_renaming
from ontoalgebra.formats import parse_constraint
from ontoalgebra.graph import build_graph
from ontoalgebra.minimize import minimize_constraints
from ontoalgebra.model import AtLeast, Atomic, Inclusion, Name, Not, Ontology, Role, Vocabulary, concept_names
from ontoalgebra.oracle import oracle_implies
from ontoalgebra.reason import equivalent_theories, implies

from randomonto import CONCEPTS, ROLES, assert_graph_invariants, candidates, corpus, ontology, random_keep

CORPUS_SIZE = 500
PAIRS = 200
SEED = 20240611

PREFIXES = {
    "foaf": "http://xmlns.com/foaf/0.1/",
    "mo": "http://purl.org/ontology/mo/",
    "xsd": "http://www.w3.org/2001/XMLSchema#",
}

APO_CONSEQUENCES = [
    "mo:Label sub foaf:Organization .",
    "mo:Label sub foaf:Agent .",
    "mo:Label sub not foaf:Person .",
    "mo:Label sub not mo:SoloMusicArtist .",
    "mo:Label sub not atleast 1 foaf:name .",
    "mo:Label sub not atleast 1 mo:member_of .",
]

APO_NON_CONSEQUENCES = [
    "foaf:Person sub foaf:Agent .",
    "foaf:Agent sub foaf:Person .",
    "foaf:Group sub mo:MusicGroup .",
    "mo:MusicArtist sub foaf:Person .",
    "foaf:Organization sub mo:Label .",
    "mo:Label sub foaf:Group .",
    "foaf:Person sub not mo:MusicArtist .",
    "atleast 1 foaf:name sub mo:SoloMusicArtist .",
    "foaf:Group sub not foaf:Organization .",
    "atleast 1 mo:member_of sub foaf:Group .",
]


def _q(text: str) -> Inclusion:
    [incl] = parse_constraint(text, PREFIXES)
    return incl


def _corpus():
    return corpus(SEED, CORPUS_SIZE)


def _pairs():
    sigmas = corpus(SEED + 1, 2 * PAIRS)
    return list(zip(sigmas[::2], sigmas[1::2]))


# -- criteria ------------------------------------------------------------------
# each returns (passed, detail)


def criterion_1():
    apo = load("apo").constraints
    wrong = [t for t in APO_CONSEQUENCES if not implies(apo, _q(t))]
    wrong += [t for t in APO_NON_CONSEQUENCES if implies(apo, _q(t)) or oracle_implies(apo, _q(t))]
    n = len(APO_CONSEQUENCES) + len(APO_NON_CONSEQUENCES)
    return not wrong, f"{n - len(wrong)}/{n} queries answered as expected" + (f"; wrong: {wrong}" if wrong else "")


def criterion_2():
    pmg = load("pmg")
    n = {x.local: x for x in pmg.vocabulary.names}
    out = minimize_constraints(pmg.constraints)
    redundant = {
        Inclusion(Atomic(n["MusicGroup"]), Atomic(n["Agent"])),
        Inclusion(AtLeast(1, Role(n["member_of"], True)), Atomic(n["Agent"])),
    }
    person, agent = Atomic(n["Person"]), Atomic(n["Agent"])
    orientations = out & {Inclusion(person, Not(agent)), Inclusion(agent, Not(person))}
    checks = {
        "five constraints": len(out) == 5,
        "equivalent to the reference": equivalent_theories(out, load("pmg_minimized").constraints),
        "redundant pair omitted": not (out & redundant),
        "one disjointness orientation": len(orientations) == 1,
    }
    failed = [k for k, ok in checks.items() if not ok]
    return not failed, f"{len(out)} constraints" + (f"; failed: {failed}" if failed else "")


def criterion_3():
    expected = load("mac_expected")
    mac = project(load("apo"), expected.vocabulary.names)
    negatives = ["mo:Label sub not atleast 1 foaf:name .", "mo:Label sub not mo:SoloMusicArtist ."]
    ok = equivalent_theories(mac.constraints, expected.constraints)
    ok = ok and all(implies(mac.constraints, _q(t)) for t in negatives)
    return ok, f"{len(mac.constraints)} constraints in the projection"


def criterion_4():
    lattes = rename(load("lattes"), load_renaming("lattes"))
    out = intersect(load("dblp"), lattes).constraints
    ok = equivalent_theories(out, load("dblp_lattes_expected").constraints)
    ok = ok and len(minimize_constraints(out)) == 3
    return ok, f"{len(out)} constraints in the intersection"


def criterion_5():
    f1, f2 = load("foaf1"), load("foaf2")
    expected = load("foaf_diff_expected").constraints
    out = difference(f1, f2).constraints
    checks = {
        "foaf difference": equivalent_theories(out, expected),
        "expected rows separate": all(implies(f1.constraints, q) and not implies(f2.constraints, q) for q in expected),
    }
    e, g, f = (Atomic(Name.plain(x)) for x in "egf")
    vocab = Vocabulary(frozenset(x.name for x in (e, g, f)))
    delta1 = difference(
        Ontology(vocab, frozenset({Inclusion(e, g), Inclusion(g, f)})),
        Ontology(vocab, frozenset({Inclusion(e, f)})),
    ).constraints
    checks["chain difference"] = equivalent_theories(delta1, [Inclusion(e, g)])
    failed = [k for k, ok in checks.items() if not ok]
    return not failed, "all three checks" if not failed else f"failed: {failed}"


def criterion_6():
    bad = 0
    for sigma in _corpus():
        out = minimize_constraints(sigma)
        if not equivalent_theories(sigma, out):
            bad += 1
            continue
        if any(equivalent_theories(sigma, out - {c}) for c in out):
            bad += 1
    return bad == 0, f"{CORPUS_SIZE} ontologies, {bad} violations"


def criterion_7():
    queries = disagreements = 0
    for sigma in _corpus():
        for q in candidates(sigma):
            queries += 1
            if implies(sigma, q) != oracle_implies(sigma, q):
                disagreements += 1
    return disagreements == 0, f"{queries} queries, {disagreements} disagreements"


def _over(q: Inclusion, names) -> bool:
    return concept_names(q.lhs) <= names and concept_names(q.rhs) <= names


def criterion_8():
    r = random.Random(SEED + 2)
    violations = {"projection": 0, "intersection": 0, "difference": 0}
    queries = 0
    for s1, s2 in _pairs():
        keep = random_keep(r)
        proj = project(ontology(s1), keep).constraints
        for q in candidates(s1):
            if _over(q, keep):
                queries += 1
                violations["projection"] += implies(proj, q) != implies(s1, q)
        inter = intersect(ontology(s1), ontology(s2)).constraints
        for q in candidates(s1, s2):
            queries += 1
            violations["intersection"] += implies(inter, q) != (implies(s1, q) and implies(s2, q))
        diff = difference(ontology(s1), ontology(s2)).constraints
        for q in candidates(s1, s2, diff):
            if implies(diff, q):
                queries += 1
                violations["difference"] += not (implies(s1, q) and not implies(s2, q))
    total = sum(violations.values())
    return total == 0, f"{PAIRS} pairs, {queries} queries, violations {violations}"


def criterion_9():
    failures = 0
    for sigma in _corpus():
        try:
            assert_graph_invariants(build_graph(sigma))
        except AssertionError:
            failures += 1
    return failures == 0, f"{CORPUS_SIZE} graphs, {failures} failures"


def _large_sigma(size: int, seed: int) -> frozenset[Inclusion]:
    r = random.Random(seed)
    concepts = [Name.plain(f"K{i}") for i in range(80)]
    roles = [Name.plain(f"R{i}") for i in range(12)]

    def basic():
        if r.random() < 0.7:
            return Atomic(r.choice(concepts))
        return AtLeast(r.randint(1, 3), Role(r.choice(roles), r.random() < 0.4))

    out: set[Inclusion] = set()
    while len(out) < size:
        lhs = basic()
        rhs = Not(basic()) if r.random() < 0.15 else basic()
        if lhs != rhs and Inclusion(lhs, rhs).is_extended:
            out.add(Inclusion(lhs, rhs))
    return frozenset(out)


def criterion_10():
    sigma = _large_sigma(200, SEED + 3)
    start = time.perf_counter()
    out = minimize_constraints(sigma)
    elapsed = time.perf_counter() - start
    return elapsed < 1.0, f"200 constraints -> {len(out)} in {elapsed:.3f} s"


CRITERIA = [
    (1, "implication on the agent-person ontology", criterion_1),
    (2, "minimization of the person-music-group ontology", criterion_2),
    (3, "projection onto the music-artist vocabulary", criterion_3),
    (4, "intersection of the bibliographies", criterion_4),
    (5, "difference of the FOAF releases and the chain", criterion_5),
    (6, "minimization is equivalent and locally minimal", criterion_6),
    (7, "graph reasoner agrees with the saturation oracle", criterion_7),
    (8, "projection, intersection and difference contracts", criterion_8),
    (9, "structural invariants of every graph", criterion_9),
    (10, "200-constraint minimization under a second", criterion_10),
]


def _report(number: int, title: str, check) -> tuple[bool, str]:
    ok, detail = check()
    return ok, f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"


@pytest.mark.parametrize("number, title, check", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, check, capsys):
    ok, line = _report(number, title, check)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [_report(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
