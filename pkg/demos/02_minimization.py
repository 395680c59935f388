"""Minimize the person-music-group ontology and show what was dropped."""

from ontoalgebra import equivalent_theories, minimize_constraints, serialize_ontology
from ontoalgebra.datasets import load_document
from ontoalgebra.formats import format_inclusion
from ontoalgebra.model import sorted_inclusions

doc = load_document("pmg")
sigma = doc.ontology.constraints
theta = minimize_constraints(sigma)

print(serialize_ontology(doc.ontology.with_constraints(theta), doc.prefixes))
print("not kept verbatim:")
for c in sorted_inclusions(sigma - theta):
    print("  ", format_inclusion(c))
print("same theory:", equivalent_theories(sigma, theta))
