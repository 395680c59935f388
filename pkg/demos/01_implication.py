"""Ask the agent-person ontology a few questions, and cross-check with the oracle."""

from ontoalgebra import implies, oracle_implies, parse_constraint
from ontoalgebra.datasets import load_document

doc = load_document("apo")
apo = doc.ontology.constraints

for text in [
    "mo:Label sub foaf:Agent .",
    "mo:Label sub not atleast 1 foaf:name .",
    "mo:Label sub atmost 0 mo:member_of .",
    "foaf:Person sub foaf:Agent .",
]:
    [q] = parse_constraint(text, doc.prefixes)
    print(f"{text:45} graph={implies(apo, q)!s:5} oracle={oracle_implies(apo, q)}")
