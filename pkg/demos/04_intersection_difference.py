"""Compare two bibliographic schemas and two releases of a vocabulary."""

from ontoalgebra import difference, intersect, rename, serialize_ontology
from ontoalgebra.datasets import load, load_renaming

lattes = rename(load("lattes"), load_renaming("lattes"))
print("# DBLP and Lattes (Document renamed to Publication) agree on")
print(serialize_ontology(intersect(load("dblp"), lattes)))

print("# the older FOAF excerpt says, and the newer one does not")
print(serialize_ontology(difference(load("foaf1"), load("foaf2"))))
