"""Project the agent-person ontology onto a smaller vocabulary, then extend it."""

from ontoalgebra import closed_fragment, parse_ontology, project, serialize_ontology, union
from ontoalgebra.datasets import load_document
from ontoalgebra.formats import parse_names

doc = load_document("apo")
keep = parse_names("mo:MusicArtist mo:SoloMusicArtist mo:MusicGroup mo:Label xsd:string foaf:name", doc.prefixes)

mac = project(doc.ontology, keep)
print("# projection")
print(serialize_ontology(mac, doc.prefixes))

extra = parse_ontology(
    """
    @prefix mo: <http://purl.org/ontology/mo/> .
    mo:Label sub not mo:MusicGroup .
    """
)
print("# projection plus one axiom")
print(serialize_ontology(union(mac, extra), doc.prefixes))

print("# closed fragment: excluded names are forced empty")
print(serialize_ontology(closed_fragment(doc.ontology, keep), doc.prefixes))
