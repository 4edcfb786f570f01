"""RDF model and the app-store Knowledge Schema."""

from appkg.kschema.mapping import (
    DEFAULT_BASE, blank_count, build_graph, decimal_lexical, mint_app_iri, record_to_triples, schema_header,
)
from appkg.kschema.terms import (
    ASM_NS, DATATYPES, DEFAULT_PREFIXES, IRI, NUMERIC_DATATYPES, RDF_NS, RDFS_NS, SCHEMA_NS,
    XSD_ANYURI, XSD_DATE, XSD_DECIMAL, XSD_INTEGER, XSD_NS, XSD_STRING, BNode, Graph, Literal,
    Term, TermError, Triple, UnsupportedDatatype, term_key, triple_key,
)
from appkg.kschema.validate import ValidationReport, Violation, lexical_ok, validate
from appkg.kschema.vocab import (
    APP_VOCABULARY, AT_MOST_ONE, ANY, ONE, VocabEntry, Vocabulary, check_predicate_name,
    local_name,
)

__all__ = [
    "ANY", "APP_VOCABULARY", "ASM_NS", "blank_count", "AT_MOST_ONE", "BNode", "DATATYPES", "DEFAULT_BASE",
    "DEFAULT_PREFIXES", "Graph", "IRI", "Literal", "NUMERIC_DATATYPES", "ONE", "RDFS_NS",
    "RDF_NS", "SCHEMA_NS", "Term", "TermError", "Triple", "UnsupportedDatatype",
    "ValidationReport", "Violation", "VocabEntry", "Vocabulary", "XSD_ANYURI", "XSD_DATE",
    "XSD_DECIMAL", "XSD_INTEGER", "XSD_NS", "XSD_STRING", "build_graph",
    "check_predicate_name", "decimal_lexical", "lexical_ok", "local_name", "mint_app_iri",
    "record_to_triples", "schema_header", "term_key", "triple_key", "validate",
]
