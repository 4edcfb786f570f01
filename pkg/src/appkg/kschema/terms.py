"""RDF terms, triples and graphs."""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import Dict, Iterable, Iterator, Mapping, NamedTuple, Optional, Union

from appkg.errors import AppKGError

SCHEMA_NS = "http://schema.org/"
ASM_NS = "urn:appstore-model:"
RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"

DEFAULT_PREFIXES = {
    "asm": ASM_NS,
    "rdf": RDF_NS,
    "rdfs": RDFS_NS,
    "schema": SCHEMA_NS,
    "xsd": XSD_NS,
}

_ABSOLUTE = re.compile(r"[A-Za-z][A-Za-z0-9+.\-]*:")
_BLANK_LABEL = re.compile(r"b[0-9]+")


class TermError(AppKGError, ValueError):
    code = "INVALID_TERM"


@dataclass(frozen=True)
class IRI:
    value: str

    def __post_init__(self):
        if not _ABSOLUTE.match(self.value):
            raise TermError(f"IRI is not absolute: {self.value!r}")

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class BNode:
    label: str

    def __post_init__(self):
        if not _BLANK_LABEL.fullmatch(self.label):
            raise TermError(f"blank label must match b[0-9]+: {self.label!r}")

    def __str__(self):
        return "_:" + self.label


XSD_STRING = IRI(XSD_NS + "string")
XSD_INTEGER = IRI(XSD_NS + "integer")
XSD_DECIMAL = IRI(XSD_NS + "decimal")
XSD_DATE = IRI(XSD_NS + "date")
XSD_ANYURI = IRI(XSD_NS + "anyURI")
DATATYPES = (XSD_STRING, XSD_INTEGER, XSD_DECIMAL, XSD_DATE, XSD_ANYURI)
NUMERIC_DATATYPES = (XSD_INTEGER, XSD_DECIMAL)


class UnsupportedDatatype(AppKGError, ValueError):
    code = "UNSUPPORTED_DATATYPE"


@dataclass(frozen=True)
class Literal:
    lexical: str
    datatype: IRI = XSD_STRING
    language: Optional[str] = None

    def __post_init__(self):
        if self.datatype not in DATATYPES:
            raise UnsupportedDatatype(str(self.datatype))
        if self.language is not None and self.datatype != XSD_STRING:
            raise TermError("only xsd:string literals carry a language tag")

    @property
    def is_numeric(self) -> bool:
        return self.datatype in NUMERIC_DATATYPES

    def numeric_value(self) -> Optional[Decimal]:
        """The number a numeric literal denotes, or None if it has none."""
        if not self.is_numeric:
            return None
        try:
            value = Decimal(self.lexical.strip())
        except InvalidOperation:
            return None
        return value if value.is_finite() else None

    def __str__(self):
        return self.lexical


Term = Union[IRI, BNode, Literal]


class Triple(NamedTuple):
    subject: Union[IRI, BNode]
    predicate: IRI
    object: Term


def term_key(term: Term) -> tuple:
    """Total order: IRIs < blank nodes < literals.

    Literals sort by datatype IRI, then by numeric value for numeric
    datatypes, then by lexical form.
    """
    if isinstance(term, IRI):
        return (0, term.value)
    if isinstance(term, BNode):
        return (1, term.label)
    num = term.numeric_value()
    if num is not None:
        return (2, term.datatype.value, 0, num, term.lexical, term.language or "")
    return (2, term.datatype.value, 1, Decimal(0), term.lexical, term.language or "")


def triple_key(t: Triple) -> tuple:
    return (term_key(t.subject), term_key(t.predicate), term_key(t.object))


class Graph:
    """A set of triples plus presentation prefixes.

    Adding a triple already present is a no-op.  Equality compares triples
    only; prefixes are presentation.
    """

    def __init__(self, triples: Iterable[Triple] = (), prefixes: Optional[Mapping[str, str]] = None):
        self._triples = set()
        self.prefixes: Dict[str, str] = dict(DEFAULT_PREFIXES if prefixes is None else prefixes)
        self.update(triples)

    def add(self, triple: Triple) -> None:
        s, p, o = triple
        if not isinstance(s, (IRI, BNode)):
            raise TermError(f"subject must be an IRI or blank node: {s!r}")
        if not isinstance(p, IRI):
            raise TermError(f"predicate must be an IRI: {p!r}")
        if not isinstance(o, (IRI, BNode, Literal)):
            raise TermError(f"object must be a term: {o!r}")
        self._triples.add(Triple(s, p, o))

    def update(self, triples: Iterable[Triple]) -> None:
        for t in triples:
            self.add(t)

    def discard(self, triple: Triple) -> None:
        self._triples.discard(triple)

    def copy(self) -> "Graph":
        g = Graph(prefixes=self.prefixes)
        g._triples = set(self._triples)
        return g

    def __or__(self, other: "Graph") -> "Graph":
        g = self.copy()
        g._triples |= other._triples
        for name, ns in other.prefixes.items():
            g.prefixes.setdefault(name, ns)
        return g

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __len__(self) -> int:
        return len(self._triples)

    def __contains__(self, triple) -> bool:
        return triple in self._triples

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples

    __hash__ = None

    def sorted(self):
        return sorted(self._triples, key=triple_key)

    def __repr__(self):
        return f"<Graph {len(self)} triples>"
