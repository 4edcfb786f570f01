"""Canonical app records -> RDF triples."""

from __future__ import annotations

from decimal import Decimal
from typing import Iterable, List, Optional
from urllib.parse import quote

from appkg.kschema import vocab as V
from appkg.kschema.terms import (
    IRI, XSD_ANYURI, XSD_DATE, XSD_DECIMAL, XSD_INTEGER, XSD_STRING, BNode, Graph, Literal,
    Triple,
)
from appkg.normalize.records import CanonicalAppRecord, DeveloperKind, package_id

DEFAULT_BASE = "urn:app:"


def schema_header() -> List[Triple]:
    """The TBox statements every app graph starts with."""
    return [
        Triple(V.MOBILE_APPLICATION, V.RDFS_SUBCLASSOF, V.CREATIVE_WORK),
        Triple(V.DOWNLOAD_COUNT, V.RDF_TYPE, V.RDF_PROPERTY),
        Triple(V.DOWNLOAD_COUNT, V.RDFS_DOMAIN, V.MOBILE_APPLICATION),
        Triple(V.DOWNLOAD_COUNT, V.RDFS_RANGE, XSD_INTEGER),
    ]


def mint_app_iri(record: CanonicalAppRecord, base: str = DEFAULT_BASE) -> IRI:
    pkg = package_id(record.install_url)
    return IRI(base + quote(pkg if pkg else record.install_url, safe=""))


def decimal_lexical(value: Decimal) -> str:
    """Plain decimal notation that always carries a point ("5" -> "5.0")."""
    text = format(value, "f")
    return text if "." in text else text + ".0"


def _str(value: str) -> Literal:
    return Literal(value, XSD_STRING)


def _int(value: int) -> Literal:
    return Literal(str(value), XSD_INTEGER)


def _dec(value: Decimal) -> Literal:
    return Literal(decimal_lexical(value), XSD_DECIMAL)


def record_to_triples(record: CanonicalAppRecord, base: str = DEFAULT_BASE,
                      first_blank: int = 0) -> List[Triple]:
    """Map one record onto the schema.

    Blank nodes are labelled ``b{n}`` in emission order, starting at
    ``first_blank`` so records can share a graph without label clashes.
    """
    s = mint_app_iri(record, base)
    counter = [first_blank]

    def blank() -> BNode:
        node = BNode(f"b{counter[0]}")
        counter[0] += 1
        return node

    out = [
        Triple(s, V.RDF_TYPE, V.MOBILE_APPLICATION),
        Triple(s, V.NAME, _str(record.name)),
        Triple(s, V.APPLICATION_CATEGORY, _str(record.category)),
    ]
    if record.subcategory is not None:
        out.append(Triple(s, V.APPLICATION_SUBCATEGORY, _str(record.subcategory)))

    rating = blank()
    out += [
        Triple(s, V.AGGREGATE_RATING_P, rating),
        Triple(rating, V.RDF_TYPE, V.AGGREGATE_RATING),
        Triple(rating, V.REVIEW_COUNT, _int(record.review_count)),
        Triple(rating, V.RATING_VALUE, _dec(record.rating_value)),
        Triple(s, V.CONTENT_RATING, _str(record.content_rating.original_label)),
        Triple(s, V.OPERATING_SYSTEM, _str(record.operating_system.raw)),
    ]

    if record.price_range is not None:
        offer = blank()
        out += [
            Triple(s, V.OFFERS, offer),
            Triple(offer, V.RDF_TYPE, V.OFFER),
            Triple(offer, V.LOW_PRICE, _dec(record.price_range.low)),
            Triple(offer, V.HIGH_PRICE, _dec(record.price_range.high)),
            Triple(offer, V.PRICE_CURRENCY, _str(record.price_range.currency)),
        ]

    out += [
        Triple(s, V.DOWNLOAD_COUNT, _int(record.download_count)),
        Triple(s, V.DATE_MODIFIED, Literal(record.date_modified.isoformat(), XSD_DATE)),
        Triple(s, V.INSTALL_URL, Literal(record.install_url, XSD_ANYURI)),
    ]

    dev = blank()
    out.append(Triple(s, V.AUTHOR, dev))
    if record.developer_kind is DeveloperKind.PERSON:
        out += [Triple(dev, V.RDF_TYPE, V.PERSON), Triple(dev, V.NAME, _str(record.developer_name))]
    else:
        out += [Triple(dev, V.RDF_TYPE, V.ORGANIZATION),
                Triple(dev, V.LEGAL_NAME, _str(record.developer_name))]
    if record.developer_url is not None:
        out.append(Triple(dev, V.URL, Literal(record.developer_url, XSD_ANYURI)))
    return out


def blank_count(record: CanonicalAppRecord) -> int:
    """Blank nodes ``record_to_triples`` mints for ``record``."""
    return 3 if record.price_range is not None else 2


def build_graph(records: Iterable[CanonicalAppRecord], base: str = DEFAULT_BASE,
                header: bool = True, prefixes: Optional[dict] = None) -> Graph:
    """Header plus all records, with globally unique blank labels."""
    graph = Graph(prefixes=prefixes)
    if header:
        graph.update(schema_header())
    next_blank = 0
    for record in records:
        triples = record_to_triples(record, base, first_blank=next_blank)
        next_blank += blank_count(record)
        graph.update(triples)
    return graph
