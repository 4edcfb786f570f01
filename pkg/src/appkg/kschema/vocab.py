"""The app-store Knowledge Schema vocabulary."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from appkg.kschema.terms import (
    ASM_NS, IRI, RDF_NS, RDFS_NS, SCHEMA_NS, XSD_ANYURI, XSD_DATE, XSD_DECIMAL, XSD_INTEGER,
    XSD_STRING,
)

ONE = "ONE"
AT_MOST_ONE = "AT_MOST_ONE"
ANY = "ANY"


def schema(local: str) -> IRI:
    return IRI(SCHEMA_NS + local)


def asm(local: str) -> IRI:
    return IRI(ASM_NS + local)


RDF_TYPE = IRI(RDF_NS + "type")
RDF_PROPERTY = IRI(RDF_NS + "Property")
RDFS_SUBCLASSOF = IRI(RDFS_NS + "subClassOf")
RDFS_DOMAIN = IRI(RDFS_NS + "domain")
RDFS_RANGE = IRI(RDFS_NS + "range")

# structural predicates allowed alongside the vocabulary
META_PREDICATES = frozenset({RDF_TYPE, RDFS_SUBCLASSOF, RDFS_DOMAIN, RDFS_RANGE})

MOBILE_APPLICATION = schema("MobileApplication")
CREATIVE_WORK = schema("CreativeWork")
PERSON = schema("Person")
ORGANIZATION = schema("Organization")
AGGREGATE_RATING = schema("AggregateRating")
OFFER = schema("Offer")
CLASSES = (MOBILE_APPLICATION, CREATIVE_WORK, PERSON, ORGANIZATION, AGGREGATE_RATING, OFFER)

NAME = schema("name")
LEGAL_NAME = schema("legalName")
URL = schema("url")
APPLICATION_CATEGORY = schema("applicationCategory")
APPLICATION_SUBCATEGORY = schema("applicationSubCategory")
AGGREGATE_RATING_P = schema("aggregateRating")
REVIEW_COUNT = schema("reviewCount")
RATING_VALUE = schema("ratingValue")
CONTENT_RATING = schema("contentRating")
OPERATING_SYSTEM = schema("operatingSystem")
OFFERS = schema("offers")
LOW_PRICE = schema("lowPrice")
HIGH_PRICE = schema("highPrice")
PRICE_CURRENCY = schema("priceCurrency")
DATE_MODIFIED = schema("dateModified")
INSTALL_URL = schema("installUrl")
AUTHOR = schema("author")
DOWNLOAD_COUNT = asm("downloadCount")

# predicates whose values live one hop away, on the aggregateRating node
RATING_PREDICATES = (REVIEW_COUNT, RATING_VALUE)


@dataclass(frozen=True)
class VocabEntry:
    predicate: IRI
    domain: IRI
    range: Tuple[IRI, ...]
    cardinality: str

    @property
    def is_datatype_property(self) -> bool:
        return all(r.value.startswith("http://www.w3.org/2001/XMLSchema#") for r in self.range)


class Vocabulary:
    """Ordered predicate table: (predicate, domain, range, cardinality).

    A predicate appears once per domain class it applies to.  Entry order
    is the canonical predicate order used by the Turtle writer.
    """

    def __init__(self, entries: Iterable[VocabEntry], classes: Iterable[IRI] = ()):
        self.entries: List[VocabEntry] = list(entries)
        self.classes: Tuple[IRI, ...] = tuple(classes)
        self._by_predicate: Dict[IRI, List[VocabEntry]] = {}
        for e in self.entries:
            self._by_predicate.setdefault(e.predicate, []).append(e)
        self.predicates: Tuple[IRI, ...] = tuple(self._by_predicate)
        self.order = {p: i for i, p in enumerate(self.predicates)}

    def __contains__(self, predicate) -> bool:
        return predicate in self._by_predicate

    def entries_for(self, predicate: IRI) -> List[VocabEntry]:
        return self._by_predicate.get(predicate, [])

    def entries_with_domain(self, cls: IRI) -> List[VocabEntry]:
        return [e for e in self.entries if e.domain == cls]

    def range_of(self, predicate: IRI) -> Tuple[IRI, ...]:
        seen = []
        for e in self.entries_for(predicate):
            seen.extend(r for r in e.range if r not in seen)
        return tuple(seen)


def _e(predicate, domain, rng, card):
    return VocabEntry(predicate, domain, rng if isinstance(rng, tuple) else (rng,), card)


APP_VOCABULARY = Vocabulary([
    _e(NAME, MOBILE_APPLICATION, XSD_STRING, ONE),
    _e(NAME, PERSON, XSD_STRING, ONE),
    _e(LEGAL_NAME, ORGANIZATION, XSD_STRING, ONE),
    _e(URL, PERSON, XSD_ANYURI, AT_MOST_ONE),
    _e(URL, ORGANIZATION, XSD_ANYURI, AT_MOST_ONE),
    _e(APPLICATION_CATEGORY, MOBILE_APPLICATION, XSD_STRING, ONE),
    _e(APPLICATION_SUBCATEGORY, MOBILE_APPLICATION, XSD_STRING, AT_MOST_ONE),
    _e(AGGREGATE_RATING_P, MOBILE_APPLICATION, AGGREGATE_RATING, ONE),
    _e(REVIEW_COUNT, AGGREGATE_RATING, XSD_INTEGER, ONE),
    _e(RATING_VALUE, AGGREGATE_RATING, XSD_DECIMAL, ONE),
    _e(CONTENT_RATING, MOBILE_APPLICATION, XSD_STRING, ONE),
    _e(OPERATING_SYSTEM, MOBILE_APPLICATION, XSD_STRING, ONE),
    _e(OFFERS, MOBILE_APPLICATION, OFFER, AT_MOST_ONE),
    _e(LOW_PRICE, OFFER, XSD_DECIMAL, ONE),
    _e(HIGH_PRICE, OFFER, XSD_DECIMAL, ONE),
    _e(PRICE_CURRENCY, OFFER, XSD_STRING, ONE),
    _e(DOWNLOAD_COUNT, MOBILE_APPLICATION, XSD_INTEGER, ONE),
    _e(DATE_MODIFIED, MOBILE_APPLICATION, XSD_DATE, ONE),
    _e(INSTALL_URL, MOBILE_APPLICATION, XSD_ANYURI, ONE),
    _e(AUTHOR, MOBILE_APPLICATION, (PERSON, ORGANIZATION), ONE),
], classes=CLASSES)

_LOWER_CAMEL = re.compile(r"[a-z][a-zA-Z0-9]*")


def check_predicate_name(local: str) -> bool:
    """Attribute names are single lowerCamelCase words ("legalName")."""
    return bool(_LOWER_CAMEL.fullmatch(local))


def local_name(iri: IRI) -> str:
    value = iri.value
    cut = max(value.rfind("/"), value.rfind("#"), value.rfind(":"))
    return value[cut + 1:]
