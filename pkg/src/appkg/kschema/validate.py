"""Schema conformance checking."""

from __future__ import annotations

import datetime as dt
import re
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Set

from appkg.kschema import vocab as V
from appkg.kschema.terms import (
    IRI, XSD_ANYURI, XSD_DATE, XSD_DECIMAL, XSD_INTEGER, XSD_STRING, BNode, Graph, Literal,
    Term, term_key,
)

UNKNOWN_PREDICATE = "UNKNOWN_PREDICATE"
DOMAIN_VIOLATION = "DOMAIN_VIOLATION"
RANGE_VIOLATION = "RANGE_VIOLATION"
CARDINALITY_VIOLATION = "CARDINALITY_VIOLATION"
LITERAL_LEX_ERROR = "LITERAL_LEX_ERROR"


@dataclass(frozen=True)
class Violation:
    code: str
    subject: Term
    predicate: IRI
    detail: str

    def line(self) -> str:
        return f"{self.code}\t{self.subject}\t{self.predicate}\t{self.detail}"


class ValidationReport:
    def __init__(self, violations: List[Violation]):
        self.violations = sorted(
            set(violations),
            key=lambda v: (term_key(v.subject), v.predicate.value, v.code, v.detail))

    def __bool__(self):
        return bool(self.violations)

    def __len__(self):
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def codes(self) -> Set[str]:
        return {v.code for v in self.violations}

    def lines(self) -> List[str]:
        return [v.line() for v in self.violations]

    def __repr__(self):
        return f"<ValidationReport {len(self)} violation(s)>"


_INTEGER = re.compile(r"[+-]?[0-9]+")
_DECIMAL = re.compile(r"[+-]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)")
_DATE = re.compile(r"-?[0-9]{4,}-[0-9]{2}-[0-9]{2}")
_URI_FORBIDDEN = re.compile(r'[\s<>"{}|\\^`]')


def lexical_ok(lit: Literal) -> bool:
    """Whether the lexical form is in the lexical space of its datatype."""
    lex = lit.lexical
    dt_ = lit.datatype
    if dt_ == XSD_STRING:
        return True
    if dt_ == XSD_INTEGER:
        return bool(_INTEGER.fullmatch(lex))
    if dt_ == XSD_DECIMAL:
        return bool(_DECIMAL.fullmatch(lex))
    if dt_ == XSD_DATE:
        if not _DATE.fullmatch(lex) or lex.startswith("-"):
            return False
        try:
            dt.date.fromisoformat(lex)
        except ValueError:
            return False
        return True
    if dt_ == XSD_ANYURI:
        return not _URI_FORBIDDEN.search(lex)
    return False


def validate(graph: Graph, vocab: V.Vocabulary = V.APP_VOCABULARY) -> ValidationReport:
    """Check every triple against the vocabulary; an empty report means the
    graph conforms."""
    types: Dict[Term, Set[IRI]] = defaultdict(set)
    by_subject = defaultdict(list)
    for t in graph:
        by_subject[t.subject].append(t)
        if t.predicate == V.RDF_TYPE and isinstance(t.object, IRI):
            types[t.subject].add(t.object)

    found: List[Violation] = []
    for t in graph:
        s, p, o = t
        if isinstance(o, Literal) and not lexical_ok(o):
            found.append(Violation(LITERAL_LEX_ERROR, s, p,
                                   f"{o.lexical!r} is not a valid {V.local_name(o.datatype)}"))
        if p in V.META_PREDICATES:
            continue
        entries = vocab.entries_for(p)
        if not entries:
            found.append(Violation(UNKNOWN_PREDICATE, s, p, "predicate not in vocabulary"))
            continue
        applicable = [e for e in entries if e.domain in types[s]]
        if not applicable:
            domains = ", ".join(V.local_name(e.domain) for e in entries)
            have = ", ".join(sorted(V.local_name(c) for c in types[s])) or "untyped"
            found.append(Violation(DOMAIN_VIOLATION, s, p, f"subject is {have}; expected {domains}"))
            applicable = entries
        ranges = {r for e in applicable for r in e.range}
        problem = _range_problem(o, ranges, types)
        if problem:
            found.append(Violation(RANGE_VIOLATION, s, p, problem))

    for s, classes in types.items():
        counts = defaultdict(int)
        for t in by_subject[s]:
            counts[t.predicate] += 1
        for cls in classes:
            for e in vocab.entries_with_domain(cls):
                n = counts[e.predicate]
                if e.cardinality == V.ONE and n != 1:
                    found.append(Violation(CARDINALITY_VIOLATION, s, e.predicate,
                                           f"{V.local_name(cls)} needs exactly one, found {n}"))
                elif e.cardinality == V.AT_MOST_ONE and n > 1:
                    found.append(Violation(CARDINALITY_VIOLATION, s, e.predicate,
                                           f"{V.local_name(cls)} allows at most one, found {n}"))
    return ValidationReport(found)


def _range_problem(obj: Term, ranges, types) -> str:
    datatype_ranges = {r for r in ranges if r.value.startswith("http://www.w3.org/2001/XMLSchema#")}
    if datatype_ranges:
        if not isinstance(obj, Literal):
            return "expected a literal"
        if obj.datatype not in datatype_ranges:
            want = "/".join(sorted(V.local_name(r) for r in datatype_ranges))
            return f"datatype {V.local_name(obj.datatype)} where {want} is required"
        return ""
    if isinstance(obj, Literal):
        return "expected a resource, got a literal"
    if not types.get(obj, set()) & ranges:
        want = "/".join(sorted(V.local_name(r) for r in ranges))
        return f"object is not typed {want}"
    return ""
