"""Slow, obviously-correct reference implementations used as test oracles.

None of these import the code under test's algorithms; they re-derive each
answer by brute force from the documented behaviour.
"""

import re
from collections import defaultdict
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from appkg.extract.dom import NodeKind
from appkg.kschema.terms import IRI, XSD_DECIMAL, XSD_INTEGER, BNode, Literal

SCHEMA = "http://schema.org/"
HOP_PREDICATES = {SCHEMA + "reviewCount", SCHEMA + "ratingValue"}
AGGREGATE = SCHEMA + "aggregateRating"


# -- selectors: per-node test walking ancestor chains ---------------------------

_COMPOUND_PART = re.compile(
    r"""(?P<tag>^[A-Za-z][-A-Za-z0-9_]*|^\*)
      | \.(?P<cls>[-_A-Za-z0-9]+)
      | \#(?P<id>[-_A-Za-z0-9]+)
      | \[(?P<attr>[-_A-Za-z0-9]+)=(?P<val>[-_A-Za-z0-9]+)\]""",
    re.VERBOSE,
)


def _split(selector):
    """'a > b c' -> [('a', None), ('b', '>'), ('c', ' ')] (combinator before each)."""
    tokens = selector.replace(">", " > ").split()
    out, comb = [], None
    for tok in tokens:
        if tok == ">":
            comb = ">"
            continue
        out.append((tok, comb if out else None))
        comb = " "
    return out


def _compound_ok(node, text):
    if node.kind is not NodeKind.ELEMENT:
        return False
    attrs = dict(reversed(node.attributes))
    for m in _COMPOUND_PART.finditer(text):
        if m.group("tag") and m.group("tag") != "*" and node.tag != m.group("tag").lower():
            return False
        if m.group("cls") and m.group("cls") not in attrs.get("class", "").split():
            return False
        if m.group("id") and attrs.get("id") != m.group("id"):
            return False
        if m.group("attr") and attrs.get(m.group("attr")) != m.group("val"):
            return False
    return True


def _matches_at(node, steps, i, root):
    """Does ``node`` match steps[0..i] with steps[i] anchored on ``node``?"""
    text, comb = steps[i]
    if node is root or not _compound_ok(node, text):
        return False
    if i == 0:
        return True
    parent = node.parent
    if comb == ">":
        return parent is not None and _matches_at(parent, steps, i - 1, root)
    while parent is not None and parent is not root:
        if _matches_at(parent, steps, i - 1, root):
            return True
        parent = parent.parent
    return False


def _inside(node, root):
    while node is not None:
        if node is root:
            return True
        node = node.parent
    return False


def naive_select(root, selector):
    steps = _split(selector)
    order = []

    def walk(n):
        order.append(n)
        for c in n.children:
            walk(c)

    walk(root)
    return [n for n in order if n is not root and _inside(n, root)
            and _matches_at(n, steps, len(steps) - 1, root)]


# -- numbers -------------------------------------------------------------------

def digit_strip(raw):
    """Every non-digit left of a trailing '+' removed; None when nothing is left
    or non-grouping junk is present."""
    text = raw.strip()
    if text.endswith("+"):
        text = text[:-1]
    digits = "".join(c for c in text if c.isdigit() and c.isascii())
    return int(digits) if digits else None


# -- mapping table ---------------------------------------------------------------

# (row, condition) straight from the record -> triples table
MAPPING_TABLE = [
    ("S a MobileApplication", None),
    ("S name", None),
    ("S applicationCategory", None),
    ("S applicationSubCategory", "subcategory"),
    ("S aggregateRating B_r", None),
    ("B_r a AggregateRating", None),
    ("B_r reviewCount", None),
    ("B_r ratingValue", None),
    ("S contentRating", None),
    ("S operatingSystem", None),
    ("S offers B_o", "offers"),
    ("B_o a Offer", "offers"),
    ("B_o lowPrice", "offers"),
    ("B_o highPrice", "offers"),
    ("B_o priceCurrency", "offers"),
    ("S downloadCount", None),
    ("S dateModified", None),
    ("S installUrl", None),
    ("S author B_d", None),
    ("B_d a Person|Organization", None),
    ("B_d name|legalName", None),
    ("B_d url", "developer_url"),
]


def table_row_count(record):
    present = {
        "subcategory": record.subcategory is not None,
        "offers": record.price_range is not None,
        "developer_url": record.developer_url is not None,
    }
    return sum(1 for _, cond in MAPPING_TABLE if cond is None or present[cond])


# -- store -------------------------------------------------------------------------

def order_key(term):
    if isinstance(term, IRI):
        return (0, term.value)
    if isinstance(term, BNode):
        return (1, term.label)
    dt = term.datatype.value
    if term.datatype in (XSD_INTEGER, XSD_DECIMAL):
        try:
            return (2, dt, 0, Fraction(Decimal(term.lexical)), term.lexical, term.language or "")
        except (InvalidOperation, ValueError):
            pass
    return (2, dt, 1, Fraction(0), term.lexical, term.language or "")


def scan_match(triples, pattern):
    s, p, o = pattern
    hits = [t for t in triples
            if (s is None or t[0] == s) and (p is None or t[1] == p) and (o is None or t[2] == o)]
    if s is not None or (p is None and o is None):
        cols = (0, 1, 2)
    elif p is not None:
        cols = (1, 2, 0)
    else:
        cols = (2, 0, 1)
    return sorted(set(hits), key=lambda t: tuple(order_key(t[c]) for c in cols))


def numeric(term):
    if isinstance(term, Literal) and term.datatype in (XSD_INTEGER, XSD_DECIMAL):
        try:
            return Fraction(Decimal(term.lexical))
        except (InvalidOperation, ValueError):
            return None
    return None


def value_pairs(triples, predicate):
    triples = set(triples)
    if predicate.value in HOP_PREDICATES:
        return {(app, o) for app, p1, node in triples if p1.value == AGGREGATE
                for n2, p2, o in triples if n2 == node and p2 == predicate}
    return {(s, o) for s, p, o in triples if p == predicate}


def brute_top_k(triples, predicate, k, descending=True):
    rows = [(numeric(o), s) for s, o in value_pairs(triples, predicate)]
    if any(v is None for v, _ in rows):
        return None
    rows.sort(key=lambda r: ((-r[0] if descending else r[0]), order_key(r[1])))
    return [(s, v) for v, s in rows[:k]]


def _same(a, b):
    na, nb = numeric(a), numeric(b)
    if na is not None and nb is not None:
        return na == nb
    return a == b


def brute_peers(triples, subject, predicate):
    pairs = value_pairs(triples, predicate)
    mine = [o for s, o in pairs if s == subject]
    if not mine:
        return None
    peers = {s for s, o in pairs if s != subject and any(_same(o, m) for m in mine)}
    return sorted(peers, key=order_key)


def brute_group_shares(triples, predicate):
    holders = defaultdict(set)
    for s, o in value_pairs(triples, predicate):
        holders[o].add(s)
    total = len({s for subs in holders.values() for s in subs})
    rows = []
    for value, subs in holders.items():
        share = round(Fraction(len(subs), total) * 10_000)    # round-half-even on exact ratio
        rows.append((value, len(subs), Decimal(share).scaleb(-4)))
    rows.sort(key=lambda r: (-r[1], order_key(r[0])))
    return rows
