"""Immutable in-memory triple store with SPO / POS / OSP indices.

Terms are interned into integer ids assigned in term order (IRIs, then
blank nodes, then literals; numeric literals by value), so sorting id
triples is sorting terms.  Each index is a permutation of the frozen id
array; pattern lookups are binary searches over the permuted columns.
"""

from __future__ import annotations

from collections import defaultdict
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from appkg.errors import AppKGError
from appkg.kschema.terms import IRI, NUMERIC_DATATYPES, Graph, Literal, Term, Triple, term_key
from appkg.kschema.vocab import AGGREGATE_RATING_P, APP_VOCABULARY, RATING_PREDICATES, Vocabulary


class _Any:
    def __repr__(self):
        return "ANY"


ANY = _Any()

ASC = "ASC"
DESC = "DESC"

SHARE_QUANTUM = Decimal("0.0001")

# index name -> column order over (s, p, o)
INDEX_COLUMNS = {"spo": (0, 1, 2), "pos": (1, 2, 0), "osp": (2, 0, 1)}


class NonNumericPredicate(AppKGError):
    code = "NON_NUMERIC_PREDICATE"


class ValueNotFound(AppKGError):
    code = "VALUE_NOT_FOUND"

    def __init__(self, subject, predicate):
        super().__init__(f"{subject} has no value for {predicate}")
        self.subject = subject
        self.predicate = predicate


def choose_index(pattern) -> str:
    """Index whose key order serves a pattern: S bound -> SPO, else P -> POS,
    else O -> OSP; nothing bound scans SPO.

    With S and O bound but P free, OSP gives the tighter prefix and yields
    the same order SPO would (both end up ordered by P).
    """
    s, p, o = (x is not ANY for x in pattern)
    if s:
        return "osp" if (o and not p) else "spo"
    if p:
        return "pos"
    if o:
        return "osp"
    return "spo"


def result_order(pattern) -> Tuple[int, int, int]:
    """Column order in which ``match`` returns results for ``pattern``."""
    s, p, o = (x is not ANY for x in pattern)
    if s:
        return INDEX_COLUMNS["spo"]
    return INDEX_COLUMNS[choose_index(pattern)]


class TripleStore:
    def __init__(self, terms: Sequence[Term], ids: np.ndarray, vocab: Vocabulary = APP_VOCABULARY):
        self.terms: Tuple[Term, ...] = tuple(terms)
        self._id: Dict[Term, int] = {t: i for i, t in enumerate(self.terms)}
        self.vocab = vocab
        ids = np.unique(ids.reshape(-1, 3), axis=0) if len(ids) else np.empty((0, 3), np.int64)
        ids.setflags(write=False)
        self.triples = ids
        self._index = {}
        for name, cols in INDEX_COLUMNS.items():
            perm = np.lexsort(tuple(ids[:, c] for c in reversed(cols)))
            keys = tuple(np.ascontiguousarray(ids[perm, c]) for c in cols)
            for arr in (perm, *keys):
                arr.setflags(write=False)
            self._index[name] = (perm, keys)
        self._numeric = [t.numeric_value() if isinstance(t, Literal) else None for t in self.terms]

    @classmethod
    def build(cls, graph: Union[Graph, Iterable[Triple]], vocab: Vocabulary = APP_VOCABULARY) -> "TripleStore":
        triples = list(graph)
        unique = set()
        for s, p, o in triples:
            unique.add(s)
            unique.add(p)
            unique.add(o)
        terms = sorted(unique, key=term_key)
        index = {t: i for i, t in enumerate(terms)}
        flat = np.fromiter((index[x] for t in triples for x in t), dtype=np.int64,
                           count=3 * len(triples))
        return cls(terms, flat.reshape(-1, 3), vocab)

    def __len__(self):
        return len(self.triples)

    def term_id(self, term) -> Optional[int]:
        return self._id.get(term)

    def triple(self, row) -> Triple:
        s, p, o = row
        return Triple(self.terms[s], self.terms[p], self.terms[o])

    def __iter__(self):
        for row in self.triples[self._index["spo"][0]]:
            yield self.triple(row)

    # -- pattern matching

    def _range(self, index: str, bound: Sequence[int]) -> np.ndarray:
        """Rows of ``index`` whose leading key columns equal ``bound``."""
        perm, keys = self._index[index]
        lo, hi = 0, len(perm)
        for col, value in zip(keys, bound):
            seg = col[lo:hi]
            lo, hi = lo + int(np.searchsorted(seg, value, "left")), lo + int(np.searchsorted(seg, value, "right"))
            if lo >= hi:
                break
        return perm[lo:hi]

    def match_ids(self, pattern) -> np.ndarray:
        ids = []
        for x in pattern:
            if x is ANY:
                ids.append(None)
            else:
                i = self._id.get(x)
                if i is None:
                    return np.empty((0, 3), np.int64)
                ids.append(i)
        index = choose_index(pattern)
        cols = INDEX_COLUMNS[index]
        bound = []
        for c in cols:
            if ids[c] is None:
                break
            bound.append(ids[c])
        rows = self.triples[self._range(index, bound)]
        for c in range(3):
            if ids[c] is not None and c not in cols[:len(bound)]:
                rows = rows[rows[:, c] == ids[c]]
        return rows

    def match(self, pattern) -> List[Triple]:
        """All triples matching ``(s, p, o)`` where any position may be ``ANY``."""
        return [self.triple(r) for r in self.match_ids(tuple(pattern))]

    # -- app-level queries

    def _value_pairs(self, predicate: IRI) -> List[Tuple[int, int]]:
        """(subject id, value id) pairs, following the aggregateRating hop for
        review count and rating value."""
        rows = self.match_ids((ANY, predicate, ANY))
        if predicate not in RATING_PREDICATES:
            return [(int(s), int(o)) for s, _, o in rows]
        owners = defaultdict(list)
        for s, _, o in self.match_ids((ANY, AGGREGATE_RATING_P, ANY)):
            owners[int(o)].append(int(s))
        return [(app, int(o)) for node, _, o in rows for app in owners.get(int(node), ())]

    def top_k_by_numeric(self, predicate: IRI, k: int, direction: str = DESC) -> List[Tuple[Term, Decimal]]:
        if k < 1:
            raise ValueError("k must be positive")
        if direction not in (ASC, DESC):
            raise ValueError(f"direction must be {ASC} or {DESC}")
        declared = self.vocab.range_of(predicate)
        if declared and not set(declared) <= set(NUMERIC_DATATYPES):
            raise NonNumericPredicate(f"{predicate} has range {', '.join(map(str, declared))}")
        rows = []
        for s, o in self._value_pairs(predicate):
            value = self._numeric[o]
            if value is None:
                raise NonNumericPredicate(f"{predicate} has non-numeric value {self.terms[o]!r}")
            rows.append((value, s))
        if direction == DESC:
            rows.sort(key=lambda r: (-r[0], r[1]))
        else:
            rows.sort()
        return [(self.terms[s], v) for v, s in rows[:k]]

    def _value_key(self, term_id: int):
        num = self._numeric[term_id]
        return ("num", num) if num is not None else ("term", term_id)

    def equal_value_peers(self, subject: Term, predicate: IRI) -> List[Term]:
        """Other subjects sharing ``subject``'s value for ``predicate``."""
        pairs = self._value_pairs(predicate)
        sid = self._id.get(subject)
        wanted = {self._value_key(o) for s, o in pairs if s == sid}
        if sid is None or not wanted:
            raise ValueNotFound(subject, predicate)
        peers = {s for s, o in pairs if s != sid and self._value_key(o) in wanted}
        return [self.terms[s] for s in sorted(peers)]

    def group_shares(self, predicate: IRI) -> List[Tuple[Term, int, Decimal]]:
        """(value, subject count, share) rows, largest groups first."""
        holders = defaultdict(set)
        subjects = set()
        for s, o in self._value_pairs(predicate):
            holders[o].add(s)
            subjects.add(s)
        if not subjects:
            return []
        total = Decimal(len(subjects))
        rows = sorted(((-len(subs), o) for o, subs in holders.items()))
        return [
            (self.terms[o], -neg, (Decimal(-neg) / total).quantize(SHARE_QUANTUM, ROUND_HALF_EVEN))
            for neg, o in rows
        ]


def build(graph, vocab: Vocabulary = APP_VOCABULARY) -> TripleStore:
    return TripleStore.build(graph, vocab)
