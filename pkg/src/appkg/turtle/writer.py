"""Deterministic Turtle output.

Layout rules, in order of application:

* ``@prefix`` lines sorted by prefix name;
* subject blocks sorted by IRI, schema-level (TBox) subjects first;
* predicates in vocabulary order, ``rdf:type`` first (written ``a``),
  unknown predicates last by IRI;
* blank nodes referenced exactly once are written inline as ``[ ... ]``;
* integers and decimals with a canonical lexical form are bare tokens,
  strings are plain quoted, other datatypes carry ``^^``;
* every block ends with `` .`` followed by a blank line.
"""

from __future__ import annotations

import re
from collections import defaultdict
from typing import Dict, List, Optional

from appkg.kschema.terms import (
    IRI, RDFS_NS, XSD_DECIMAL, XSD_INTEGER, XSD_STRING, BNode, Graph, Literal, Term, term_key,
)
from appkg.kschema.vocab import APP_VOCABULARY, RDF_PROPERTY, RDF_TYPE, Vocabulary

INDENT = "    "

_PN_LOCAL = re.compile(r"[A-Za-z0-9_](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?")
_BARE_INTEGER = re.compile(r"[+-]?[0-9]+")
_BARE_DECIMAL = re.compile(r"[+-]?[0-9]*\.[0-9]+")

_ECHAR = {'"': '\\"', "\\": "\\\\", "\n": "\\n", "\r": "\\r", "\t": "\\t",
          "\b": "\\b", "\f": "\\f"}
_NEEDS_ESCAPE = re.compile(r'["\\\x00-\x1f\x7f]')
_IRI_ESCAPE = re.compile(r'[\x00-\x20<>"{}|^`\\]')


def escape_string(value: str) -> str:
    return _NEEDS_ESCAPE.sub(lambda m: _ECHAR.get(m.group(), f"\\u{ord(m.group()):04X}"), value)


class _Writer:
    def __init__(self, graph: Graph, vocab: Vocabulary):
        self.graph = graph
        self.vocab = vocab
        self.prefixes = sorted(graph.prefixes.items())
        # longest namespace first so the most specific prefix wins
        self._ns = sorted(((ns, name) for name, ns in self.prefixes),
                          key=lambda x: (-len(x[0]), x[1]))
        self._iri_cache: Dict[str, str] = {}

        self.props: Dict[Term, Dict[IRI, List[Term]]] = defaultdict(lambda: defaultdict(list))
        refs: Dict[BNode, int] = defaultdict(int)
        for s, p, o in graph:
            self.props[s][p].append(o)
            if isinstance(o, BNode):
                refs[o] += 1
        self.inline = self._inline_blanks(refs)
        self._inline_text: Dict[BNode, str] = {}

    def _inline_blanks(self, refs):
        candidates = {b for b, n in refs.items() if n == 1}
        while True:
            roots = [s for s in self.props if not (isinstance(s, BNode) and s in candidates)]
            reached = set()
            stack = list(roots)
            while stack:
                node = stack.pop()
                for objs in self.props.get(node, {}).values():
                    for o in objs:
                        if o in candidates and o not in reached:
                            reached.add(o)
                            stack.append(o)
            if reached == candidates:
                return candidates
            # once-referenced blanks caught in a cycle get labels instead
            candidates = reached

    def iri(self, iri: IRI) -> str:
        cached = self._iri_cache.get(iri.value)
        if cached is None:
            cached = self._iri(iri.value)
            self._iri_cache[iri.value] = cached
        return cached

    def _iri(self, value: str) -> str:
        for ns, name in self._ns:
            if value.startswith(ns) and _PN_LOCAL.fullmatch(value[len(ns):]):
                return f"{name}:{value[len(ns):]}"
        return "<" + _IRI_ESCAPE.sub(lambda m: f"\\u{ord(m.group()):04X}", value) + ">"

    def literal(self, lit: Literal) -> str:
        if lit.datatype == XSD_INTEGER and _BARE_INTEGER.fullmatch(lit.lexical):
            return lit.lexical
        if lit.datatype == XSD_DECIMAL and _BARE_DECIMAL.fullmatch(lit.lexical):
            return lit.lexical
        quoted = '"' + escape_string(lit.lexical) + '"'
        if lit.datatype == XSD_STRING:
            return quoted + ("@" + lit.language if lit.language else "")
        return quoted + "^^" + self.iri(lit.datatype)

    def term(self, term: Term, depth: int) -> str:
        if isinstance(term, IRI):
            return self.iri(term)
        if isinstance(term, Literal):
            return self.literal(term)
        if term in self.inline:
            return self.inline_blank(term, depth)
        return "_:" + term.label

    def inline_blank(self, node: BNode, depth: int) -> str:
        key = (node, depth)
        cached = self._inline_text.get(key)
        if cached is None:
            body = self.predicate_list(node, depth + 1)
            if not body:
                cached = "[]"
            else:
                pad = INDENT * (depth + 1)
                cached = "[\n" + pad + body + "\n" + INDENT * depth + "]"
            self._inline_text[key] = cached
        return cached

    def predicate_order(self, predicates):
        order = self.vocab.order

        def key(p):
            if p == RDF_TYPE:
                return (0, 0, "")
            if p in order:
                return (1, order[p], "")
            return (2, 0, p.value)

        return sorted(predicates, key=key)

    def predicate_list(self, subject: Term, depth: int) -> str:
        props = self.props.get(subject)
        if not props:
            return ""
        pad = INDENT * depth
        lines = []
        for p in self.predicate_order(props):
            rendered = []
            for o in props[p]:
                text = self.term(o, depth)
                if isinstance(o, BNode) and o in self.inline:
                    rendered.append(((1, text), text))
                else:
                    rendered.append(((0, term_key(o)), text))
            rendered.sort(key=lambda x: x[0])
            verb = "a" if p == RDF_TYPE else self.iri(p)
            lines.append(verb + " " + ", ".join(t for _, t in rendered))
        return (" ;\n" + pad).join(lines)

    def is_tbox(self, subject) -> bool:
        props = self.props[subject]
        if any(p.value.startswith(RDFS_NS) for p in props):
            return True
        return RDF_PROPERTY in props.get(RDF_TYPE, ())

    def render(self) -> str:
        out = [f"@prefix {name}: <{ns}> .\n" for name, ns in self.prefixes]
        subjects = [s for s in self.props if not (isinstance(s, BNode) and s in self.inline)]
        subjects.sort(key=lambda s: (not self.is_tbox(s), term_key(s)))
        if subjects and out:
            out.append("\n")
        for s in subjects:
            head = self.iri(s) if isinstance(s, IRI) else "_:" + s.label
            out.append(head + " " + self.predicate_list(s, 1) + " .\n\n")
        return "".join(out)


def serialize(graph: Graph, vocab: Optional[Vocabulary] = None) -> str:
    """Render ``graph`` as Turtle; equal graphs give byte-identical text."""
    return _Writer(graph, vocab or APP_VOCABULARY).render()


def write_turtle(graph: Graph, path, vocab: Optional[Vocabulary] = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(graph, vocab))
