"""Turtle reader for the subset this toolkit writes, plus common hand-written
forms: comments, ``<IRI>`` references, ``PREFIX`` directives, ``_:label``
blank nodes, ``[ ... ]`` property lists, language tags and long strings.

Not supported (each is reported, never silently misread): ``@base`` and
relative IRIs, collections, booleans and doubles (outside the datatype set).
"""

from __future__ import annotations

import bisect
import re
from typing import Dict, List, Optional, Tuple

from appkg.errors import AppKGError
from appkg.kschema.terms import (
    DATATYPES, IRI, XSD_DECIMAL, XSD_INTEGER, XSD_NS, XSD_STRING, BNode, Graph, Literal, Term,
    TermError, Triple, UnsupportedDatatype,
)
from appkg.kschema.vocab import RDF_TYPE


class TurtleSyntaxError(AppKGError):
    code = "SYNTAX_ERROR"

    def __init__(self, line: int, column: int, expected: str, found: str = ""):
        detail = f"line {line}, column {column}: expected {expected}"
        if found:
            detail += f", found {found!r}"
        super().__init__(detail)
        self.line = line
        self.column = column
        self.expected = expected


class UndeclaredPrefix(AppKGError):
    code = "UNDECLARED_PREFIX"

    def __init__(self, prefix: str, line: int):
        super().__init__(f"line {line}: prefix {prefix!r} is not declared")
        self.prefix = prefix
        self.line = line


_UCHAR = r"\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8}"
_PN_CHARS_BASE = r"A-Za-z\u00C0-\u00D6\u00D8-\u00F6\u00F8-\u02FF\u0370-\u037D\u037F-\u1FFF\u200C-\u200D\u2070-\u218F\u2C00-\u2FEF\u3001-\uD7FF\uF900-\uFDCF\uFDF0-\uFFFD\U00010000-\U000EFFFF"
_PN_CHARS_U = _PN_CHARS_BASE + "_"
_PN_CHARS = _PN_CHARS_U + r"\-0-9\u00B7\u0300-\u036F\u203F-\u2040"
_PN_PREFIX = rf"[{_PN_CHARS_BASE}](?:[{_PN_CHARS}.]*[{_PN_CHARS}])?"
_PLX = r"%[0-9A-Fa-f]{2}|\\[_~.\-!$&'()*+,;=/?#@%]"
_PN_LOCAL = rf"(?:[{_PN_CHARS_U}:0-9]|{_PLX})(?:(?:[{_PN_CHARS}.:]|{_PLX})*(?:[{_PN_CHARS}:]|{_PLX}))?"

_TOKENS = [
    ("ws", r"[ \t\r\n]+"),
    ("comment", r"#[^\r\n]*"),
    ("iriref", rf"<(?:[^\x00-\x20<>\"{{}}|^`\\]|{_UCHAR})*>"),
    ("long_dq", r'"""(?:(?:"|"")?(?:[^"\\]|\\.))*"""'),
    ("long_sq", r"'''(?:(?:'|'')?(?:[^'\\]|\\.))*'''"),
    ("dq", r'"(?:[^"\\\n\r]|\\.)*"'),
    ("sq", r"'(?:[^'\\\n\r]|\\.)*'"),
    ("prefix_kw", r"@prefix\b"),
    ("base_kw", r"@base\b"),
    ("langtag", r"@[a-zA-Z]+(?:-[a-zA-Z0-9]+)*"),
    ("bnode", rf"_:[{_PN_CHARS_U}0-9](?:[{_PN_CHARS}.]*[{_PN_CHARS}])?"),
    ("double", r"[+-]?(?:[0-9]+\.[0-9]*[eE][+-]?[0-9]+|\.[0-9]+[eE][+-]?[0-9]+|[0-9]+[eE][+-]?[0-9]+)"),
    ("decimal", r"[+-]?[0-9]*\.[0-9]+"),
    ("integer", r"[+-]?[0-9]+"),
    ("pname", rf"(?:{_PN_PREFIX})?:(?:{_PN_LOCAL})?"),
    ("word", r"[A-Za-z][A-Za-z0-9_-]*"),
    ("dtmark", r"\^\^"),
    ("punct", r"[.;,\[\]()]"),
]
_LEXER = re.compile("|".join(f"(?P<{name}>{rx})" for name, rx in _TOKENS))

_ECHAR = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}
_STRING_ESCAPE = re.compile(r"\\(?:u([0-9A-Fa-f]{4})|U([0-9A-Fa-f]{8})|(.))", re.DOTALL)
_LOCAL_ESCAPE = re.compile(r"\\(.)")
_IRI_UCHAR = re.compile(_UCHAR)


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind = kind
        self.text = text
        self.pos = pos


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.line_starts = [0] + [m.end() for m in re.finditer(r"\n", text)]
        self.tokens = self._lex(text)
        self.i = 0
        self.prefixes: Dict[str, str] = {}
        self.blank_ids: Dict[str, BNode] = {}
        self.next_blank = 0
        self.graph = Graph(prefixes={})

    # -- positions and errors

    def where(self, pos: int) -> Tuple[int, int]:
        line = bisect.bisect_right(self.line_starts, pos)
        return line, pos - self.line_starts[line - 1] + 1

    def error(self, expected: str, tok: Optional[_Token] = None):
        tok = tok or self.peek()
        line, col = self.where(tok.pos)
        raise TurtleSyntaxError(line, col, expected, tok.text if tok.kind != "eof" else "end of input")

    def _lex(self, text: str) -> List[_Token]:
        out = []
        pos = 0
        n = len(text)
        while pos < n:
            m = _LEXER.match(text, pos)
            if m is None or m.end() == pos:
                line, col = self.where(pos)
                raise TurtleSyntaxError(line, col, "a Turtle token", text[pos:pos + 10])
            kind = m.lastgroup
            if kind not in ("ws", "comment"):
                out.append(_Token(kind, m.group(), pos))
            pos = m.end()
        out.append(_Token("eof", "", n))
        return out

    # -- token helpers

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def is_punct(self, ch: str) -> bool:
        tok = self.peek()
        return tok.kind == "punct" and tok.text == ch

    def expect_punct(self, ch: str, what: Optional[str] = None):
        if not self.is_punct(ch):
            self.error(what or repr(ch))
        return self.take()

    # -- grammar

    def parse(self) -> Graph:
        while self.peek().kind != "eof":
            self.statement()
        self.graph.prefixes = dict(self.prefixes)
        return self.graph

    def statement(self):
        tok = self.peek()
        if tok.kind == "prefix_kw":
            self.take()
            self.prefix_decl()
            self.expect_punct(".", "'.' after @prefix")
        elif tok.kind == "word" and tok.text.upper() == "PREFIX":
            self.take()
            self.prefix_decl()
        elif tok.kind == "base_kw" or (tok.kind == "word" and tok.text.upper() == "BASE"):
            self.error("a statement (base IRIs are not supported)")
        else:
            self.triples()
            self.expect_punct(".", "'.' at end of statement")

    def prefix_decl(self):
        tok = self.take()
        if tok.kind != "pname" or not tok.text.endswith(":") or tok.text.count(":") != 1:
            self.error("a prefix name like 'ex:'", tok)
        iri_tok = self.take()
        if iri_tok.kind != "iriref":
            self.error("an <IRI> for the prefix", iri_tok)
        self.prefixes[tok.text[:-1]] = self.iriref_value(iri_tok)

    def triples(self):
        tok = self.peek()
        if self.is_punct("["):
            subject = self.blank_property_list()
            if self.is_punct("."):
                return
        elif tok.kind in ("iriref", "pname"):
            subject = self.iri()
        elif tok.kind == "bnode":
            subject = self.labelled_blank(self.take())
        else:
            self.error("a subject (IRI or blank node)")
        self.predicate_object_list(subject)

    def predicate_object_list(self, subject):
        self.verb_object_list(subject)
        while self.is_punct(";"):
            while self.is_punct(";"):
                self.take()
            if self.is_punct(".") or self.is_punct("]") or self.peek().kind == "eof":
                return
            self.verb_object_list(subject)

    def verb_object_list(self, subject):
        tok = self.peek()
        if tok.kind == "word" and tok.text == "a":
            self.take()
            predicate = RDF_TYPE
        elif tok.kind in ("iriref", "pname"):
            predicate = self.iri()
        else:
            self.error("a predicate")
        self.add(subject, predicate, self.object())
        while self.is_punct(","):
            self.take()
            self.add(subject, predicate, self.object())

    def add(self, s, p, o):
        self.graph.add(Triple(s, p, o))

    def object(self) -> Term:
        tok = self.peek()
        kind = tok.kind
        if kind in ("iriref", "pname"):
            return self.iri()
        if kind == "bnode":
            return self.labelled_blank(self.take())
        if self.is_punct("["):
            return self.blank_property_list()
        if self.is_punct("("):
            self.error("an object (collections are not supported)")
        if kind in ("dq", "sq", "long_dq", "long_sq"):
            return self.literal()
        if kind == "integer":
            self.take()
            return Literal(tok.text, XSD_INTEGER)
        if kind == "decimal":
            self.take()
            return Literal(tok.text, XSD_DECIMAL)
        if kind == "double":
            raise UnsupportedDatatype(XSD_NS + "double")
        if kind == "word" and tok.text in ("true", "false"):
            raise UnsupportedDatatype(XSD_NS + "boolean")
        self.error("an object")

    def literal(self) -> Literal:
        tok = self.take()
        quote = 3 if tok.kind.startswith("long") else 1
        lexical = self.unescape(tok.text[quote:-quote], tok)
        nxt = self.peek()
        if nxt.kind == "langtag":
            self.take()
            return Literal(lexical, XSD_STRING, nxt.text[1:].lower())
        if nxt.kind == "dtmark":
            self.take()
            if self.peek().kind not in ("iriref", "pname"):
                self.error("a datatype IRI after '^^'")
            datatype = self.iri()
            if datatype not in DATATYPES:
                raise UnsupportedDatatype(datatype.value)
            return Literal(lexical, datatype)
        return Literal(lexical, XSD_STRING)

    def unescape(self, body: str, tok: _Token) -> str:
        def repl(m):
            if m.group(1) or m.group(2):
                return chr(int(m.group(1) or m.group(2), 16))
            ch = m.group(3)
            if ch not in _ECHAR:
                line, col = self.where(tok.pos + m.start())
                raise TurtleSyntaxError(line, col, "a valid escape sequence", "\\" + ch)
            return _ECHAR[ch]

        return _STRING_ESCAPE.sub(repl, body)

    def iri(self) -> IRI:
        tok = self.take()
        if tok.kind == "iriref":
            value = self.iriref_value(tok)
        else:
            prefix, _, local = tok.text.partition(":")
            if prefix not in self.prefixes:
                raise UndeclaredPrefix(prefix, self.where(tok.pos)[0])
            value = self.prefixes[prefix] + _LOCAL_ESCAPE.sub(r"\1", local)
        try:
            return IRI(value)
        except TermError:
            line, col = self.where(tok.pos)
            raise TurtleSyntaxError(line, col, "an absolute IRI (relative IRIs are not supported)", tok.text)

    def iriref_value(self, tok: _Token) -> str:
        return _IRI_UCHAR.sub(lambda m: chr(int(m.group()[2:], 16)), tok.text[1:-1])

    def fresh_blank(self) -> BNode:
        node = BNode(f"b{self.next_blank}")
        self.next_blank += 1
        return node

    def labelled_blank(self, tok: _Token) -> BNode:
        label = tok.text[2:]
        node = self.blank_ids.get(label)
        if node is None:
            node = self.blank_ids[label] = self.fresh_blank()
        return node

    def blank_property_list(self) -> BNode:
        self.expect_punct("[")
        node = self.fresh_blank()
        if self.is_punct("]"):
            self.take()
            return node
        self.predicate_object_list(node)
        self.expect_punct("]", "']' closing a blank node")
        return node


def parse(text: str) -> Graph:
    """Parse a Turtle document; blank nodes get fresh labels b0, b1, ...
    in order of first appearance."""
    return _Parser(text).parse()


def read_turtle(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
