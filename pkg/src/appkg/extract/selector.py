"""A small CSS selector engine.

Supported grammar::

    selector  := compound ( combinator compound )*
    combinator:= whitespace | '>'
    compound  := ( tag | '*' )? ( '.' class | '#' id | '[' attr '=' value ']' )*

Values inside ``[attr=value]`` may be bare identifiers or quoted with ``'``
or ``"``.  Tag names are case-folded; everything else is case-sensitive.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple

from appkg.errors import AppKGError
from appkg.extract.dom import DomNode, NodeKind


class SelectorSyntaxError(AppKGError):
    code = "SELECTOR_SYNTAX"


@dataclass(frozen=True)
class Compound:
    tag: Optional[str] = None
    classes: Tuple[str, ...] = ()
    ids: Tuple[str, ...] = ()
    attrs: Tuple[Tuple[str, str], ...] = ()

    def matches(self, node: DomNode) -> bool:
        if node.kind is not NodeKind.ELEMENT:
            return False
        if self.tag is not None and node.tag != self.tag:
            return False
        if self.ids and any(node.get("id") != i for i in self.ids):
            return False
        if self.classes:
            have = (node.get("class") or "").split()
            if any(c not in have for c in self.classes):
                return False
        return all(node.get(name) == value for name, value in self.attrs)


DESCENDANT = " "
CHILD = ">"

_NMCHAR = r"-_a-zA-Z0-9\u00a0-\uffff"
_IDENT = rf"-?[_a-zA-Z\u00a0-\uffff][{_NMCHAR}]*"
_TOKEN = re.compile(
    rf"""
    (?P<ws>\s+)
  | (?P<child>>)
  | (?P<star>\*)
  | (?P<tag>{_IDENT})
  | \.(?P<cls>{_IDENT})
  | \#(?P<id>[{_NMCHAR}]+)
  | \[\s*(?P<attr>{_IDENT})\s*=\s*(?:"(?P<dq>[^"]*)"|'(?P<sq>[^']*)'|(?P<bare>[{_NMCHAR}]+))\s*\]
    """,
    re.VERBOSE,
)


@lru_cache(maxsize=256)
def parse_selector(selector: str) -> Tuple[Tuple[str, Compound], ...]:
    """Parse into ``((combinator, compound), ...)``.

    The first combinator is always ``DESCENDANT``, relative to the node the
    selector is evaluated against.
    """
    if not selector.strip():
        raise SelectorSyntaxError("empty selector")
    steps: List[Tuple[str, Compound]] = []
    combinator = DESCENDANT
    parts: Optional[dict] = None
    pos = 0
    text = selector.strip()

    def close_compound():
        tag = parts["tag"]
        steps.append((parts["combinator"], Compound(
            tag=None if tag == "*" else tag, classes=tuple(parts["classes"]),
            ids=tuple(parts["ids"]), attrs=tuple(parts["attrs"]))))

    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SelectorSyntaxError(f"unexpected {text[pos]!r} at offset {pos} in {selector!r}")
        pos = m.end()
        kind = m.lastgroup
        if kind in ("ws", "child"):
            if parts is not None:
                close_compound()
                parts = None
                combinator = DESCENDANT
            if kind == "child":
                if not steps or combinator == CHILD:
                    raise SelectorSyntaxError(f"dangling '>' in {selector!r}")
                combinator = CHILD
            continue
        if parts is None:
            parts = {"combinator": combinator, "tag": None,
                     "classes": [], "ids": [], "attrs": []}
        if kind in ("star", "tag"):
            if parts["tag"] is not None or parts["classes"] or parts["ids"] or parts["attrs"]:
                raise SelectorSyntaxError(f"misplaced type selector in {selector!r}")
            parts["tag"] = "*" if kind == "star" else m.group("tag").lower()
        elif kind == "cls":
            parts["classes"].append(m.group("cls"))
        elif kind == "id":
            parts["ids"].append(m.group("id"))
        else:
            value = next(v for v in (m.group("dq"), m.group("sq"), m.group("bare")) if v is not None)
            parts["attrs"].append((m.group("attr"), value))
    if parts is None:
        raise SelectorSyntaxError(f"selector ends with a combinator: {selector!r}")
    close_compound()
    return tuple(steps)


def select(root: DomNode, selector: str) -> List[DomNode]:
    """Elements under ``root`` matching ``selector``, in document order.

    Evaluated left to right: each step expands the current frontier to its
    children or descendants and filters by the next compound.
    """
    steps = parse_selector(selector)
    order = {}
    for i, node in enumerate(root.iter()):
        order[id(node)] = i

    frontier = [root]
    for combinator, compound in steps:
        found = {}
        for node in frontier:
            if combinator == CHILD:
                candidates = node.children
            else:
                candidates = _descendants(node)
            for cand in candidates:
                if id(cand) not in found and compound.matches(cand):
                    found[id(cand)] = cand
        frontier = sorted(found.values(), key=lambda n: order[id(n)])
        if not frontier:
            break
    return frontier


def _descendants(node: DomNode):
    it = node.iter()
    next(it)
    return it


def select_first(root: DomNode, selector: str) -> Optional[DomNode]:
    matches = select(root, selector)
    return matches[0] if matches else None
