"""Lenient HTML tree builder.

Tokenization is delegated to :class:`html.parser.HTMLParser`; this module
only decides how tokens become a tree.  The recovery policy is small and
fixed so that the same bytes always yield the same tree:

* void elements never take children;
* a few start tags implicitly close an open sibling (``<p>a<p>b``);
* an end tag closes everything up to the nearest matching open element,
  or is ignored when nothing matches;
* ``script``/``style`` content is kept verbatim as one text node.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from html.parser import HTMLParser
from typing import Iterator, List, Optional, Tuple, Union

from appkg.errors import AppKGError


class InvalidEncoding(AppKGError):
    code = "INVALID_ENCODING"


class NodeKind(enum.Enum):
    ELEMENT = "element"
    TEXT = "text"


@dataclass(eq=False)
class DomNode:
    kind: NodeKind
    tag: str = ""
    attributes: List[Tuple[str, str]] = field(default_factory=list)
    children: List["DomNode"] = field(default_factory=list)
    text: str = ""
    parent: Optional["DomNode"] = field(default=None, repr=False)

    @property
    def is_element(self) -> bool:
        return self.kind is NodeKind.ELEMENT

    def get(self, name: str, default: Optional[str] = None) -> Optional[str]:
        for key, value in self.attributes:
            if key == name:
                return value
        return default

    def iter(self) -> Iterator["DomNode"]:
        """Pre-order walk over this node and all its descendants."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def elements(self) -> Iterator["DomNode"]:
        return (n for n in self.iter() if n.kind is NodeKind.ELEMENT)

    def __repr__(self):
        if self.kind is NodeKind.TEXT:
            return f"Text({self.text!r})"
        attrs = "".join(f" {k}={v!r}" for k, v in self.attributes)
        return f"<{self.tag}{attrs}>"


ROOT_TAG = "#root"

VOID_ELEMENTS = frozenset({"br", "img", "meta", "link", "input", "hr",
                           "area", "base", "col", "embed", "source", "wbr"})
RAW_TEXT_ELEMENTS = frozenset({"script", "style"})

_BLOCK = frozenset({"p", "div", "ul", "ol", "dl", "table", "pre", "section",
                    "article", "header", "footer", "nav", "aside", "form",
                    "blockquote", "h1", "h2", "h3", "h4", "h5", "h6", "hr"})

# start tag -> open elements it implicitly closes
_IMPLIED_CLOSE = {tag: frozenset({"p"}) for tag in _BLOCK}
_IMPLIED_CLOSE.update({
    "li": frozenset({"li", "p"}),
    "dt": frozenset({"dt", "dd", "p"}),
    "dd": frozenset({"dt", "dd", "p"}),
    "option": frozenset({"option"}),
    "tr": frozenset({"tr", "td", "th"}),
    "td": frozenset({"td", "th"}),
    "th": frozenset({"td", "th"}),
})

# implied closing never reaches past these
_SCOPE_BOUNDARY = frozenset({ROOT_TAG, "html", "body", "table", "ul", "ol",
                             "dl", "select", "td", "th", "button", "div"})


class _TreeBuilder(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.root = DomNode(NodeKind.ELEMENT, tag=ROOT_TAG)
        self.stack = [self.root]

    @property
    def current(self) -> DomNode:
        return self.stack[-1]

    def _append(self, node: DomNode):
        node.parent = self.current
        self.current.children.append(node)

    def handle_starttag(self, tag, attrs):
        self._open(tag, attrs, self_closing=False)

    def handle_startendtag(self, tag, attrs):
        self._open(tag, attrs, self_closing=True)

    def _open(self, tag, attrs, self_closing):
        closes = _IMPLIED_CLOSE.get(tag)
        if closes:
            # cut at the outermost closable element inside the current scope,
            # so <tr> closes both the open cell and the open row
            cut = None
            for i in range(len(self.stack) - 1, 0, -1):
                open_tag = self.stack[i].tag
                if open_tag in closes:
                    cut = i
                elif open_tag in _SCOPE_BOUNDARY:
                    break
            if cut is not None:
                del self.stack[cut:]
        seen = set()
        attributes = []
        for name, value in attrs:
            if name in seen:
                continue
            seen.add(name)
            attributes.append((name, value if value is not None else ""))
        node = DomNode(NodeKind.ELEMENT, tag=tag, attributes=attributes)
        self._append(node)
        if tag not in VOID_ELEMENTS and not self_closing:
            self.stack.append(node)

    def handle_endtag(self, tag):
        for i in range(len(self.stack) - 1, 0, -1):
            if self.stack[i].tag == tag:
                del self.stack[i:]
                return

    def handle_data(self, data):
        if not data:
            return
        children = self.current.children
        if children and children[-1].kind is NodeKind.TEXT:
            children[-1].text += data
        else:
            self._append(DomNode(NodeKind.TEXT, text=data))


def parse_html(markup: Union[bytes, str]) -> DomNode:
    """Build a tree under a synthetic ``#root`` element.

    ``bytes`` input must be UTF-8; anything else raises
    :class:`InvalidEncoding`.  Never fails on malformed markup.
    """
    if isinstance(markup, (bytes, bytearray)):
        try:
            markup = bytes(markup).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InvalidEncoding(f"input is not UTF-8 ({exc.reason} at byte {exc.start})")
    builder = _TreeBuilder()
    builder.feed(markup)
    builder.close()
    return builder.root


_WS = re.compile(r"\s+")


def extract_text(node: DomNode) -> str:
    """All descendant text in document order, whitespace collapsed."""
    parts = [n.text for n in node.iter() if n.kind is NodeKind.TEXT]
    return _WS.sub(" ", "".join(parts)).strip()
