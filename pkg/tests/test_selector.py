import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from appkg.extract import SelectorSyntaxError, parse_html, select
from appkg.extract.dom import ROOT_TAG, DomNode, NodeKind
from appkg.extract.selector import select_first

from oracles import naive_select

DOC = parse_html(
    '<div id="main" class="details wide">'
    '<h1 itemprop="name"><span>Title</span></h1>'
    '<div class="rating-box"><div class="score big">4.5</div><span class="reviews">'
    '<span>1,234</span></span></div>'
    '<div class="similar"><div class="score">3.1</div></div>'
    '</div>'
)


def texts(nodes):
    return [n.children[0].text if n.children and n.children[0].kind is NodeKind.TEXT else n.tag
            for n in nodes]


def test_class_match():
    root = parse_html('<div class="score">4.5</div>')
    assert select(root, ".score") == [root.children[0]]


def test_absent_id_is_empty_not_error():
    assert select(DOC, "#absent") == []


@pytest.mark.parametrize("selector,expected", [
    (".score", ["4.5", "3.1"]),
    ("div.score", ["4.5", "3.1"]),
    (".rating-box .score", ["4.5"]),
    (".rating-box > .score", ["4.5"]),
    ("#main > .score", []),
    ("#main .score", ["4.5", "3.1"]),
    ("h1[itemprop=name] > span", ["Title"]),
    ("h1[itemprop='name'] span", ["Title"]),
    ('[itemprop="name"]', ["h1"]),
    (".reviews > span", ["1,234"]),
    ("DIV.score.big", ["4.5"]),
    (".score.big.missing", []),
    ("div#main.details.wide > div.similar > .score", ["3.1"]),
    ("* > .score", ["4.5", "3.1"]),
])
def test_selector_examples(selector, expected):
    assert texts(select(DOC, selector)) == expected


def test_class_is_case_sensitive():
    root = parse_html('<p class="Score">x</p>')
    assert select(root, ".score") == []
    assert len(select(root, ".Score")) == 1


def test_select_first():
    assert texts([select_first(DOC, ".score")]) == ["4.5"]
    assert select_first(DOC, ".nothing") is None


def test_root_itself_is_never_selected():
    assert all(n.tag != ROOT_TAG for n in select(DOC, "*"))


@pytest.mark.parametrize("bad", ["", "   ", "div >", "> div", "div >> p", ".", "#", "[a]",
                                 "[a=]", "div,p", "div:hover", "a + b", "a ~ b", "[a=b"])
def test_syntax_errors(bad):
    with pytest.raises(SelectorSyntaxError) as err:
        select(DOC, bad)
    assert err.value.code == "SELECTOR_SYNTAX"


# -- oracle equivalence on generated trees ---------------------------------------

TAGS = ["div", "span", "p", "a", "li"]
CLASSES = ["a", "b", "c"]
IDS = ["x", "y"]
ATTRS = [("data-k", "1"), ("data-k", "2"), ("role", "main")]


@st.composite
def trees(draw, max_nodes=200):
    root = DomNode(NodeKind.ELEMENT, tag=ROOT_TAG)
    budget = draw(st.integers(1, max_nodes))
    open_nodes = [root]
    for _ in range(budget):
        parent = draw(st.sampled_from(open_nodes))
        if draw(st.integers(0, 9)) == 0:
            node = DomNode(NodeKind.TEXT, text=draw(st.sampled_from(["t", " ", "x y"])))
        else:
            attrs = []
            classes = draw(st.lists(st.sampled_from(CLASSES), max_size=3, unique=True))
            if classes:
                attrs.append(("class", " ".join(classes)))
            if draw(st.booleans()):
                attrs.append(("id", draw(st.sampled_from(IDS))))
            if draw(st.booleans()):
                attrs.append(draw(st.sampled_from(ATTRS)))
            node = DomNode(NodeKind.ELEMENT, tag=draw(st.sampled_from(TAGS)), attributes=attrs)
            open_nodes.append(node)
        node.parent = parent
        parent.children.append(node)
    return root


@st.composite
def compounds(draw):
    parts = []
    tag = draw(st.sampled_from([None, "*"] + TAGS))
    if tag:
        parts.append(tag)
    parts += ["." + c for c in draw(st.lists(st.sampled_from(CLASSES), max_size=2))]
    if draw(st.booleans()):
        parts.append("#" + draw(st.sampled_from(IDS)))
    if draw(st.booleans()):
        k, v = draw(st.sampled_from(ATTRS))
        parts.append(f"[{k}={v}]")
    if not parts:
        parts.append(draw(st.sampled_from(TAGS)))
    return "".join(parts)


@st.composite
def selectors(draw):
    steps = draw(st.lists(compounds(), min_size=1, max_size=4))
    out = steps[0]
    for step in steps[1:]:
        out += draw(st.sampled_from([" ", " > ", ">", "  "])) + step
    return out


@settings(max_examples=150, deadline=None)
@given(trees(), selectors())
def test_select_equals_naive_oracle(root, selector):
    got = select(root, selector)
    want = naive_select(root, selector)
    assert [id(n) for n in got] == [id(n) for n in want]


@settings(max_examples=100, deadline=None)
@given(trees(max_nodes=60), selectors())
def test_select_from_inner_node(root, selector):
    inner = [n for n in root.elements() if n is not root]
    if not inner:
        return
    start = inner[len(inner) // 2]
    assert [id(n) for n in select(start, selector)] == [id(n) for n in naive_select(start, selector)]
