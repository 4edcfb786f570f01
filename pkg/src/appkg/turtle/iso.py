"""Graph comparison up to blank node relabelling.

Only tree-shaped blank structure is supported: every blank node hangs off
exactly one parent, and the path of (root IRI, predicate, predicate, ...)
leading to it is unique.  That path is the blank node's canonical name.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Dict, Set, Tuple

from appkg.errors import AppKGError
from appkg.kschema.terms import IRI, BNode, Graph, Triple


class NonTreeBlanks(AppKGError):
    code = "NON_TREE_BLANKS"


def canonical_blank_names(graph: Graph) -> Dict[BNode, Tuple[str, ...]]:
    parents: Dict[BNode, Triple] = {}
    blanks: Set[BNode] = set()
    for t in graph:
        if isinstance(t.subject, BNode):
            blanks.add(t.subject)
        if isinstance(t.object, BNode):
            blanks.add(t.object)
            if t.object in parents:
                raise NonTreeBlanks(f"_:{t.object.label} has more than one parent")
            parents[t.object] = t

    names: Dict[BNode, Tuple[str, ...]] = {}

    def name_of(node: BNode, seen=()) -> Tuple[str, ...]:
        if node in names:
            return names[node]
        if node in seen:
            raise NonTreeBlanks(f"blank node cycle through _:{node.label}")
        parent = parents.get(node)
        if parent is None:
            raise NonTreeBlanks(f"_:{node.label} is not reachable from an IRI")
        s, p, _ = parent
        base = (s.value,) if isinstance(s, IRI) else name_of(s, seen + (node,))
        names[node] = base + (p.value,)
        return names[node]

    for b in blanks:
        name_of(b)
    taken = defaultdict(list)
    for b, name in names.items():
        taken[name].append(b)
    clashes = [name for name, nodes in taken.items() if len(nodes) > 1]
    if clashes:
        raise NonTreeBlanks(f"several blank nodes share the path {' / '.join(clashes[0])}")
    return names


def _canonical_triples(graph: Graph) -> Set[tuple]:
    names = canonical_blank_names(graph)

    def key(term):
        if isinstance(term, BNode):
            return ("blank", names[term])
        return term

    return {(key(s), p, key(o)) for s, p, o in graph}


def isomorphic(a: Graph, b: Graph) -> bool:
    """Whether the graphs are equal after renaming blank nodes."""
    if len(a) != len(b):
        return False
    return _canonical_triples(a) == _canonical_triples(b)
