"""Turtle reading and writing."""

from appkg.turtle.iso import NonTreeBlanks, canonical_blank_names, isomorphic
from appkg.turtle.reader import TurtleSyntaxError, UndeclaredPrefix, parse, read_turtle
from appkg.turtle.writer import escape_string, serialize, write_turtle

__all__ = [
    "NonTreeBlanks", "TurtleSyntaxError", "UndeclaredPrefix", "canonical_blank_names",
    "escape_string", "isomorphic", "parse", "read_turtle", "serialize", "write_turtle",
]
