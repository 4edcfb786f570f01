"""Page snapshot parsing and field extraction."""

from appkg.extract.corpus import (
    CorpusEntry, ManifestFormatError, ManifestNotFound, ManifestRow, SnapshotNotFound,
    iter_corpus, load_corpus, read_manifest,
)
from appkg.extract.dom import DomNode, InvalidEncoding, NodeKind, extract_text, parse_html
from appkg.extract.rules import (
    FIELD_IDS, PATTERN, PATTERN_FIELDS, SELECTOR, SELECTOR_FIELDS, ExtractionRule,
    RawAppRecord, RequiredFieldMissing, RuleSet, RuleSetError, apply_rules, load_rules,
)
from appkg.extract.selector import SelectorSyntaxError, select

__all__ = [
    "CorpusEntry", "DomNode", "ExtractionRule", "FIELD_IDS", "InvalidEncoding",
    "ManifestFormatError", "ManifestNotFound", "ManifestRow", "NodeKind", "PATTERN",
    "PATTERN_FIELDS", "RawAppRecord", "RequiredFieldMissing", "RuleSet", "RuleSetError",
    "SELECTOR", "SELECTOR_FIELDS", "SelectorSyntaxError", "SnapshotNotFound",
    "apply_rules", "extract_text", "iter_corpus", "load_corpus", "load_rules",
    "parse_html", "read_manifest", "select",
]
