"""Extraction rules and their application to one page.

A rule set binds each of the eleven field ids to one technique: a CSS
selector evaluated over the parsed tree, or a regular expression run over
the raw page markup.  The ``url`` field is special: it uses the reserved
selector ``@source`` and is filled from the corpus manifest.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Union

from appkg.errors import AppKGError
from appkg.extract.dom import DomNode, extract_text
from appkg.extract.selector import SelectorSyntaxError, parse_selector, select_first

SELECTOR_FIELDS = ("name", "developer", "category", "review_count", "rating_value")
PATTERN_FIELDS = ("download_count", "date_modified", "content_rating", "price_range", "os_requirement")
FIELD_IDS = SELECTOR_FIELDS + PATTERN_FIELDS + ("url",)

SELECTOR = "SELECTOR"
PATTERN = "PATTERN"
SOURCE_EXPRESSION = "@source"


class RuleSetError(AppKGError):
    code = "INVALID_RULE_SET"


class RequiredFieldMissing(AppKGError):
    code = "REQUIRED_FIELD_MISSING"

    def __init__(self, field_id: str, snapshot_id: str = ""):
        where = f" in snapshot {snapshot_id}" if snapshot_id else ""
        super().__init__(f"required field {field_id!r} matched nothing{where}")
        self.field = field_id
        self.snapshot_id = snapshot_id


@dataclass(frozen=True)
class ExtractionRule:
    field: str
    technique: str
    expression: str
    capture_group: int = 1
    required: bool = False

    def __post_init__(self):
        if self.field not in FIELD_IDS:
            raise RuleSetError(f"unknown field id {self.field!r}")
        if self.technique not in (SELECTOR, PATTERN):
            raise RuleSetError(f"{self.field}: unknown technique {self.technique!r}")
        if self.field == "url":
            if self.technique != SELECTOR or self.expression != SOURCE_EXPRESSION:
                raise RuleSetError(f"url must use SELECTOR {SOURCE_EXPRESSION!r}")
            return
        if self.expression == SOURCE_EXPRESSION:
            raise RuleSetError(f"{self.field}: {SOURCE_EXPRESSION!r} is reserved for url")
        if self.technique == SELECTOR:
            try:
                parse_selector(self.expression)
            except SelectorSyntaxError as exc:
                raise RuleSetError(f"{self.field}: {exc}") from exc
        else:
            try:
                groups = re.compile(self.expression).groups
            except re.error as exc:
                raise RuleSetError(f"{self.field}: bad pattern: {exc}") from exc
            if self.capture_group < 1 or groups < self.capture_group:
                raise RuleSetError(
                    f"{self.field}: capture_group {self.capture_group} but pattern has {groups} group(s)")

    @property
    def regex(self) -> re.Pattern:
        return re.compile(self.expression)


class RuleSet:
    """Exactly one rule per field id, all eleven covered."""

    def __init__(self, rules: Iterable[ExtractionRule]):
        by_field: Dict[str, ExtractionRule] = {}
        for rule in rules:
            if rule.field in by_field:
                raise RuleSetError(f"duplicate rule for field {rule.field!r}")
            by_field[rule.field] = rule
        missing = [f for f in FIELD_IDS if f not in by_field]
        if missing:
            raise RuleSetError(f"rule set does not cover: {', '.join(missing)}")
        self._rules = {f: by_field[f] for f in FIELD_IDS}

    def __getitem__(self, field_id: str) -> ExtractionRule:
        return self._rules[field_id]

    def __iter__(self):
        return iter(self._rules.values())

    def __len__(self):
        return len(self._rules)

    def by_technique(self, technique: str) -> List[str]:
        return [r.field for r in self if r.technique == technique and r.expression != SOURCE_EXPRESSION]

    @classmethod
    def from_records(cls, records: Iterable[dict]) -> "RuleSet":
        rules = []
        for rec in records:
            unknown = set(rec) - {"field", "technique", "expression", "capture_group", "required"}
            if unknown:
                raise RuleSetError(f"unknown rule keys: {sorted(unknown)}")
            try:
                rules.append(ExtractionRule(
                    field=rec["field"],
                    technique=rec["technique"],
                    expression=rec["expression"],
                    capture_group=int(rec.get("capture_group", 1)),
                    required=bool(rec.get("required", False)),
                ))
            except KeyError as exc:
                raise RuleSetError(f"rule missing key {exc.args[0]!r}") from exc
        return cls(rules)

    def to_records(self) -> List[dict]:
        return [
            {"field": r.field, "technique": r.technique, "expression": r.expression,
             "capture_group": r.capture_group, "required": r.required}
            for r in self
        ]


def load_rules(path: Union[str, Path]) -> RuleSet:
    """Read a rule set file: one JSON object per line, ``#`` comments allowed."""
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise RuleSetError(f"{path}:{lineno}: {exc.msg}") from exc
    return RuleSet.from_records(records)


@dataclass
class RawAppRecord:
    """The eleven raw strings of one page, verbatim.

    ``developer_kind`` and ``developer_url`` are manifest annotations, not
    page fields; they are carried here so normalization sees them.
    """

    snapshot_id: str
    url: str
    name: Optional[str] = None
    developer: Optional[str] = None
    category: Optional[str] = None
    review_count: Optional[str] = None
    rating_value: Optional[str] = None
    download_count: Optional[str] = None
    date_modified: Optional[str] = None
    content_rating: Optional[str] = None
    price_range: Optional[str] = None
    os_requirement: Optional[str] = None
    developer_kind: Optional[str] = None
    developer_url: Optional[str] = None

    def fields(self) -> Dict[str, str]:
        """Present page fields (including ``url``) keyed by field id."""
        return {f: getattr(self, f) for f in FIELD_IDS if getattr(self, f) is not None}

    def to_json(self) -> dict:
        out = {"snapshot_id": self.snapshot_id}
        out.update(self.fields())
        for key in ("developer_kind", "developer_url"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "RawAppRecord":
        known = {"snapshot_id", "developer_kind", "developer_url", *FIELD_IDS}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown raw record keys: {sorted(unknown)}")
        return cls(**data)


def apply_rules(doc: DomNode, page_text: str, rules: RuleSet, source_url: str,
                snapshot_id: str = "", developer_kind: Optional[str] = None,
                developer_url: Optional[str] = None) -> RawAppRecord:
    """Run every rule against one page; first match wins for each field."""
    record = RawAppRecord(snapshot_id=snapshot_id, url=source_url,
                          developer_kind=developer_kind, developer_url=developer_url)
    for rule in rules:
        if rule.field == "url":
            continue
        if rule.technique == SELECTOR:
            node = select_first(doc, rule.expression)
            value = extract_text(node) if node is not None else None
        else:
            value = _first_capture(rule, page_text)
        if not value:
            if rule.required:
                raise RequiredFieldMissing(rule.field, snapshot_id)
            continue
        setattr(record, rule.field, value)
    return record


def _first_capture(rule: ExtractionRule, page_text: str) -> Optional[str]:
    m = rule.regex.search(page_text)
    if m is None or m.group(rule.capture_group) is None:
        return None
    start, end = m.span(rule.capture_group)
    # bucket counts render as "N+": keep the marker when the pattern consumed it outside the group
    if rule.field == "download_count" and page_text[end:end + 1] == "+":
        end += 1
    return page_text[start:end]
