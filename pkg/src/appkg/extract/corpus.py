"""Offline snapshot corpus: a tab-separated manifest plus stored pages.

Manifest rows are ``snapshot_id<TAB>source_url<TAB>relative_path``,
optionally followed by ``developer_kind`` (``person`` or ``organization``)
and ``developer_url`` columns.  ``#`` starts a comment line; blank lines
are skipped.  Paths resolve relative to the manifest's directory.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, List, Optional, Tuple, Union

from appkg.errors import AppKGError
from appkg.extract.dom import DomNode, InvalidEncoding, parse_html
from appkg.extract.rules import RawAppRecord, RuleSet, apply_rules


class ManifestNotFound(AppKGError):
    code = "MANIFEST_NOT_FOUND"


class ManifestFormatError(AppKGError):
    code = "MANIFEST_FORMAT"


class SnapshotNotFound(AppKGError):
    code = "SNAPSHOT_NOT_FOUND"

    def __init__(self, message, row):
        super().__init__(message)
        self.row = row


DEVELOPER_KINDS = ("person", "organization")


@dataclass(frozen=True)
class ManifestRow:
    lineno: int
    snapshot_id: str
    source_url: str
    path: Path
    developer_kind: Optional[str] = None
    developer_url: Optional[str] = None


@dataclass
class CorpusEntry:
    row: ManifestRow
    doc: DomNode
    page_text: str

    @property
    def source_url(self) -> str:
        return self.row.source_url

    def __iter__(self):
        # unpacks as (source_url, doc, page_text)
        return iter((self.row.source_url, self.doc, self.page_text))

    def extract(self, rules: RuleSet) -> RawAppRecord:
        return apply_rules(self.doc, self.page_text, rules, self.row.source_url,
                           snapshot_id=self.row.snapshot_id,
                           developer_kind=self.row.developer_kind,
                           developer_url=self.row.developer_url)


def read_manifest(manifest_path: Union[str, Path]) -> List[ManifestRow]:
    manifest_path = Path(manifest_path)
    if not manifest_path.is_file():
        raise ManifestNotFound(str(manifest_path))
    base = manifest_path.parent
    rows = []
    seen = set()
    with open(manifest_path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            cols = line.split("\t")
            if not 3 <= len(cols) <= 5:
                raise ManifestFormatError(f"{manifest_path}:{lineno}: expected 3-5 tab-separated columns, got {len(cols)}")
            snapshot_id, source_url, rel = (c.strip() for c in cols[:3])
            if not snapshot_id or not source_url or not rel:
                raise ManifestFormatError(f"{manifest_path}:{lineno}: empty column")
            if snapshot_id in seen:
                raise ManifestFormatError(f"{manifest_path}:{lineno}: duplicate snapshot id {snapshot_id!r}")
            seen.add(snapshot_id)
            kind = cols[3].strip().lower() if len(cols) > 3 and cols[3].strip() else None
            if kind is not None and kind not in DEVELOPER_KINDS:
                raise ManifestFormatError(f"{manifest_path}:{lineno}: developer kind must be one of {DEVELOPER_KINDS}")
            dev_url = cols[4].strip() if len(cols) > 4 and cols[4].strip() else None
            rows.append(ManifestRow(lineno, snapshot_id, source_url, base / rel, kind, dev_url))
    return rows


def load_entry(row: ManifestRow) -> CorpusEntry:
    try:
        data = row.path.read_bytes()
    except (FileNotFoundError, IsADirectoryError):
        raise SnapshotNotFound(f"row {row.lineno}: {row.path}", row)
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InvalidEncoding(f"row {row.lineno}: {row.path}: {exc.reason} at byte {exc.start}")
    return CorpusEntry(row, parse_html(text), text)


def iter_corpus(manifest_path) -> Iterator[Tuple[ManifestRow, Union[CorpusEntry, AppKGError]]]:
    """Yield ``(row, entry_or_error)`` so callers can keep going past bad rows."""
    for row in read_manifest(manifest_path):
        try:
            yield row, load_entry(row)
        except (SnapshotNotFound, InvalidEncoding) as exc:
            yield row, exc


def load_corpus(manifest_path) -> List[CorpusEntry]:
    """All manifest entries in order; the first bad row raises."""
    return [load_entry(row) for row in read_manifest(manifest_path)]
