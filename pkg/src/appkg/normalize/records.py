"""Whole-record normalization."""

from __future__ import annotations

import datetime as dt
import enum
from dataclasses import dataclass
from decimal import Decimal
from typing import List, Optional
from urllib.parse import parse_qs, urlsplit

from appkg.errors import AppKGError
from appkg.extract.rules import RawAppRecord
from appkg.normalize import fields as F
from appkg.normalize.profiles import LocaleProfile


class DeveloperKind(enum.Enum):
    PERSON = "PERSON"
    ORGANIZATION = "ORGANIZATION"


@dataclass(frozen=True)
class CanonicalAppRecord:
    app_id: str
    name: str
    developer_name: str
    developer_kind: DeveloperKind
    category: str
    review_count: int
    rating_value: Decimal
    download_count: int
    date_modified: dt.date
    content_rating: F.ContentRating
    operating_system: F.OsRequirement
    install_url: str
    subcategory: Optional[str] = None
    developer_url: Optional[str] = None
    price_range: Optional[F.PriceRange] = None

    def __post_init__(self):
        if not F.RATING_MIN <= self.rating_value <= F.RATING_MAX:
            raise ValueError(f"rating_value {self.rating_value} outside [0, 5]")
        if self.review_count < 0 or self.download_count < 0:
            raise ValueError("counts must be non-negative")
        if self.subcategory is not None and self.category != F.GAME:
            raise ValueError("only the Game category carries subcategories")
        if not is_absolute_url(self.install_url):
            raise ValueError(f"install_url is not absolute: {self.install_url!r}")


# raw field id -> the single canonical field it populates
FIELD_TARGETS = {
    "name": "name",
    "developer": "developer_name",
    "category": "category",
    "review_count": "review_count",
    "rating_value": "rating_value",
    "download_count": "download_count",
    "date_modified": "date_modified",
    "content_rating": "content_rating",
    "price_range": "price_range",
    "os_requirement": "operating_system",
    "url": "install_url",
}
# canonical fields computed from another field rather than read from the page
DERIVED_FIELDS = {"subcategory": "category", "app_id": "install_url"}

REQUIRED_FIELDS = tuple(f for f in FIELD_TARGETS if f != "price_range")


@dataclass(frozen=True)
class FieldError:
    code: str
    field: str
    detail: str

    def __str__(self):
        return f"{self.code}({self.field}): {self.detail}"


class RecordRejected(AppKGError):
    code = "RECORD_REJECTED"

    def __init__(self, snapshot_id: str, errors: List[FieldError]):
        super().__init__(f"{snapshot_id}: " + "; ".join(str(e) for e in errors))
        self.snapshot_id = snapshot_id
        self.errors = errors


def is_absolute_url(url: Optional[str]) -> bool:
    if not url or any(c.isspace() for c in url):
        return False
    parts = urlsplit(url)
    return bool(parts.scheme) and bool(parts.netloc or parts.path)


def package_id(install_url: str) -> Optional[str]:
    """The store package identifier (the ``id`` query parameter), if any."""
    ids = parse_qs(urlsplit(install_url).query).get("id")
    return ids[0] if ids and ids[0] else None


def normalize_record(raw: RawAppRecord, profile: LocaleProfile) -> CanonicalAppRecord:
    """Apply every field parser; any hard failure rejects the whole record."""
    errors: List[FieldError] = []
    out = {}

    def run(field_id, fn, *args):
        value = getattr(raw, field_id)
        if value is None or (field_id != "price_range" and not value.strip()):
            if field_id in REQUIRED_FIELDS:
                errors.append(FieldError("MISSING_FIELD", field_id, "absent"))
            return None
        try:
            return fn(value, *args)
        except F.NormalizeError as exc:
            errors.append(FieldError(exc.code, field_id, str(exc.args[0])))
            return None

    out["name"] = run("name", str.strip)
    out["developer_name"] = run("developer", str.strip)
    cat = run("category", F.split_category)
    out["review_count"] = run("review_count", F.parse_review_count, profile)
    out["rating_value"] = run("rating_value", F.parse_rating_value, profile)
    out["download_count"] = run("download_count", F.parse_download_count, profile)
    out["date_modified"] = run("date_modified", F.parse_date, profile)
    out["content_rating"] = run("content_rating", F.normalize_content_rating, profile)
    out["operating_system"] = run("os_requirement", F.parse_os_requirement)
    out["price_range"] = run("price_range", F.parse_price_range, profile)

    if not is_absolute_url(raw.url):
        errors.append(FieldError("INVALID_URL", "url", repr(raw.url)))
    if raw.developer_url is not None and not is_absolute_url(raw.developer_url):
        errors.append(FieldError("INVALID_URL", "developer_url", repr(raw.developer_url)))
    kind = (raw.developer_kind or "organization").strip().lower()
    if kind not in ("person", "organization"):
        errors.append(FieldError("INVALID_DEVELOPER_KIND", "developer_kind", repr(raw.developer_kind)))

    if errors:
        raise RecordRejected(raw.snapshot_id, errors)

    category, subcategory = cat
    return CanonicalAppRecord(
        app_id=package_id(raw.url) or raw.url,
        category=category,
        subcategory=subcategory,
        developer_kind=DeveloperKind.PERSON if kind == "person" else DeveloperKind.ORGANIZATION,
        developer_url=raw.developer_url,
        install_url=raw.url,
        **out,
    )


def to_raw(record: CanonicalAppRecord, profile: LocaleProfile, snapshot_id: str = "") -> RawAppRecord:
    """Render a canonical record back into page strings under ``profile``."""
    if record.subcategory is not None:
        category = record.subcategory[: -len(" " + F.GAME)]
    else:
        category = record.category
    return RawAppRecord(
        snapshot_id=snapshot_id,
        url=record.install_url,
        name=record.name,
        developer=record.developer_name,
        category=category,
        review_count=F.format_count(record.review_count, profile),
        rating_value=F.format_decimal(record.rating_value, profile),
        download_count=F.format_count(record.download_count, profile) + "+",
        date_modified=F.format_date(record.date_modified, profile),
        content_rating=record.content_rating.original_label,
        price_range=F.format_price_range(record.price_range, profile) if record.price_range else None,
        os_requirement=record.operating_system.raw,
        developer_kind=record.developer_kind.value.lower(),
        developer_url=record.developer_url,
    )
