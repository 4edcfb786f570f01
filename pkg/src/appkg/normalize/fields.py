"""Per-field parsers turning raw page strings into typed values."""

from __future__ import annotations

import calendar
import datetime as dt
import enum
import re
from dataclasses import dataclass
from decimal import Decimal
from typing import Optional, Tuple

from appkg.errors import AppKGError
from appkg.normalize.profiles import DMY_LONG, ISO, MDY_LONG, LocaleProfile

RATING_MIN = Decimal(0)
RATING_MAX = Decimal(5)


class NormalizeError(AppKGError):
    code = "NORMALIZE_ERROR"

    def __init__(self, code: str, message: str = ""):
        super().__init__(message, code=code)


def _fail(code, raw, what):
    raise NormalizeError(code, f"{what}: {raw!r}")


# -- numbers -----------------------------------------------------------------

_DIGITS = re.compile(r"[0-9]+")


def _parse_count(raw: str, profile: LocaleProfile, bucket: bool) -> int:
    if raw is None:
        _fail("UNPARSEABLE_NUMBER", raw, "missing count")
    text = raw.strip()
    if bucket and text.endswith("+"):
        text = text[:-1]
    for ch in profile.grouping_chars:
        text = text.replace(ch, "")
    if not _DIGITS.fullmatch(text):
        _fail("UNPARSEABLE_NUMBER", raw, "not a count")
    return int(text)


def parse_download_count(raw: str, profile: LocaleProfile) -> int:
    """Store install bucket ("1,000,000+") as its integer lower bound."""
    return _parse_count(raw, profile, bucket=True)


def parse_review_count(raw: str, profile: LocaleProfile) -> int:
    return _parse_count(raw, profile, bucket=False)


def parse_decimal(raw: str, profile: LocaleProfile) -> Decimal:
    sep = re.escape(profile.decimal_separator)
    text = (raw or "").strip()
    if not re.fullmatch(rf"[0-9]+(?:{sep}[0-9]+)?", text):
        _fail("UNPARSEABLE_NUMBER", raw, "not a decimal")
    return Decimal(text.replace(profile.decimal_separator, "."))


def parse_rating_value(raw: str, profile: LocaleProfile) -> Decimal:
    value = parse_decimal(raw, profile)
    if not RATING_MIN <= value <= RATING_MAX:
        _fail("OUT_OF_RANGE", raw, f"rating outside [{RATING_MIN}, {RATING_MAX}]")
    return value


def format_count(value: int, profile: LocaleProfile) -> str:
    return f"{value:,}".replace(",", profile.thousands_separator)


def format_decimal(value: Decimal, profile: LocaleProfile, grouped: bool = False) -> str:
    text = format(value, "f")
    whole, _, frac = text.partition(".")
    if grouped:
        whole = format_count(int(whole), profile)
    return whole + (profile.decimal_separator + frac if frac else "")


# -- dates -------------------------------------------------------------------

_MONTHS = {name.lower(): i for i, name in enumerate(calendar.month_name) if name}
_MONTHS.update({name.lower(): i for i, name in enumerate(calendar.month_abbr) if name})

_DATE_FORMS = {
    MDY_LONG: re.compile(r"(?P<month>[A-Za-z]+)\.?\s+(?P<day>[0-9]{1,2}),?\s+(?P<year>[0-9]{4})"),
    DMY_LONG: re.compile(r"(?P<day>[0-9]{1,2})\.?\s+(?P<month>[A-Za-z]+)\.?,?\s+(?P<year>[0-9]{4})"),
    ISO: re.compile(r"(?P<year>[0-9]{4})-(?P<month>[0-9]{2})-(?P<day>[0-9]{2})"),
}


def parse_date(raw: str, profile: LocaleProfile) -> dt.date:
    m = _DATE_FORMS[profile.date_pattern].fullmatch((raw or "").strip())
    if m is None:
        _fail("UNPARSEABLE_DATE", raw, f"expected {profile.date_pattern} date")
    month = m.group("month")
    if month.isdigit():
        month_no = int(month)
    else:
        month_no = _MONTHS.get(month.lower())
        if month_no is None:
            _fail("UNPARSEABLE_DATE", raw, "unknown month name")
    try:
        return dt.date(int(m.group("year")), month_no, int(m.group("day")))
    except ValueError:
        _fail("INVALID_DATE", raw, "no such calendar date")


def format_date(value: dt.date, profile: LocaleProfile) -> str:
    month = calendar.month_name[value.month]
    if profile.date_pattern == MDY_LONG:
        return f"{month} {value.day}, {value.year:04d}"
    if profile.date_pattern == DMY_LONG:
        return f"{value.day} {month} {value.year:04d}"
    return value.isoformat()


# -- content rating ----------------------------------------------------------

class AgeRating(enum.Enum):
    AGE_ALL = "AGE_ALL"
    AGE_3 = "AGE_3"
    AGE_7 = "AGE_7"
    AGE_12 = "AGE_12"
    AGE_13 = "AGE_13"
    AGE_16 = "AGE_16"
    AGE_17 = "AGE_17"
    AGE_18 = "AGE_18"
    UNRATED = "UNRATED"


NUMERIC = "NUMERIC"

CONTENT_RATING_TABLE = {
    "3+": (AgeRating.AGE_3, NUMERIC),
    "7+": (AgeRating.AGE_7, NUMERIC),
    "12+": (AgeRating.AGE_12, NUMERIC),
    "16+": (AgeRating.AGE_16, NUMERIC),
    "18+": (AgeRating.AGE_18, NUMERIC),
    "everyone": (AgeRating.AGE_ALL, "ESRB"),
    "everyone 10+": (AgeRating.AGE_12, "ESRB"),
    "teen": (AgeRating.AGE_13, "ESRB"),
    "mature 17+": (AgeRating.AGE_17, "ESRB"),
    "adults only 18+": (AgeRating.AGE_18, "ESRB"),
    "pegi 3": (AgeRating.AGE_3, "PEGI"),
    "pegi 7": (AgeRating.AGE_7, "PEGI"),
    "pegi 12": (AgeRating.AGE_12, "PEGI"),
    "pegi 16": (AgeRating.AGE_16, "PEGI"),
    "pegi 18": (AgeRating.AGE_18, "PEGI"),
}


@dataclass(frozen=True)
class ContentRating:
    canonical: AgeRating
    original_label: str
    system: str


def _label_key(raw: str) -> str:
    key = " ".join(raw.split()).casefold()
    # the store prefixes numeric labels ("Rated for 3+")
    if key.startswith("rated for "):
        key = key[len("rated for "):]
    return key


def normalize_content_rating(raw: str, profile: LocaleProfile) -> ContentRating:
    """Map any store label onto one age-floor scale; unknown labels are UNRATED."""
    hit = CONTENT_RATING_TABLE.get(_label_key(raw or ""))
    if hit is None:
        return ContentRating(AgeRating.UNRATED, raw, profile.rating_system)
    return ContentRating(hit[0], raw, hit[1])


# -- operating system ---------------------------------------------------------

VARIES_WITH_DEVICE = "varies with device"
_VERSION = re.compile(r"([0-9]+)(?:\.([0-9]+))?")


@dataclass(frozen=True)
class OsRequirement:
    raw: str
    version: Optional[Tuple[int, int]]


def parse_os_requirement(raw: str) -> OsRequirement:
    text = (raw or "").strip()
    if " ".join(text.split()).casefold() == VARIES_WITH_DEVICE:
        return OsRequirement(raw, None)
    m = _VERSION.search(text)
    if m is None:
        _fail("UNPARSEABLE_VERSION", raw, "no version number")
    return OsRequirement(raw, (int(m.group(1)), int(m.group(2) or 0)))


# -- prices ------------------------------------------------------------------

@dataclass(frozen=True)
class PriceRange:
    low: Decimal
    high: Decimal
    currency: str

    def __post_init__(self):
        if self.low < 0 or self.high < 0:
            raise ValueError("prices are non-negative")
        if self.low > self.high:
            raise ValueError("low > high")


_PER_ITEM = re.compile(r"\s*per\s+item\s*$", re.IGNORECASE)
_RANGE_DASH = re.compile(r"\s*[-\u2013\u2014]\s*")


def _price_part(part: str, profile: LocaleProfile) -> Tuple[Decimal, str]:
    grp = re.escape(profile.grouping_chars) if profile.grouping_chars else ""
    dec = re.escape(profile.decimal_separator)
    num = rf"[0-9](?:[0-9{grp}]*[0-9])?(?:{dec}[0-9]+)?"
    m = re.fullmatch(rf"(?P<pre>[^0-9\s]*)\s*(?P<num>{num})\s*(?P<post>[^0-9\s]*)", part)
    if m is None:
        _fail("UNPARSEABLE_PRICE", part, "not a price")
    symbol = m.group("pre") or m.group("post")
    if not symbol or (m.group("pre") and m.group("post")):
        _fail("UNKNOWN_CURRENCY", part, "no single currency marker")
    code = profile.currency_for(symbol)
    if code is None:
        _fail("UNKNOWN_CURRENCY", part, f"symbol {symbol!r} not in profile {profile.id}")
    digits = m.group("num")
    for ch in profile.grouping_chars:
        digits = digits.replace(ch, "")
    return Decimal(digits.replace(profile.decimal_separator, ".")), code


def parse_price_range(raw: Optional[str], profile: LocaleProfile) -> Optional[PriceRange]:
    """"$0.99 - $99.99 per item" -> (0.99, 99.99, USD); empty -> None."""
    if raw is None or not raw.strip():
        return None
    text = _PER_ITEM.sub("", raw.strip())
    parts = _RANGE_DASH.split(text)
    if len(parts) > 2 or not all(parts):
        _fail("UNPARSEABLE_PRICE", raw, "expected a price or a low - high range")
    prices = [_price_part(p, profile) for p in parts]
    currencies = {code for _, code in prices}
    if len(currencies) != 1:
        _fail("UNPARSEABLE_PRICE", raw, "mixed currencies")
    low, high = prices[0][0], prices[-1][0]
    if low > high:
        _fail("RANGE_INVERTED", raw, "low price exceeds high price")
    return PriceRange(low, high, currencies.pop())


def format_price_range(value: PriceRange, profile: LocaleProfile) -> str:
    symbol = profile.symbol_for(value.currency)
    low = symbol + format_decimal(value.low, profile, grouped=True)
    if value.low == value.high:
        return low
    return f"{low} - {symbol}{format_decimal(value.high, profile, grouped=True)} per item"


# -- categories --------------------------------------------------------------

GAME = "Game"
GAME_SUBCATEGORIES = (
    "action", "adventure", "arcade", "board", "card", "casino", "casual",
    "educational", "music", "puzzle", "racing", "role playing", "simulation",
    "sports", "strategy", "trivia", "word",
)


def split_category(raw: str) -> Tuple[str, Optional[str]]:
    """Game subcategory labels fold under the single "Game" category."""
    key = " ".join(raw.split()).casefold()
    if key in GAME_SUBCATEGORIES:
        return GAME, " ".join(w.capitalize() for w in key.split()) + " " + GAME
    return raw.strip(), None
