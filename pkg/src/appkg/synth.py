"""Synthetic app records and graphs for property tests, demos and scale runs."""

from __future__ import annotations

import datetime as dt
import random
from decimal import Decimal
from typing import Iterator, List, Optional

from appkg.extract.rules import RawAppRecord
from appkg.kschema.mapping import DEFAULT_BASE, build_graph
from appkg.kschema.terms import Graph
from appkg.normalize.fields import (
    CONTENT_RATING_TABLE, GAME, GAME_SUBCATEGORIES, PriceRange, normalize_content_rating,
    parse_os_requirement, split_category,
)
from appkg.normalize.profiles import US, LocaleProfile
from appkg.normalize.records import CanonicalAppRecord, DeveloperKind, to_raw

# non-game store categories; with the 17 game subcategories, 48 labels in all
# (the store's non-game "Sports" is left out: it would fold under Game)
OTHER_CATEGORIES = (
    "Art & Design", "Auto & Vehicles", "Beauty", "Books & Reference", "Business", "Comics",
    "Communication", "Dating", "Education", "Entertainment", "Events", "Finance",
    "Food & Drink", "Health & Fitness", "House & Home", "Libraries & Demo", "Lifestyle",
    "Maps & Navigation", "Medical", "Music & Audio", "News & Magazines", "Parenting",
    "Personalization", "Photography", "Productivity", "Shopping", "Social", "Tools",
    "Travel & Local", "Video Players & Editors", "Weather",
)
GAME_LABELS = tuple(" ".join(w.capitalize() for w in s.split()) for s in GAME_SUBCATEGORIES)
CATEGORY_LABELS = GAME_LABELS + OTHER_CATEGORIES
GAME_SHARE = Decimal("0.1666")

BUCKETS = tuple(m * 10 ** e for e in range(0, 10) for m in (1, 5))
CONTENT_LABELS = tuple(sorted(CONTENT_RATING_TABLE)) + ("Fantasy Violence", "Unrated")
OS_LABELS = ("4.1 and up", "4.4 and up", "5.0 and up", "6.0 and up", "8.0", "Varies with device")
RATINGS = ("3.0", "3.5", "4.0", "4.5", "4.50", "4.7", "5.0", "0.0")
CURRENCIES = ("USD",)

# strings that exercise every escape the Turtle writer knows about
AWKWARD = ('Say "hi"', "back\\slash", "two\nlines", "tab\there", "cr\rhere", "caf\u00e9",
           "\u65e5\u672c", "emoji \U0001F600", "a # not a comment", "semi; colon, comma.")

_WORDS = ("Nova", "Pixel", "Quick", "Atlas", "Echo", "Orbit", "Maple", "Zen", "Prism", "Drift")


def _text(rng: random.Random, awkward: bool) -> str:
    if awkward and rng.random() < 0.3:
        return rng.choice(AWKWARD)
    return f"{rng.choice(_WORDS)} {rng.choice(_WORDS)}"


def random_record(rng: random.Random, index: int, *, awkward: bool = False,
                  category: Optional[str] = None, offers: Optional[bool] = None,
                  developer_url: Optional[bool] = None) -> CanonicalAppRecord:
    """A valid canonical record whose package id is unique per ``index``."""
    cat, sub = split_category(category or rng.choice(CATEGORY_LABELS))
    if offers is None:
        offers = rng.random() < 0.35
    if developer_url is None:
        developer_url = rng.random() < 0.5
    price = None
    if offers:
        low = Decimal(rng.randrange(0, 5000)) / 100
        high = low + Decimal(rng.randrange(0, 20000)) / 100
        price = PriceRange(low, high, rng.choice(CURRENCIES))
    label = rng.choice(CONTENT_LABELS)
    if awkward and rng.random() < 0.1:
        label = rng.choice(AWKWARD)
    pkg = f"com.synth.app{index}"
    if awkward and rng.random() < 0.1:
        pkg += "/x y"     # forces a percent-encoded IRI
    return CanonicalAppRecord(
        app_id=pkg,
        name=_text(rng, awkward),
        developer_name=_text(rng, awkward),
        developer_kind=rng.choice((DeveloperKind.PERSON, DeveloperKind.ORGANIZATION)),
        developer_url=f"https://dev.example.com/d{rng.randrange(1000)}" if developer_url else None,
        category=cat,
        subcategory=sub,
        review_count=rng.randrange(0, 10 ** rng.randrange(1, 8)),
        rating_value=Decimal(rng.choice(RATINGS)),
        download_count=rng.choice(BUCKETS),
        date_modified=dt.date(2012, 1, 1) + dt.timedelta(days=rng.randrange(0, 3000)),
        content_rating=normalize_content_rating(label, US),
        operating_system=parse_os_requirement(rng.choice(OS_LABELS)),
        install_url="https://play.google.com/store/apps/details?id=" + pkg.replace(" ", "+"),
        price_range=price,
    )


def random_records(rng: random.Random, n: int, **kw) -> List[CanonicalAppRecord]:
    return [random_record(rng, i, **kw) for i in range(n)]


def random_graph(rng: random.Random, max_apps: int = 50, awkward: bool = True,
                 base: str = DEFAULT_BASE) -> Graph:
    """A schema-conforming graph with 0..max_apps apps."""
    n = rng.randint(0, max_apps)
    return build_graph(random_records(rng, n, awkward=awkward), base)


def store_scale_raw(n: int = 50_000, seed: int = 0,
                    profile: LocaleProfile = US) -> Iterator[RawAppRecord]:
    """``n`` raw page records over all 48 category labels, games at 16.66%.

    Non-game categories get skewed (1/rank) weights so the distribution is
    uneven, as in a real store.
    """
    rng = random.Random(seed)
    games = int((GAME_SHARE * n).to_integral_value())
    weights = [1 / (r + 1) for r in range(len(OTHER_CATEGORIES))]
    labels = [GAME_LABELS[i % len(GAME_LABELS)] for i in range(games)]
    # every label at least once when n allows it
    labels += list(OTHER_CATEGORIES[: max(0, min(len(OTHER_CATEGORIES), n - games))])
    labels += rng.choices(OTHER_CATEGORIES, weights, k=n - len(labels))
    rng.shuffle(labels)
    for i, label in enumerate(labels):
        record = random_record(rng, i, category=label)
        yield to_raw(record, profile, snapshot_id=f"syn{i:06d}")


__all__ = [
    "CATEGORY_LABELS", "GAME", "GAME_LABELS", "GAME_SHARE", "OTHER_CATEGORIES",
    "store_scale_raw", "random_graph", "random_record", "random_records",
]
