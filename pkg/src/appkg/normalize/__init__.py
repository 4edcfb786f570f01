"""Locale-aware conversion of raw page strings into typed app records."""

from appkg.normalize.fields import (
    CONTENT_RATING_TABLE, GAME, GAME_SUBCATEGORIES, NUMERIC, AgeRating, ContentRating,
    NormalizeError, OsRequirement, PriceRange, normalize_content_rating, parse_date,
    parse_download_count, parse_os_requirement, parse_price_range, parse_rating_value,
    parse_review_count, split_category,
)
from appkg.normalize.profiles import (
    BUILTIN_PROFILES, DEFAULT_PROFILE, DMY_LONG, ESRB, ISO, MDY_LONG, PEGI, US,
    LocaleProfile, ProfileError, UnknownProfile, get_profile, load_profiles,
)
from appkg.normalize.records import (
    DERIVED_FIELDS, FIELD_TARGETS, CanonicalAppRecord, DeveloperKind, FieldError,
    RecordRejected, is_absolute_url, normalize_record, package_id, to_raw,
)

__all__ = [
    "AgeRating", "BUILTIN_PROFILES", "CONTENT_RATING_TABLE", "CanonicalAppRecord",
    "ContentRating", "DEFAULT_PROFILE", "DERIVED_FIELDS", "DMY_LONG", "DeveloperKind",
    "ESRB", "FIELD_TARGETS", "FieldError", "GAME", "GAME_SUBCATEGORIES", "ISO",
    "LocaleProfile", "MDY_LONG", "NUMERIC", "NormalizeError", "OsRequirement", "PEGI",
    "PriceRange", "ProfileError", "RecordRejected", "US", "UnknownProfile", "get_profile",
    "is_absolute_url", "load_profiles", "normalize_content_rating", "normalize_record",
    "package_id", "parse_date", "parse_download_count", "parse_os_requirement",
    "parse_price_range", "parse_rating_value", "parse_review_count", "split_category",
    "to_raw",
]
