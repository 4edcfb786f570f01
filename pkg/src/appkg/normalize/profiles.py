"""Locale profiles: how a store page renders numbers, dates and ratings."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, FrozenSet, Mapping, Optional, Tuple, Union

from appkg.errors import AppKGError

MDY_LONG = "MDY_LONG"    # May 7, 2019
DMY_LONG = "DMY_LONG"    # 7 May 2019
ISO = "ISO"              # 2019-05-07
DATE_PATTERNS = (MDY_LONG, DMY_LONG, ISO)

ESRB = "ESRB"
PEGI = "PEGI"
RATING_SYSTEMS = (ESRB, PEGI)

DEFAULT_PROFILE = "us"


class UnknownProfile(AppKGError):
    code = "UNKNOWN_PROFILE"


class ProfileError(AppKGError):
    code = "INVALID_PROFILE"


@dataclass(frozen=True)
class LocaleProfile:
    id: str
    decimal_separator: str = "."
    thousands_separator: str = ","
    date_pattern: str = MDY_LONG
    rating_system: str = ESRB
    currency_symbols: FrozenSet[Tuple[str, str]] = frozenset({("$", "USD")})

    def __post_init__(self):
        if not self.id:
            raise ProfileError("profile id must be non-empty")
        if self.decimal_separator not in (".", ","):
            raise ProfileError(f"{self.id}: decimal separator must be '.' or ','")
        if self.thousands_separator not in (",", ".", " ", ""):
            raise ProfileError(f"{self.id}: thousands separator must be ',', '.', ' ' or empty")
        if self.decimal_separator == self.thousands_separator:
            raise ProfileError(f"{self.id}: decimal and thousands separators coincide")
        if self.date_pattern not in DATE_PATTERNS:
            raise ProfileError(f"{self.id}: unknown date pattern {self.date_pattern!r}")
        if self.rating_system not in RATING_SYSTEMS:
            raise ProfileError(f"{self.id}: unknown rating system {self.rating_system!r}")
        object.__setattr__(self, "currency_symbols", frozenset(
            (sym, code.upper()) for sym, code in self.currency_symbols))

    def currency_for(self, symbol: str) -> Optional[str]:
        for sym, code in self.currency_symbols:
            if sym == symbol:
                return code
        # an ISO code written out literally ("USD 1.00") is accepted when the profile knows it
        codes = {code for _, code in self.currency_symbols}
        return symbol.upper() if symbol.upper() in codes else None

    def symbol_for(self, code: str) -> str:
        return min(sym for sym, c in self.currency_symbols if c == code)

    @property
    def grouping_chars(self) -> str:
        if self.thousands_separator == " ":
            return " \u00a0\u202f"
        return self.thousands_separator

    def to_json(self) -> dict:
        return {
            "decimal_separator": self.decimal_separator,
            "thousands_separator": self.thousands_separator,
            "date_pattern": self.date_pattern,
            "rating_system": self.rating_system,
            "currency_symbols": dict(sorted(self.currency_symbols)),
        }

    @classmethod
    def from_json(cls, profile_id: str, data: Mapping) -> "LocaleProfile":
        data = dict(data)
        symbols = data.pop("currency_symbols", {"$": "USD"})
        try:
            return cls(id=profile_id, currency_symbols=frozenset(symbols.items()), **data)
        except TypeError as exc:
            raise ProfileError(f"{profile_id}: {exc}") from exc


US = LocaleProfile("us")

BUILTIN_PROFILES: Dict[str, LocaleProfile] = {US.id: US}


SHIPPED_REGISTRY = Path(__file__).resolve().parent.parent / "data" / "profiles.json"


def _read_registry(path) -> Dict[str, LocaleProfile]:
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise ProfileError(f"{path}: registry must map profile ids to fields")
    return {pid: LocaleProfile.from_json(pid, fields) for pid, fields in raw.items()}


def load_profiles(path: Union[str, Path, None] = None, shipped: bool = True) -> Dict[str, LocaleProfile]:
    """Built-in ``us`` plus the shipped registry, extended (or overridden) by
    a JSON registry file mapping profile id -> fields."""
    registry = dict(BUILTIN_PROFILES)
    if shipped:
        registry.update(_read_registry(SHIPPED_REGISTRY))
    if path is not None:
        registry.update(_read_registry(path))
    return registry


def get_profile(profile_id: str, registry: Optional[Mapping[str, LocaleProfile]] = None) -> LocaleProfile:
    registry = BUILTIN_PROFILES if registry is None else registry
    try:
        return registry[profile_id]
    except KeyError:
        raise UnknownProfile(f"{profile_id!r} (known: {', '.join(sorted(registry))})") from None
