import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from appkg.extract import (
    FIELD_IDS, PATTERN, PATTERN_FIELDS, SELECTOR, SELECTOR_FIELDS, ExtractionRule,
    ManifestFormatError, ManifestNotFound, RawAppRecord, RequiredFieldMissing, RuleSet,
    RuleSetError, SnapshotNotFound, apply_rules, iter_corpus, load_corpus, load_rules,
    parse_html, read_manifest,
)
from appkg.extract.dom import InvalidEncoding

from conftest import MANIFEST, RULES


def optional_rules(**overrides):
    """All eleven fields, nothing required, selectors that never match."""
    rules = []
    for f in FIELD_IDS:
        if f == "url":
            rules.append(ExtractionRule(f, SELECTOR, "@source", required=False))
        elif f in PATTERN_FIELDS:
            rules.append(ExtractionRule(f, PATTERN, r"(nomatch-\d{99})", 1, False))
        else:
            rules.append(ExtractionRule(f, SELECTOR, ".nomatch", required=False))
    by_field = {r.field: r for r in rules}
    by_field.update(overrides)
    return RuleSet(by_field.values())


def test_eleven_field_ids_split_five_five_one():
    assert len(FIELD_IDS) == 11
    assert len(SELECTOR_FIELDS) == 5 and len(PATTERN_FIELDS) == 5
    assert set(FIELD_IDS) == set(SELECTOR_FIELDS) | set(PATTERN_FIELDS) | {"url"}
    assert set(PATTERN_FIELDS) == {"download_count", "date_modified", "content_rating",
                                   "price_range", "os_requirement"}
    assert set(SELECTOR_FIELDS) == {"developer", "review_count", "category", "name",
                                    "rating_value"}


def test_rating_selector_example():
    doc_text = '<div class="score">4.5</div>'
    rules = optional_rules(rating_value=ExtractionRule("rating_value", SELECTOR, ".score"))
    raw = apply_rules(parse_html(doc_text), doc_text, rules, "https://x.test/a")
    assert raw.rating_value == "4.5"


def test_download_pattern_reattaches_plus():
    text = "<span>1,000,000+ downloads</span>"
    rules = optional_rules(download_count=ExtractionRule(
        "download_count", PATTERN, r"([0-9,]+)\+ downloads?", 1))
    raw = apply_rules(parse_html(text), text, rules, "https://x.test/a")
    assert raw.download_count == "1,000,000+"


def test_all_optional_on_empty_page():
    raw = apply_rules(parse_html(""), "", optional_rules(), "https://x.test/a", snapshot_id="s1")
    assert raw.fields() == {"url": "https://x.test/a"}
    assert raw.snapshot_id == "s1"


def test_first_match_wins_for_both_techniques():
    text = '<b class="n">first</b><b class="n">second</b> v1.0 v2.0'
    rules = optional_rules(
        name=ExtractionRule("name", SELECTOR, ".n"),
        os_requirement=ExtractionRule("os_requirement", PATTERN, r"v([0-9.]+)", 1))
    raw = apply_rules(parse_html(text), text, rules, "https://x.test/a")
    assert (raw.name, raw.os_requirement) == ("first", "1.0")


def test_required_field_missing():
    rules = optional_rules(name=ExtractionRule("name", SELECTOR, ".title", required=True))
    with pytest.raises(RequiredFieldMissing) as err:
        apply_rules(parse_html("<p>x</p>"), "<p>x</p>", rules, "https://x.test/a", snapshot_id="s9")
    assert err.value.code == "REQUIRED_FIELD_MISSING" and err.value.field == "name"


@pytest.mark.parametrize("kwargs,message", [
    (dict(field="colour", technique=SELECTOR, expression=".c"), "unknown field"),
    (dict(field="name", technique="XPATH", expression="//h1"), "technique"),
    (dict(field="url", technique=PATTERN, expression="(x)", capture_group=1), "@source"),
    (dict(field="name", technique=SELECTOR, expression="@source"), "reserved"),
    (dict(field="name", technique=SELECTOR, expression="div >"), "name"),
    (dict(field="download_count", technique=PATTERN, expression="([0-9]+", capture_group=1), "bad pattern"),
    (dict(field="download_count", technique=PATTERN, expression="([0-9]+)", capture_group=2), "group"),
    (dict(field="download_count", technique=PATTERN, expression="([0-9]+)", capture_group=0), "group"),
])
def test_invalid_rules_rejected(kwargs, message):
    with pytest.raises(RuleSetError, match=message):
        ExtractionRule(**kwargs)


def test_rule_set_must_cover_all_fields():
    rules = list(optional_rules())
    with pytest.raises(RuleSetError, match="does not cover"):
        RuleSet(rules[:-1])
    with pytest.raises(RuleSetError, match="duplicate"):
        RuleSet(rules + rules[:1])


def test_fixture_rule_set_shape(fixture_rules):
    assert sorted(fixture_rules.by_technique(PATTERN)) == sorted(PATTERN_FIELDS)
    assert sorted(fixture_rules.by_technique(SELECTOR)) == sorted(SELECTOR_FIELDS)


def test_rules_round_trip_through_records(fixture_rules):
    assert RuleSet.from_records(fixture_rules.to_records()).to_records() == fixture_rules.to_records()


def test_load_rules_errors(tmp_path):
    bad = tmp_path / "rules.jsonl"
    bad.write_text('{"field": "name", "technique": "SELECTOR"\n')
    with pytest.raises(RuleSetError):
        load_rules(bad)
    with pytest.raises(OSError):
        load_rules(tmp_path / "absent.jsonl")


def test_raw_record_json_round_trip():
    raw = RawAppRecord("s1", "https://x.test/a", name="A", price_range=None, developer_kind="person")
    assert RawAppRecord.from_json(json.loads(json.dumps(raw.to_json()))) == raw
    with pytest.raises(ValueError):
        RawAppRecord.from_json({"snapshot_id": "s", "url": "u", "colour": "red"})


@settings(max_examples=100, deadline=None)
@given(st.text(alphabet="<>/abp \"'=.0123456789,+", max_size=60))
def test_apply_rules_is_deterministic(text):
    shipped = load_rules(RULES)
    rules = optional_rules(**{f: shipped[f] for f in ("name", "download_count", "rating_value")})
    rules = RuleSet(ExtractionRule(r.field, r.technique, r.expression, r.capture_group, False)
                    for r in rules)
    first = apply_rules(parse_html(text), text, rules, "https://x.test/a")
    second = apply_rules(parse_html(text), text, rules, "https://x.test/a")
    assert first == second


# -- corpus ----------------------------------------------------------------------

def write_manifest(tmp_path, rows, pages=None):
    for name, body in (pages or {}).items():
        (tmp_path / name).write_bytes(body)
    path = tmp_path / "manifest.tsv"
    path.write_text("".join(r + "\n" for r in rows), encoding="utf-8")
    return path


def test_empty_manifest(tmp_path):
    assert load_corpus(write_manifest(tmp_path, ["# header only", ""])) == []


def test_manifest_order_preserved(tmp_path):
    pages = {f"{n}.html": f"<p>{n}</p>".encode() for n in "abc"}
    path = write_manifest(tmp_path, [f"{n}\thttps://x.test/{n}\t{n}.html" for n in "cab"], pages)
    entries = load_corpus(path)
    assert [url for url, _, _ in entries] == [f"https://x.test/{n}" for n in "cab"]
    assert [text for _, _, text in entries] == ["<p>c</p>", "<p>a</p>", "<p>b</p>"]


def test_manifest_not_found(tmp_path):
    with pytest.raises(ManifestNotFound) as err:
        load_corpus(tmp_path / "nope.tsv")
    assert err.value.code == "MANIFEST_NOT_FOUND"


def test_snapshot_not_found(tmp_path):
    path = write_manifest(tmp_path, ["a\thttps://x.test/a\tmissing.html"])
    with pytest.raises(SnapshotNotFound) as err:
        load_corpus(path)
    assert err.value.code == "SNAPSHOT_NOT_FOUND" and err.value.row.snapshot_id == "a"


def test_invalid_encoding_row(tmp_path):
    path = write_manifest(tmp_path, ["a\thttps://x.test/a\ta.html"], {"a.html": b"\xff\xfe<p>"})
    with pytest.raises(InvalidEncoding):
        load_corpus(path)
    ((row, err),) = list(iter_corpus(path))
    assert isinstance(err, InvalidEncoding) and row.lineno == 1


@pytest.mark.parametrize("row", [
    "only\ttwo",
    "a\thttps://x.test/a\ta.html\talien",
    "a\t\ta.html",
    "a\thttps://x.test/a\ta.html\tperson\thttps://d\textra",
])
def test_malformed_manifest_rows(tmp_path, row):
    with pytest.raises(ManifestFormatError):
        read_manifest(write_manifest(tmp_path, [row]))


def test_duplicate_snapshot_ids(tmp_path):
    with pytest.raises(ManifestFormatError, match="duplicate"):
        read_manifest(write_manifest(tmp_path, ["a\tu:1\tx", "a\tu:2\ty"]))


def test_fixture_corpus_loads_cleanly():
    entries = load_corpus(MANIFEST)
    assert len(entries) == 60
    assert all(not isinstance(e, Exception) for _, e in iter_corpus(MANIFEST))


def test_fixture_extraction_recovers_planted_strings(fixture_raw, injected):
    assert len(fixture_raw) == len(injected) == 60
    for raw, want in zip(fixture_raw, injected):
        got = raw.to_json()
        for key, value in want.items():
            assert got.get(key) == value, (want["snapshot_id"], key)


def test_fixture_extraction_matches_golden(fixture_raw, golden_raw):
    assert fixture_raw == golden_raw
