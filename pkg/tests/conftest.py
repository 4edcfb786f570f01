import json
from pathlib import Path

import pytest

from appkg.extract import RawAppRecord, load_corpus, load_rules
from appkg.kschema import build_graph
from appkg.normalize import US, normalize_record

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS = FIXTURES / "corpus"
GOLDEN = FIXTURES / "golden"
MANIFEST = CORPUS / "manifest.tsv"
RULES = CORPUS / "rules.jsonl"


@pytest.fixture(scope="session")
def fixture_rules():
    return load_rules(RULES)


@pytest.fixture(scope="session")
def fixture_raw(fixture_rules):
    return [entry.extract(fixture_rules) for entry in load_corpus(MANIFEST)]


@pytest.fixture(scope="session")
def injected():
    with open(CORPUS / "injected.jsonl", encoding="utf-8") as fh:
        return [json.loads(line) for line in fh]


@pytest.fixture(scope="session")
def fixture_records(fixture_raw):
    return [normalize_record(raw, US) for raw in fixture_raw]


@pytest.fixture(scope="session")
def fixture_graph(fixture_records):
    return build_graph(fixture_records)


@pytest.fixture(scope="session")
def golden_raw():
    with open(GOLDEN / "raw.jsonl", encoding="utf-8") as fh:
        return [RawAppRecord.from_json(json.loads(line)) for line in fh]
