"""Command-line entry point: extract, build, validate, query, stats.

Results go to stdout as tab-separated, LF-terminated rows; diagnostics go to
stderr.  Exit status: 0 ok, 1 input or parse error, 2 validation failures or
rejected records, 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import List, Optional

from appkg import __version__
from appkg.errors import AppKGError
from appkg.extract import RawAppRecord, iter_corpus, load_rules
from appkg.kschema import DEFAULT_BASE, DEFAULT_PREFIXES, IRI, Graph, Literal, TermError, validate
from appkg.kschema.mapping import blank_count, mint_app_iri, record_to_triples, schema_header
from appkg.normalize import DEFAULT_PROFILE, RecordRejected, get_profile, load_profiles, normalize_record
from appkg.store import ASC, DESC, TripleStore
from appkg.turtle import read_turtle, serialize

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INVALID = 2
EXIT_USAGE = 3

PROFILE_ENV = "APPKG_PROFILE"
CATEGORY = "schema:applicationCategory"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _err(*parts) -> None:
    print(*parts, sep="\t", file=sys.stderr)


def _write_lines(lines: List[str], out) -> None:
    out.write("".join(line + "\n" for line in lines))


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


# -- extract

def cmd_extract(manifest, rules_path, out) -> int:
    try:
        rules = load_rules(rules_path)
    except (OSError, AppKGError) as exc:
        _err("error", f"rules: {exc}")
        return EXIT_INPUT

    lines, failed = [], 0
    try:
        for row, entry in iter_corpus(manifest):
            if isinstance(entry, AppKGError):
                failed += 1
                _err(entry.code, row.snapshot_id, entry.detail)
                continue
            try:
                raw = entry.extract(rules)
            except AppKGError as exc:
                failed += 1
                _err(exc.code, row.snapshot_id, exc.detail)
                continue
            lines.append(json.dumps(raw.to_json(), ensure_ascii=False, sort_keys=True))
    except (OSError, AppKGError) as exc:
        _err("error", f"manifest: {exc}")
        return EXIT_INPUT

    _atomic_write(Path(out), "".join(line + "\n" for line in lines))
    return EXIT_INPUT if failed else EXIT_OK


# -- build

def read_raw_records(path) -> List[RawAppRecord]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                records.append(RawAppRecord.from_json(json.loads(line)))
            except (ValueError, TypeError) as exc:
                raise AppKGError(f"{path}:{lineno}: {exc}", code="BAD_RECORD") from exc
    return records


def resolve_profile(flag: Optional[str], registry_path: Optional[str]):
    profile_id = flag or os.environ.get(PROFILE_ENV) or DEFAULT_PROFILE
    return get_profile(profile_id, load_profiles(registry_path))


def cmd_build(records_path, out, profile_id=None, base=DEFAULT_BASE, profiles_path=None) -> int:
    try:
        profile = resolve_profile(profile_id, profiles_path)
    except AppKGError as exc:
        _err(exc.code, exc.detail)
        return EXIT_USAGE if exc.code == "UNKNOWN_PROFILE" else EXIT_INPUT
    except (OSError, ValueError) as exc:
        _err("error", f"profiles: {exc}")
        return EXIT_INPUT
    try:
        raws = read_raw_records(records_path)
    except (OSError, AppKGError) as exc:
        _err(*_describe(exc))
        return EXIT_INPUT

    graph = Graph(schema_header())
    seen = {}
    blank = 0
    rejected = 0
    for raw in raws:
        try:
            record = normalize_record(raw, profile)
            app = mint_app_iri(record, base)
        except RecordRejected as exc:
            rejected += 1
            for e in exc.errors:
                _err("REJECTED", raw.snapshot_id, e.code, e.field, e.detail)
            continue
        except TermError as exc:
            rejected += 1
            _err("REJECTED", raw.snapshot_id, exc.code, "url", exc.detail)
            continue
        if app in seen:
            rejected += 1
            _err("REJECTED", raw.snapshot_id, "DUPLICATE_APP", "url", f"{app} already built from {seen[app]}")
            continue
        seen[app] = raw.snapshot_id
        triples = record_to_triples(record, base, first_blank=blank)
        blank += blank_count(record)
        graph.update(triples)

    _atomic_write(Path(out), serialize(graph))
    return EXIT_INVALID if rejected else EXIT_OK


# -- validate / query

def _describe(exc):
    if isinstance(exc, AppKGError):
        return exc.code, exc.detail
    return "error", str(exc)


def load_graph(path) -> Graph:
    return read_turtle(path)


def cmd_validate(ttl) -> int:
    try:
        graph = load_graph(ttl)
    except (OSError, AppKGError) as exc:
        _err(*_describe(exc))
        return EXIT_INPUT
    report = validate(graph)
    _write_lines(report.lines(), sys.stdout)
    return EXIT_OK if report.ok else EXIT_INVALID


def resolve_iri(text: str, prefixes) -> IRI:
    """``<iri>``, ``prefix:local`` (declared or built-in prefix) or an absolute IRI."""
    if text.startswith("<") and text.endswith(">"):
        return IRI(text[1:-1])
    prefix, sep, local = text.partition(":")
    if sep:
        ns = prefixes.get(prefix, DEFAULT_PREFIXES.get(prefix))
        if ns is not None:
            return IRI(ns + local)
    try:
        return IRI(text)
    except TermError:
        raise UsageError(f"cannot resolve {text!r} to an IRI") from None


def format_value(term) -> str:
    return term.lexical if isinstance(term, Literal) else str(term)


def run_query(store: TripleStore, prefixes, args) -> List[str]:
    if args.top:
        pred = resolve_iri(args.top, prefixes)
        rows = store.top_k_by_numeric(pred, args.k, ASC if args.asc else DESC)
        return [f"{s}\t{v}" for s, v in rows]
    if args.peers:
        subject = resolve_iri(args.peers, prefixes)
        pred = resolve_iri(args.by, prefixes)
        return [str(s) for s in store.equal_value_peers(subject, pred)]
    pred = resolve_iri(args.group, prefixes)
    return [f"{format_value(v)}\t{n}\t{share}" for v, n, share in store.group_shares(pred)]


def cmd_query(ttl, args) -> int:
    if args.k is not None and not args.top:
        raise UsageError("--k only applies to --top")
    if args.asc and not args.top:
        raise UsageError("--asc only applies to --top")
    if bool(args.by) != bool(args.peers):
        raise UsageError("--peers and --by go together")
    if args.top and args.k is None:
        args.k = 10
    if args.k is not None and args.k < 1:
        raise UsageError("--k must be positive")
    try:
        graph = load_graph(ttl)
    except (OSError, AppKGError) as exc:
        _err(*_describe(exc))
        return EXIT_INPUT
    store = TripleStore.build(graph)
    try:
        lines = run_query(store, graph.prefixes, args)
    except AppKGError as exc:
        _err(exc.code, exc.detail)
        return EXIT_INVALID if exc.code == "VALUE_NOT_FOUND" else EXIT_USAGE
    _write_lines(lines, sys.stdout)
    return EXIT_OK


# -- argument parsing

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="appkg", description="App-store metadata to RDF knowledge graph toolkit.")
    parser.add_argument("--version", action="version", version=f"appkg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("extract", help="apply a rule set to a snapshot corpus")
    p.add_argument("manifest", help="corpus manifest (TSV)")
    p.add_argument("rules", help="rule set (JSON lines)")
    p.add_argument("-o", "--out", required=True, help="raw records output (JSON lines)")

    p = sub.add_parser("build", help="normalize raw records and write Turtle")
    p.add_argument("records", help="raw records from extract")
    p.add_argument("-o", "--out", required=True, help="Turtle output path")
    p.add_argument("--profile", help=f"locale profile id (default ${PROFILE_ENV} or {DEFAULT_PROFILE})")
    p.add_argument("--profiles", help="extra locale profile registry (JSON)")
    p.add_argument("--base", default=DEFAULT_BASE, help=f"app IRI base (default {DEFAULT_BASE})")

    p = sub.add_parser("validate", help="check a Turtle file against the schema")
    p.add_argument("ttl")

    p = sub.add_parser("query", help="query a Turtle file")
    p.add_argument("ttl")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--top", metavar="PREDICATE", help="rank subjects by a numeric predicate")
    mode.add_argument("--peers", metavar="APP", help="other apps sharing APP's value")
    mode.add_argument("--group", metavar="PREDICATE", help="value counts and shares")
    p.add_argument("--k", type=int, help="rows for --top (default 10)")
    p.add_argument("--asc", action="store_true", help="ascending order for --top")
    p.add_argument("--by", metavar="PREDICATE", help="predicate for --peers")

    p = sub.add_parser("stats", help=f"shorthand for query --group {CATEGORY}")
    p.add_argument("ttl")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        if args.command == "extract":
            return cmd_extract(args.manifest, args.rules, args.out)
        if args.command == "build":
            return cmd_build(args.records, args.out, args.profile, args.base, args.profiles)
        if args.command == "validate":
            return cmd_validate(args.ttl)
        if args.command == "stats":
            args = argparse.Namespace(ttl=args.ttl, top=None, peers=None, group=CATEGORY,
                                      k=None, asc=False, by=None)
        return cmd_query(args.ttl, args)
    except UsageError as exc:
        _err(f"appkg: error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
