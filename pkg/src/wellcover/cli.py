"""Command-line interface.

Every command writes one JSON document to stdout and a short human summary
to stderr.  Exit codes: 0 verdict computed, 1 verification failed,
2 unreadable input, 3 certification routes disagree, 64 usage error,
65 size limit exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .errors import InvalidCoverError, ParseError, SizeLimitError
from .formats import FORMATS, dump_report, load_report, parse_cover, parse_graph
from .lab import MODES, GeneratorConfig, conjecture_scan, theorem_corpus_check
from .reports import (
    ROUTES,
    algebra_document,
    bipartite_document,
    certify_document,
    check_document,
    scan_document,
    verify_document,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_DISAGREE = 3
EXIT_USAGE = 64
EXIT_LIMIT = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_graph(path: str, fmt: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_graph(text, fmt), Path(path).stem


def _emit(doc: dict, summary: str) -> None:
    sys.stdout.write(dump_report(doc))
    print(summary, file=sys.stderr)


def cmd_check(args) -> int:
    g, name = _read_graph(args.file, args.format)
    doc = check_document(g, name)
    wc, uwc = doc["well_covered"], doc["uniformly_well_covered"]
    line = f"{name}: {'well-covered' if wc['verdict'] else 'not well-covered'}"
    if uwc["verdict"]:
        line += ", uniformly well-covered with partition " + " | ".join(
            ",".join(map(str, p)) for p in uwc["partition"]
        )
    else:
        line += f", not uniformly well-covered ({uwc['reason']})"
    _emit(doc, line)
    return EXIT_OK


def cmd_certify(args) -> int:
    g, name = _read_graph(args.file, args.format)
    doc = certify_document(g, name, args.route)
    if not doc["applicable"]:
        _emit(doc, f"{name}: no qualifying clique cover; {doc['reason']}")
        return EXIT_OK
    verdicts = [f"{k}={v}" for e in doc["covers"][:1] for k, v in e["verdicts"].items()]
    status = "routes agree" if doc["agree"] else "ROUTES DISAGREE"
    _emit(doc, f"{name}: {len(doc['covers'])} qualifying cover(s), {status} ({', '.join(verdicts)})")
    return EXIT_OK if doc["agree"] else EXIT_DISAGREE


def cmd_algebra(args) -> int:
    g, name = _read_graph(args.file, args.format)
    cover = parse_cover(args.cover)
    doc = algebra_document(g, cover, name)
    lines = [f"theta_{p['part_index']} = {p['theta']}: "
             + (f"zero-divisor, killed by {p['witness']}" if p["zero_divisor"] else "regular")
             for p in doc["parts"]]
    _emit(doc, "\n".join(lines))
    return EXIT_OK


def cmd_bipartite(args) -> int:
    g, name = _read_graph(args.file, args.format)
    doc = bipartite_document(g, name)
    if not doc["applicable"]:
        summary = f"{name}: not applicable ({doc['reason']})"
    else:
        summary = f"{name}: {'well-covered' if doc['verdict'] else 'not well-covered'}"
        if doc["reason"]:
            summary += f" ({doc['reason']})"
    _emit(doc, summary)
    return EXIT_OK


def _config_from_args(args) -> GeneratorConfig:
    parts: tuple[int, ...] = ()
    if args.parts:
        try:
            parts = tuple(int(x) for x in args.parts.split(","))
        except ValueError:
            raise UsageError(f"--parts must be comma-separated integers, got {args.parts!r}")
    elif args.s is not None and args.n is not None and args.mode.endswith("spartite"):
        base, extra = divmod(args.n, args.s)
        parts = tuple(base + (i < extra) for i in range(args.s))
    if args.s is not None and parts and len(parts) != args.s:
        raise UsageError(f"--s {args.s} does not match {len(parts)} part sizes")
    try:
        return GeneratorConfig(args.mode, args.n, parts, args.p, args.seed, args.count)
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_conjecture(args) -> int:
    config = _config_from_args(args)
    scan = theorem_corpus_check if args.suite == "theorems" else conjecture_scan
    report = scan(config, workers=args.workers, timeout=args.timeout)
    doc = scan_document(report)
    summary = (
        f"{report.instances_examined} examined, {report.instances_qualifying} qualifying, "
        f"{len(report.counterexamples)} counterexample(s), {len(report.violations)} violation(s) recorded"
    )
    _emit(doc, summary)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        text = Path(args.report).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {args.report}: {exc.strerror}") from exc
    doc = load_report(text)
    checks = verify_document(doc)
    ok = all(passed for _, passed in checks)
    out = {
        "kind": "verify",
        "report_kind": doc["kind"],
        "checks": [{"name": name, "ok": passed} for name, passed in checks],
        "ok": ok,
    }
    sys.stdout.write(dump_report(out))
    for name, passed in checks:
        print(f"{'PASS' if passed else 'FAIL'} {name}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wellcover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_cmd(name: str, help_: str):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file")
        p.add_argument("--format", choices=FORMATS, default="edge-list")
        return p

    graph_cmd("check", "well-covered and uniformly well-covered verdicts").set_defaults(func=cmd_check)
    p = graph_cmd("certify", "cross-check the recognition routes on every qualifying cover")
    p.add_argument("--route", choices=ROUTES + ("all",), default="all")
    p.set_defaults(func=cmd_certify)
    p = graph_cmd("algebra", "clique sums and their zero-divisor witnesses")
    p.add_argument("--cover", required=True, help='parts separated by ";", e.g. "1,5,6;2,3,4"')
    p.set_defaults(func=cmd_algebra)
    graph_cmd("bipartite", "bipartite well-coveredness via matched neighbourhoods").set_defaults(
        func=cmd_bipartite
    )

    p = sub.add_parser("conjecture", help="scan generated graphs")
    p.add_argument("--mode", choices=MODES, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--parts", help="comma-separated part sizes, e.g. 2,2,2")
    p.add_argument("--p", type=float, default=0.5, help="edge probability for random modes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timeout", type=float, default=None, help="per-instance seconds")
    p.add_argument("--suite", choices=("conjecture", "theorems"), default="conjecture")
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("verify", help="re-check every witness in a report")
    p.add_argument("report")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"wellcover: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeLimitError as exc:
        print(f"wellcover: limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (ParseError, InvalidCoverError) as exc:
        print(f"wellcover: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
