"""Command-line entry point.

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 internal
invariant failure.  Errors are reported on stderr as one line
``error: <ErrorClass>: <message>``.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Optional

from .catalog import format_catalog, load_fixtures, match_catalog, read_catalog, render_report
from .design import format_design
from .dts import enumerate_dts
from .errors import BadWindow, DesignError, InvariantFailure, OrderMismatch
from .sequencer import sequence_all
from .tts import automorphism_group, check_order, enumerate_tts, is_isomorphic_tts, load_reference_tts

THREADS_ENV = "DTSEQ_THREADS"


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_bytes(text.encode("ascii"))
    else:
        sys.stdout.write(text)


def _catalog(args):
    if args.input:
        cat = read_catalog(args.input)
        if cat.v != args.v:
            raise OrderMismatch(f"catalog {args.input} has v={cat.v}, expected {args.v}")
        return cat
    return enumerate_dts(args.v, workers=args.threads)


def cmd_enumerate_tts(args) -> int:
    refs = load_reference_tts(args.v)
    chunks = []
    for i, t in enumerate(enumerate_tts(args.v), 1):
        g = automorphism_group(t)
        same = [r.tts_id for r in refs if is_isomorphic_tts(r.tts, t)]
        header = f"# tts C{args.v}.{i}\n# aut-order {g.order}\n"
        if same:
            header += f"# isomorphic-to {same[0]}\n"
        chunks.append(header + format_design(t))
    _emit("".join(chunks), args.output)
    return 0


def cmd_enumerate_dts(args) -> int:
    _emit(format_catalog(enumerate_dts(args.v, workers=args.threads)), args.output)
    return 0


def cmd_sequence(args) -> int:
    ell = None if args.max_ell else args.ell
    if ell is None and not args.max_ell:
        ell = args.v
    if ell is not None and not 1 <= ell <= args.v:
        raise BadWindow(f"--ell {ell} outside 1..{args.v}")
    cat = _catalog(args)
    reports = sequence_all(cat.items(), ell, workers=args.threads)
    _emit(render_report(cat, reports, args.format, ell), args.output)
    return 0


def cmd_report(args) -> int:
    cat = _catalog(args)
    reports = sequence_all(cat.items(), None, workers=args.threads)
    _emit(render_report(cat, reports, args.format), args.output)
    return 0


def cmd_verify(args) -> int:
    cat = _catalog(args)
    diff = match_catalog(cat, load_fixtures(args.v), workers=args.threads)
    lines = [diff.summary()]
    for m in diff.mismatched:
        lines.append(f"MISMATCH {m.label} -> {m.design_id} {m.field}: expected {m.expected}, got {m.actual}")
    lines += [f"UNMATCHED fixture {x}" for x in diff.unmatched_fixtures]
    lines += [f"UNMATCHED computed {x}" for x in diff.unmatched_computed]
    _emit("\n".join(lines) + "\n", args.output)
    return 0 if diff.ok else 1


def cmd_selfcheck(args) -> int:
    from .selfcheck import run_all

    results = run_all(sample=args.sample)
    for r in results:
        print(r.line())
    if not all(r.ok for r in results):
        raise InvariantFailure(f"{sum(not r.ok for r in results)} self-checks failed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dtseq", description="Enumerate small DTS and their good sequencings.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, io=True):
        p.add_argument("--v", type=int, required=True, help="order of the designs (4, 6 or 7)")
        p.add_argument("-o", "--output", help="write to this file instead of stdout")
        p.add_argument("--threads", type=int, default=_default_threads(),
                       help=f"worker processes (default ${THREADS_ENV} or 1)")
        if io:
            p.add_argument("-i", "--input", help="catalog file (default: enumerate from scratch)")

    p = sub.add_parser("enumerate-tts", help="nonisomorphic TTS(v) with automorphism group orders")
    common(p, io=False)
    p.set_defaults(func=cmd_enumerate_tts)

    p = sub.add_parser("enumerate-dts", help="nonisomorphic DTS(v) catalog")
    common(p, io=False)
    p.set_defaults(func=cmd_enumerate_dts)

    p = sub.add_parser("sequence", help="least good sequencing and exact count per design")
    common(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--ell", type=int, help="window length (default v)")
    group.add_argument("--max-ell", action="store_true", help="report at each design's largest good window")
    p.add_argument("--format", choices=("tsv", "paper"), default="tsv")
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("report", help="max-window report for a catalog")
    common(p)
    p.add_argument("--format", choices=("tsv", "paper"), default="paper")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("verify", help="run the pipeline and diff against the shipped fixtures")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selfcheck", help="oracle-equivalence and invariant suites")
    p.add_argument("--sample", type=int, default=50, help="v=7 designs checked against brute force")
    p.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if hasattr(args, "v"):
            check_order(args.v)
        return args.func(args)
    except InvariantFailure as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except DesignError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: IoError: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
