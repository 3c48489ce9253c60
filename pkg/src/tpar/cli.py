"""Command-line front end.

``tpar IN.qc [-o OUT.qc] [--ancillae 0|N|n|unbounded] [--verify MODE] [--stats]``
optimizes one circuit; ``tpar bench --family F --k 3..10`` tabulates a
benchmark family.

Exit codes: 0 success, 1 verification failure (the output is still
written), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from typing import Optional, Sequence

from . import bench
from .driver import AncillaPolicy, optimize
from .ir import QcParseError, expand, parse_qc, write_qc
from .verify import DIFFERENT, check_summary, check_unitary

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2
VERIFY_MODES = ("auto", "summary", "unitary", "both", "none")
UNITARY_LIMIT = 10

log = logging.getLogger("tpar")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _optimize_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="tpar",
        description="Reduce T-count and T-depth of a Clifford+T circuit in .qc format.",
        epilog="Run 'tpar bench -h' for the benchmark runner.",
    )
    p.add_argument("input", help="input .qc file, or - for stdin")
    p.add_argument("-o", "--output", default="-", help="output .qc file (default: stdout)")
    p.add_argument(
        "--ancillae", default="0",
        help="extra clean wires: an integer, 'n' (one per circuit wire) or 'unbounded'",
    )
    p.add_argument(
        "--verify", choices=VERIFY_MODES, default="auto",
        help="equivalence check; 'auto' adds the unitary check on circuits of at most "
             f"{UNITARY_LIMIT} wires",
    )
    p.add_argument("--expand-only", action="store_true", help="only expand Toffolis, no optimization")
    p.add_argument("--split-even", action="store_true",
                   help="partition odd and even phase terms separately")
    p.add_argument("--stats", action="store_true", help="print JSON metrics to stderr")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _bench_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tpar bench", description="Optimize a benchmark family and tabulate the results.")
    p.add_argument("--family", choices=bench.FAMILIES, required=True)
    p.add_argument("--k", "--m", dest="sizes", default=None,
                   help="sizes as a range '3..10' or a list '3,4,5' (fixture family: 0..3)")
    p.add_argument("--ancillae", default="0", help="comma-separated policies, e.g. 0,n,unbounded")
    p.add_argument("--format", choices=("csv", "markdown"), default="csv")
    p.add_argument("-o", "--output", default="-", help="report file (default: stdout)")
    return p


def parse_sizes(text: str) -> list[int]:
    """``"3..6"`` -> [3, 4, 5, 6]; ``"3,5"`` -> [3, 5]."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _verify(mode: str, original, optimized) -> tuple[str, list[str]]:
    if mode == "none":
        return "skipped", []
    reports = []
    if mode in ("auto", "summary", "both"):
        reports.append(("summary", check_summary(original, optimized)))
    small = max(original.n, optimized.n) <= UNITARY_LIMIT
    if mode in ("unitary", "both") or (mode == "auto" and small):
        if not small:
            return DIFFERENT, [f"unitary check limited to {UNITARY_LIMIT} wires, got {optimized.n}"]
        reports.append(("unitary", check_unitary(original, optimized, UNITARY_LIMIT)))
    notes = [f"{name}: {r.verdict}" + (f" ({r.note})" if r.note else "") for name, r in reports]
    failed = [r for _, r in reports if not r.ok]
    return (failed[0].verdict if failed else reports[-1][1].verdict), notes


def run_optimize(argv: Sequence[str]) -> int:
    args = _optimize_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    source = "<stdin>" if args.input == "-" else args.input
    try:
        circuit = parse_qc(_read(args.input))
    except OSError as exc:
        print(f"tpar: {source}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    except QcParseError as exc:
        where = f"{source}:{exc.line}" if exc.line is not None else source
        print(f"tpar: {where}: {exc.args[0].split(': ', 1)[-1]}", file=sys.stderr)
        return EXIT_USAGE
    try:
        policy = AncillaPolicy.parse(args.ancillae, circuit.n)
    except ValueError as exc:
        print(f"tpar: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.expand_only:
        _write(args.output, write_qc(expand(circuit)))
        return EXIT_OK

    start = time.perf_counter()
    result = optimize(circuit, policy, split_even=args.split_even)
    elapsed = time.perf_counter() - start
    verdict, notes = _verify(args.verify, circuit, result.circuit)
    _write(args.output, write_qc(result.circuit))
    for note in notes:
        log.info(note)
    if args.stats:
        stats = {
            "input": source,
            "ancillae": str(policy),
            "before": result.before.as_dict(),
            "after": result.after.as_dict(),
            "verify": verdict,
            "seconds": round(elapsed, 6),
        }
        print(json.dumps(stats, indent=2), file=sys.stderr)
    if verdict == DIFFERENT:
        print(f"tpar: {source}: verification failed: " + "; ".join(notes), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def run_bench(argv: Sequence[str]) -> int:
    args = _bench_parser().parse_args(argv)
    default = "0..3" if args.family == bench.FIXTURE else "3..10" if args.family.startswith("mct") else "2..8"
    try:
        sizes = parse_sizes(args.sizes or default)
    except ValueError:
        print(f"tpar bench: bad size list {args.sizes!r}", file=sys.stderr)
        return EXIT_USAGE
    policies = [p.strip() for p in args.ancillae.split(",") if p.strip()]
    specs = [bench.BenchSpec(args.family, k) for k in sizes]
    report = bench.run_benchmarks(specs, policies)
    _write(args.output, report.to_csv() if args.format == "csv" else report.to_markdown())
    failed = any(r["verify_verdict"] in (DIFFERENT,) or str(r["verify_verdict"]).startswith("error")
                 for r in report.rows)
    return EXIT_VERIFY if failed else EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv:
        _optimize_parser().print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        if argv[0] == "bench":
            return run_bench(argv[1:])
        return run_optimize(argv)
    except SystemExit as exc:  # argparse exits on -h and on bad flags
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
