"""Command-line front end: ``subsq <command> ...``.

Exit codes: 0 success / exists, 2 usage or input error, 3 does not exist,
4 unknown, 5 internal invariant failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Iterator, Sequence

from . import conditions, verify
from .core import (
    InvariantError,
    LatinSquare,
    ParseError,
    Partition,
    Realization,
    outline_from_json,
    outline_to_json,
    parse_partition,
    reduce,
    square_from_json,
    square_from_text,
    square_to_json,
    square_to_text,
)
from .increment import increment
from .lifting import lift
from .oracle import SearchConfig, Verdict, search_realization
from .rational import ConditionViolated
from .rounding import build_k5

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NOT_EXISTS = 3
EXIT_UNKNOWN = 4
EXIT_INTERNAL = 5

SWEEP_HEADER = ("h1", "h2", "h3", "h4", "h5", "exists_k5", "slack", "y_class", "build_verify", "oracle")


class UsageError(Exception):
    pass


# -- helpers ---------------------------------------------------------------


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load_square(path: str) -> tuple[LatinSquare, Partition | None]:
    text = _read(path)
    if text.lstrip().startswith("{"):
        return square_from_json(text)
    return square_from_text(text), None


def _emit_square(square: LatinSquare, partition: Partition | None, fmt: str, out: str | None) -> None:
    if fmt == "json":
        _write(square_to_json(square, partition) + "\n", out)
    else:
        _write(square_to_text(square), out)


def _require(ok: bool, what: str) -> None:
    if not ok:
        raise InvariantError(f"output failed verification: {what}")


# -- check -----------------------------------------------------------------


def check_report(P: Partition) -> dict:
    """Existence verdict for any partition, dispatched by k and shape."""
    h = P.parts
    k = len(h)
    if k <= 4:
        return {"exists": conditions.exists_small_k(h), "criterion": "small-k"}
    if k == 5:
        rep = conditions.exists_k5(h)
        out = {"exists": rep.satisfied, "criterion": "k5-10-subsets", "slack": rep.slack}
        if rep.witness is not None:
            out["witness"] = list(rep.witness)
        return out
    c1 = conditions.check_condition1(h)
    if not c1:
        return {"exists": False, "criterion": "condition1", "witness": list(c1.witness), "slack": c1.slack}
    c2 = conditions.check_condition2_all(h)
    if not c2:
        return {"exists": False, "criterion": "condition2", "witness": list(c2.witness), "slack": c2.slack}
    two = conditions.exists_two_orders(h)
    if two is not None:
        return {"exists": two, "criterion": "two-orders"}
    if conditions.check_bounded_ratio(h):
        return {"exists": True, "criterion": "bounded-ratio"}
    return {"exists": "unknown", "criterion": "none"}


def _verdict_exit(exists) -> int:
    if exists is True:
        return EXIT_OK
    if exists is False:
        return EXIT_NOT_EXISTS
    return EXIT_UNKNOWN


def cmd_check(args) -> int:
    report = check_report(parse_partition(args.partition))
    print(json.dumps(report))
    return _verdict_exit(report["exists"])


# -- build -----------------------------------------------------------------


def _intermediates(b) -> dict:
    return {
        "P": list(b.rational.partition.parts),
        "entries_sixths": [[[x.numerator_sixths for x in cell] for cell in row] for row in b.rational.entries],
        "A": [[list(cell) for cell in row] for row in b.floor],
        "Y": [list(row) for row in b.graph.y],
        "class": b.graph.class_label,
        "perm": [p + 1 for p in b.graph.perm],
        "B": [[list(cell) for cell in row] for row in b.completion.cells],
    }


def build_realization(P: Partition, check: bool = True):
    """Build a realization of a five-part partition; returns (realization, intermediates)."""
    b = build_k5(P)
    square = lift(b.outline)
    if check:
        _require(verify.is_realization(square, P.parts), "not a realization")
        _require(verify.reduction_equals(square, b.outline), "reduction differs from the outline")
    return Realization(square, P), b


def cmd_build(args) -> int:
    P = parse_partition(args.partition)
    if P.k != 5:
        raise UsageError(f"build needs exactly 5 parts, got {P.k}")
    try:
        real, b = build_realization(P, not args.no_verify)
    except ConditionViolated as exc:
        print(f"not realizable: witness {list(exc.triple)}, slack {exc.slack}", file=sys.stderr)
        return EXIT_NOT_EXISTS
    if args.dump_intermediates:
        Path(args.dump_intermediates).write_text(json.dumps(_intermediates(b)) + "\n")
    _emit_square(real.square, P, args.format, args.out)
    return EXIT_OK


# -- lift / reduce ---------------------------------------------------------


def cmd_lift(args) -> int:
    O = outline_from_json(_read(args.outline))
    square = lift(O)
    if not args.no_verify:
        _require(verify.is_latin(square), "not latin")
        _require(verify.reduction_equals(square, O), "reduction differs from the outline")
    _emit_square(square, None, args.format, args.out)
    return EXIT_OK


def _sizes(text: str) -> tuple[int, ...]:
    # block sizes for reduce need not be non-increasing
    try:
        sizes = tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError as exc:
        raise ParseError(f"bad block sizes {text!r}") from exc
    if not sizes or min(sizes) < 1:
        raise ParseError(f"block sizes must be positive integers: {text!r}")
    return sizes


def cmd_reduce(args) -> int:
    square, _ = _load_square(args.square)
    P = _sizes(args.P)
    Q = _sizes(args.Q) if args.Q else P
    R = _sizes(args.R) if args.R else P
    _write(outline_to_json(reduce(square, P, Q, R)) + "\n", args.out)
    return EXIT_OK


# -- increment -------------------------------------------------------------


def cmd_increment(args) -> int:
    if args.q < 1:
        raise UsageError("--q must be a positive integer")
    square, partition = _load_square(args.realization)
    if args.partition:
        partition = parse_partition(args.partition)
    if partition is None:
        raise UsageError("the realization file has no partition; pass --partition")
    if partition.k != 5:
        raise UsageError(f"increment needs a 5-block realization, got {partition.k} blocks")
    if not verify.is_realization(square, partition.parts):
        raise UsageError(f"input is not a normal-form realization of ({partition})")
    if partition.parts[0] > sum(partition.parts[2:]):
        raise UsageError("input violates r1 <= r3 + r4 + r5")
    out = increment(Realization(square, partition), args.q)
    if not args.no_verify:
        _require(verify.is_realization(out.square, out.partition.parts), "not a realization")
    _emit_square(out.square, out.partition, args.format, args.out)
    return EXIT_OK


# -- oracle ----------------------------------------------------------------


def _config(node_limit, time_limit) -> SearchConfig:
    try:
        return SearchConfig(node_limit, time_limit)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_oracle(args) -> int:
    P = parse_partition(args.partition)
    res = search_realization(P, _config(args.node_limit, args.time_limit))
    print(res.verdict.value)
    if res.verdict is Verdict.FOUND:
        _require(verify.is_realization(res.realization.square, P.parts), "oracle square")
        _emit_square(res.realization.square, P, args.format, args.out)
        return EXIT_OK
    return EXIT_NOT_EXISTS if res.verdict is Verdict.NOT_EXISTS else EXIT_UNKNOWN


# -- sweep -----------------------------------------------------------------


def partitions_into(n: int, k: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n into exactly k parts, reverse-lexicographic."""
    largest = n if largest is None else largest
    if k == 0:
        if n == 0:
            yield ()
        return
    for first in range(min(largest, n - (k - 1)), 0, -1):
        if first * k < n:
            break
        for rest in partitions_into(n - first, k - 1, first):
            yield (first,) + rest


def sweep_row(h: tuple[int, ...], oracle_max: int | None, time_limit: float | None = None) -> list[str]:
    rep = conditions.exists_k5(h)
    y_class = status = oracle = ""
    P = Partition(h)
    if rep.satisfied:
        try:
            real, b = build_realization(P, check=False)
            y_class = b.graph.class_label
            ok = verify.is_realization(real.square, h) and verify.reduction_equals(real.square, b.outline)
            status = "pass" if ok else "fail"
        except InvariantError:
            status = "error"
    if oracle_max is not None and P.n <= oracle_max:
        oracle = search_realization(P, SearchConfig(time_limit=time_limit)).verdict.value
    return [*map(str, h), str(rep.satisfied).lower(), str(rep.slack), y_class, status, oracle]


def cmd_sweep(args) -> int:
    if args.k != 5:
        raise UsageError("sweep supports --k 5 only")
    if args.max_n < 5:
        raise UsageError("--max-n must be at least 5")
    parts = [h for n in range(5, args.max_n + 1) for h in partitions_into(n, 5)]
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = pool.map(sweep_row, parts, [args.with_oracle] * len(parts), [args.oracle_time_limit] * len(parts))
            for row in rows:
                writer.writerow(row)
    else:
        for h in parts:
            writer.writerow(sweep_row(h, args.with_oracle, args.oracle_time_limit))
    return EXIT_OK


# -- entry point -----------------------------------------------------------


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="subsq", description="Latin squares with disjoint diagonal subsquares.")
    sub = ap.add_subparsers(dest="command", required=True)

    def out_opts(p):
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--format", choices=("grid", "json"), default="grid")
        p.add_argument("--no-verify", action="store_true", help="skip re-verification of the output")

    p = sub.add_parser("check", help="existence verdict for a partition")
    p.add_argument("partition", help="parts such as 3,2,1,1,1")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("build", help="construct a realization of a five-part partition")
    p.add_argument("partition")
    out_opts(p)
    p.add_argument(
        "--dump-intermediates",
        metavar="FILE",
        help="write the sixths tensor, floor array, Y graph, class, 1-based perm and B as JSON",
    )
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("lift", help="lift an outline rectangle (JSON) to a latin square")
    p.add_argument("outline")
    out_opts(p)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("reduce", help="reduce a square (grid or JSON) modulo P, Q, R")
    p.add_argument("square")
    p.add_argument("--P", required=True, help="row block sizes")
    p.add_argument("--Q", help="column block sizes (default P)")
    p.add_argument("--R", help="symbol block sizes (default P)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("increment", help="add q to every block of a five-block realization")
    p.add_argument("realization", help="square file; JSON carries its partition")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--partition", help="partition of a grid-format input")
    out_opts(p)
    p.set_defaults(func=cmd_increment)

    p = sub.add_parser("oracle", help="exhaustive search for a realization")
    p.add_argument("partition")
    p.add_argument("--node-limit", type=_positive_int)
    p.add_argument("--time-limit", type=_positive_float, help="seconds")
    p.add_argument("--out")
    p.add_argument("--format", choices=("grid", "json"), default="grid")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("sweep", help="CSV over all five-part partitions up to --max-n")
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--with-oracle", type=int, metavar="M", help="run the oracle for n <= M")
    p.add_argument("--oracle-time-limit", type=_positive_float)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
