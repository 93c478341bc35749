"""Command-line interface.

Subcommands: ``partition``, ``slack``, ``embed``, ``gen``, ``stats`` and
``validate``. Exit codes: 0 on success, 1 for bad input or flags, 2 when an
internal consistency check fails.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import _jsonio
from .exceptions import FatPartError, InvariantViolation
from .generators import lowerbound_tree, random_hierarchy, random_ultrametric
from .geometry import ConvexPolygon, area
from .hierarchy import load_tree, parse_tree, to_binary, tree_to_document
from .partitioners import (
    PartitionConfig,
    check_partition,
    partition,
    partition_to_svg,
    stats,
    stats_from_document,
)
from .slack import SlackConfig, check_slack_partition, slack_partition
from .ultrametric import embed, read_distance_csv, validate_ultrametric, write_distance_csv, write_points_csv

EXIT_OK, EXIT_USER, EXIT_INVARIANT = 0, 1, 2
SEED_MAX = 2**64 - 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with status 2
        raise UsageError(message)


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        _write(path, text)


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v <= SEED_MAX:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive_int(minimum: int):
    def conv(text: str) -> int:
        v = int(text)
        if v < minimum:
            raise argparse.ArgumentTypeError(f"must be an integer >= {minimum}")
        return v

    return conv


def _epsilon(text: str) -> float:
    v = float(text)
    if not (math.isfinite(v) and 0.0 < v < 1.0 / 3.0):
        raise argparse.ArgumentTypeError("epsilon must lie strictly between 0 and 1/3")
    return v


# ---------------------------------------------------------------------------
# commands


def cmd_partition(args) -> int:
    tree = load_tree(args.input)
    cfg = PartitionConfig(
        theta_samples=args.theta_samples,
        constructive=not args.no_constructive,
        seed=args.seed,
        threads=args.threads,
    )
    p = partition(to_binary(tree), args.method.replace("-", "_"), cfg)
    check_partition(p)
    if args.json:
        _write(args.json, p.to_json() + "\n")
    if args.svg:
        _write(args.svg, partition_to_svg(p, outlines=args.outlines))
    print(stats(p).line())
    return EXIT_OK


def cmd_slack(args) -> int:
    tree = load_tree(args.input)
    sp = slack_partition(tree, SlackConfig(args.epsilon, args.dim))
    check_slack_partition(sp)
    text = sp.to_json() + "\n"
    if args.out:
        _write(args.out, text)
        print(f"max_rect_aspect_ratio={sp.max_aspect_ratio()!r}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_embed(args) -> int:
    M = read_distance_csv(_read(args.input))
    res = embed(M, args.dim)
    _emit(args.out, write_points_csv(M.names, res.points))
    if args.report:
        _write(args.report, _jsonio.dumps(res.report.to_dict(), indent=2) + "\n")
    if args.out and args.out != "-":
        r = res.report
        print(f"distortion={r.distortion!r} lower_bound={r.lower_bound!r}")
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind == "lowerbound":
        if args.depth is None:
            raise UsageError("--depth is required for --kind lowerbound")
        text = _jsonio.dumps(tree_to_document(lowerbound_tree(args.depth)), indent=2)
    elif args.kind == "random":
        tree = random_hierarchy(args.seed, args.n, args.max_depth, args.weight_law)
        text = _jsonio.dumps(tree_to_document(tree), indent=2)
    else:
        if args.n < 2:
            raise UsageError("--n must be at least 2 for ultrametrics")
        text = write_distance_csv(random_ultrametric(args.seed, args.n, args.levels)).rstrip("\n")
    _emit(args.out, text + "\n")
    return EXIT_OK


def cmd_stats(args) -> int:
    doc = _jsonio.loads(_read(args.input))
    if not isinstance(doc, dict):
        raise FatPartError("not a partition document")
    print(stats_from_document(doc).line())
    return EXIT_OK


def _validate_partition_doc(doc: dict) -> str:
    entries = doc["entries"]
    for e in entries:
        pts = np.asarray(e["polygon"], float)
        P = ConvexPolygon.from_points(pts - pts[0], origin=tuple(pts[0]))
        w = float(e["weight"])
        if abs(area(P) - w) > 1e-6 * max(w, 1e-300) and w > 1e-12:
            raise InvariantViolation(f"entry {e.get('path')}: area differs from weight")
    return f"ok partition entries={len(entries)}"


def cmd_validate(args) -> int:
    path = Path(args.input)
    if path.is_dir():
        tree = load_tree(path)
        print(f"ok hierarchy nodes={len(tree)} leaves={len(tree.leaves())} depth={tree.depth()}")
        return EXIT_OK
    text = _read(args.input)
    if path.suffix.lower() == ".csv":
        M = read_distance_csv(text)
        ultra = "true" if validate_ultrametric(M) else "false"
        print(f"ok metric points={M.n} ultrametric={ultra}")
        return EXIT_OK
    doc = _jsonio.loads(text)
    if isinstance(doc, dict) and "entries" in doc and "method" in doc:
        try:
            print(_validate_partition_doc(doc))
        except (KeyError, TypeError) as exc:
            raise FatPartError(f"malformed partition document: {exc}") from None
        return EXIT_OK
    tree = parse_tree(doc)
    print(f"ok hierarchy nodes={len(tree)} leaves={len(tree.leaves())} depth={tree.depth()}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="fatpart", description="Fat hierarchical partitions and ultrametric embeddings.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("partition", help="polygonal partition of the unit square")
    p.add_argument("--input", required=True, help="hierarchy JSON file or a directory to scan")
    p.add_argument("--method", default="greedy", choices=["angular", "greedy", "random", "greedy-rect", "greedy_rect"])
    p.add_argument("--json", help="write the partition JSON here")
    p.add_argument("--svg", help="write an SVG rendering here")
    p.add_argument("--outlines", action="store_true", help="draw internal-node outlines in the SVG")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--theta-samples", type=_positive_int(4), default=64)
    p.add_argument("--threads", type=_positive_int(1), default=1)
    p.add_argument("--no-constructive", action="store_true", help="greedy: only sampled orientations")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("slack", help="hyperrectangular partition with slack")
    p.add_argument("--input", required=True)
    p.add_argument("--epsilon", type=_epsilon, required=True)
    p.add_argument("--dim", type=_positive_int(2), default=2)
    p.add_argument("--out")
    p.set_defaults(func=cmd_slack)

    p = sub.add_parser("embed", help="embed an ultrametric distance matrix into R^d")
    p.add_argument("--input", required=True, help="distance-matrix CSV")
    p.add_argument("--dim", type=_positive_int(2), default=2)
    p.add_argument("--out", help="points CSV (stdout if omitted)")
    p.add_argument("--report", help="write the distortion report JSON here")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("gen", help="generate test instances")
    p.add_argument("--kind", required=True, choices=["lowerbound", "random", "ultrametric"])
    p.add_argument("--depth", type=_positive_int(1))
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--n", type=_positive_int(1), default=100)
    p.add_argument("--max-depth", type=_positive_int(1), default=8)
    p.add_argument("--weight-law", choices=["uniform", "pareto"], default="uniform")
    p.add_argument("--levels", type=_positive_int(1), default=4)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("stats", help="aspect-ratio summary of a partition JSON")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("validate", help="check a hierarchy, partition or distance file")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_validate)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USER
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (FatPartError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USER


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
