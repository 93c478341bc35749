"""Recursive polygonal partitions of the unit square.

Every binary-tree node receives a convex polygon whose area equals the
node's weight. An internal node's polygon is split by a single straight cut
into the polygons of its two children. The methods differ only in how the
cut is chosen:

``angular``
    orientation as far as possible from every edge direction;
``greedy``
    the candidate minimizing the larger of the two aspect ratios;
``random``
    orientation drawn uniformly from a per-node seeded generator;
``greedy_rect``
    axis-parallel cut perpendicular to the longer side.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from . import _jsonio
from .exceptions import DegenerateCut, InvariantViolation, MalformedDocument, PreconditionViolated
from .geometry import (
    MIN_AREA,
    ConvexPolygon,
    Cut,
    _pieces,
    area,
    aspect_ratio,
    best_angular_orientation,
    cut_at_orientation,
    diameter_pair,
    min_angle_bisector,
    normal_orientation,
    polygon_from_rect,
    sweep_cuts,
    unit_square,
)
from .hierarchy import BinaryTree, WeightedTree, to_binary

__all__ = [
    "METHODS",
    "PartitionConfig",
    "PolygonalPartition",
    "PartitionStats",
    "partition",
    "angular_cut",
    "greedy_cut",
    "random_cut",
    "greedy_rect_cut",
    "stats",
    "stats_from_document",
    "check_partition",
    "partition_to_svg",
]

METHODS = ("angular", "greedy", "random", "greedy_rect")

Pieces = tuple[ConvexPolygon, ConvexPolygon, Cut]


@dataclass(frozen=True)
class PartitionConfig:
    """Tuning knobs for :func:`partition`.

    Parameters
    ----------
    theta_samples : int
        Number of evenly spaced orientations the greedy method tries, each
        with both sides as the small side.
    constructive : bool
        Also offer the greedy method the bisector and diameter cuts that
        guarantee the worst-case aspect-ratio bound.
    seed : int
        Seed for the random method. Each node draws from its own stream
        keyed by ``(seed, node_id)``, so results do not depend on traversal
        order or threading.
    threads : int
        Worker threads used to process independent subtrees.
    """

    theta_samples: int = 64
    constructive: bool = True
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        if int(self.theta_samples) < 4:
            raise ValueError("theta_samples must be at least 4")
        if int(self.threads) < 1:
            raise ValueError("threads must be at least 1")
        if int(self.seed) < 0:
            raise ValueError("seed must be non-negative")


# ---------------------------------------------------------------------------
# single cuts


def _check_fraction(a: float) -> None:
    if not 0.0 < a < 1.0:
        raise PreconditionViolated(f"area fraction must lie in (0, 1), got {a}")


def angular_cut(P: ConvexPolygon, a: float) -> Pieces:
    """Cut along the orientation that makes the widest angle with all edges.

    The requested piece (area ``a``) is placed on the left of the cut.
    """
    _check_fraction(a)
    return cut_at_orientation(P, best_angular_orientation(P), a, "left")


def random_cut(P: ConvexPolygon, a: float, rng: np.random.Generator) -> Pieces:
    _check_fraction(a)
    theta = float(rng.uniform(0.0, math.pi))
    return cut_at_orientation(P, theta, a, "left")


def _greedy_normals(P: ConvexPolygon, a: float, cfg: PartitionConfig) -> np.ndarray:
    m = int(cfg.theta_samples)
    th = math.pi * np.arange(m) / m
    left = np.stack([np.sin(th), -np.cos(th)], axis=1)
    normals = [left, -left]
    if cfg.constructive:
        k = P.k
        if min(a, 1.0 - a) <= 1.0 / (k * k):
            _, b = min_angle_bisector(P)
            normals.append(b[None, :])
        i, j = diameter_pair(P)
        u = P.local[j] - P.local[i]
        u = u / math.hypot(u[0], u[1])
        normals.append(np.stack([u, -u]))
    return np.concatenate(normals)


def greedy_cut(P: ConvexPolygon, a: float, cfg: Optional[PartitionConfig] = None) -> Pieces:
    """Cut minimizing ``max(aspect_ratio(P1), aspect_ratio(P2))``.

    All candidate normals are solved in one vectorized sweep and scored
    without building polygons; only the winner (first on ties) is built.
    """
    _check_fraction(a)
    cfg = cfg or PartitionConfig()
    if a > 0.5:
        P2, P1, c = greedy_cut(P, 1.0 - a, cfg)
        theta, side = c.orientation, ("right" if c.small_side == "left" else "left")
        return P1, P2, Cut(theta, c.endpoints, side, c.normal and (-c.normal[0], -c.normal[1]))
    if a * area(P) < MIN_AREA:
        raise DegenerateCut(f"requested piece area {a * area(P):g} underflows")
    normals = _greedy_normals(P, a, cfg)
    sw = sweep_cuts(P.local, normals, a)
    score = np.maximum(sw.ar_small, sw.ar_big)
    score = np.where(np.isfinite(score), score, np.inf)
    best = int(np.argmin(score))
    P1, P2, ends = _pieces(P, sw, best)
    n = normals[best]
    theta, side = normal_orientation(n)
    return P1, P2, Cut(theta, ends, side, (float(n[0]), float(n[1])))


def _rect_bounds(P: ConvexPolygon) -> tuple[float, float, float, float]:
    v = P.local
    lo = v.min(axis=0)
    hi = v.max(axis=0)
    ext = float(np.max(hi - lo))
    tol = 1e-9 * ext
    if P.k != 4:
        raise PreconditionViolated("greedy_rect requires an axis-aligned rectangle")
    for x, y in v:
        if min(abs(x - lo[0]), abs(x - hi[0])) > tol or min(abs(y - lo[1]), abs(y - hi[1])) > tol:
            raise PreconditionViolated("greedy_rect requires an axis-aligned rectangle")
    return float(lo[0]), float(lo[1]), float(hi[0] - lo[0]), float(hi[1] - lo[1])


def greedy_rect_cut(P: ConvexPolygon, a: float) -> Pieces:
    """Axis-parallel cut perpendicular to the longer side (vertical on ties).

    The requested piece takes the low-x (or low-y) end.
    """
    _check_fraction(a)
    x0, y0, w, h = _rect_bounds(P)
    ox, oy = P.origin
    if w >= h:
        cw = a * w
        P1 = polygon_from_rect(x0, y0, cw, h, P.origin)
        P2 = polygon_from_rect(x0 + cw, y0, w - cw, h, P.origin)
        xa = ox + x0 + cw
        return P1, P2, Cut(math.pi / 2, ((xa, oy + y0), (xa, oy + y0 + h)), "left", (1.0, 0.0))
    ch = a * h
    P1 = polygon_from_rect(x0, y0, w, ch, P.origin)
    P2 = polygon_from_rect(x0, y0 + ch, w, h - ch, P.origin)
    ya = oy + y0 + ch
    return P1, P2, Cut(0.0, ((ox + x0, ya), (ox + x0 + w, ya)), "right", (0.0, 1.0))


# ---------------------------------------------------------------------------
# full partitions


@dataclass(frozen=True)
class PartitionStats:
    avg_aspect_ratio: float
    max_aspect_ratio: float
    per_depth_max: tuple[float, ...]
    polygon_count: int

    def line(self) -> str:
        return f"avg={self.avg_aspect_ratio!r} max={self.max_aspect_ratio!r}"


@dataclass(eq=False)
class PolygonalPartition:
    entries: dict[int, ConvexPolygon]
    method: str
    binary_tree: BinaryTree
    cuts: dict[int, Cut] = field(default_factory=dict)

    def __getitem__(self, node_id: int) -> ConvexPolygon:
        return self.entries[node_id]

    def __len__(self) -> int:
        return len(self.entries)

    def leaves(self) -> list[int]:
        return self.binary_tree.leaves()

    def depths(self) -> dict[int, int]:
        return self.binary_tree.depths()

    def aspect_ratios(self) -> dict[int, float]:
        return {v: aspect_ratio(P) for v, P in self.entries.items()}

    def to_document(self) -> dict:
        bt = self.binary_tree
        depth = bt.depths()
        out = []
        for v in bt.preorder():
            P = self.entries[v]
            aliases = [bt.source.path(o) for o in bt.collapsed[v] if o != bt.origin[v]]
            out.append(
                {
                    "id": v,
                    "path": bt.path(v),
                    "depth": depth[v],
                    "polygon": P.to_list(),
                    "weight": bt.weight(v),
                    "aspect_ratio": aspect_ratio(P),
                    "leaf": bt[v].is_leaf,
                    "synthetic": bt.is_synthetic(v),
                    "aliases": aliases,
                }
            )
        return {"method": self.method, "entries": out}

    def to_json(self) -> str:
        return _jsonio.dumps(self.to_document(), indent=None)


_PALETTE = (
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
    "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6", "#d4a6c8",
)


def _svg_points(poly: Iterable) -> str:
    return " ".join(f"{float(x)!r},{1.0 - float(y)!r}" for x, y in poly)


def partition_to_svg(p: PolygonalPartition, outlines: bool = False) -> str:
    """SVG with one filled polygon per leaf, colored by depth.

    The y axis is flipped so the region's origin sits at the bottom left.
    With ``outlines`` the internal nodes are drawn as unfilled outlines.
    """
    bt = p.binary_tree
    depth = bt.depths()
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1 1" width="800" height="800">',
    ]
    for v in bt.preorder():
        P = p.entries[v]
        if bt[v].is_leaf:
            color = _PALETTE[depth[v] % len(_PALETTE)]
            lines.append(
                f'<polygon points="{_svg_points(P.vertices)}" fill="{color}" '
                f'stroke="#000000" stroke-width="0.001"/>'
            )
        elif outlines:
            lines.append(
                f'<polygon points="{_svg_points(P.vertices)}" fill="none" '
                f'stroke="#333333" stroke-width="0.001"/>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _cutter(method: str, cfg: PartitionConfig) -> Callable[[int, ConvexPolygon, float], Pieces]:
    if method == "angular":
        return lambda v, P, a: angular_cut(P, a)
    if method == "greedy":
        return lambda v, P, a: greedy_cut(P, a, cfg)
    if method == "random":
        return lambda v, P, a: random_cut(P, a, np.random.default_rng([int(cfg.seed), v]))
    if method == "greedy_rect":
        return lambda v, P, a: greedy_rect_cut(P, a)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def _split(bt: BinaryTree, v: int, P: ConvexPolygon, cut_fn) -> tuple[list[tuple[int, ConvexPolygon]], Cut]:
    c1, c2 = bt.children(v)
    w1, w2 = bt.weight(c1), bt.weight(c2)
    # the lighter child gets the requested piece; the first child on ties
    small, big = (c1, c2) if w1 <= w2 else (c2, c1)
    a = min(w1, w2) / (w1 + w2)
    if a >= 0.5:
        a = 0.5
    P1, P2, cut = cut_fn(v, P, a)
    return [(small, P1), (big, P2)], cut


def _run(bt: BinaryTree, start: int, P0: ConvexPolygon, cut_fn, entries: dict, cuts: dict) -> None:
    stack = [(start, P0)]
    while stack:
        v, P = stack.pop()
        entries[v] = P
        if bt[v].is_leaf:
            continue
        kids, cut = _split(bt, v, P, cut_fn)
        cuts[v] = cut
        stack.extend(kids)


def partition(
    tree: BinaryTree | WeightedTree,
    method: str = "greedy",
    cfg: Optional[PartitionConfig] = None,
) -> PolygonalPartition:
    """Assign nested convex polygons to every node of a binary tree.

    A non-binary :class:`WeightedTree` is transformed with ``to_binary``
    first. The root gets the unit square.
    """
    method = method.replace("-", "_")
    cfg = cfg or PartitionConfig()
    bt = tree if isinstance(tree, BinaryTree) else to_binary(tree)
    cut_fn = _cutter(method, cfg)
    if method == "greedy_rect":
        root = polygon_from_rect(0.0, 0.0, 1.0, 1.0)
    else:
        root = unit_square()
    entries: dict[int, ConvexPolygon] = {}
    cuts: dict[int, Cut] = {}
    if cfg.threads <= 1 or len(bt) < 64:
        _run(bt, bt.root, root, cut_fn, entries, cuts)
    else:
        # expand the top of the tree serially, then hand subtrees to workers
        frontier = [(bt.root, root)]
        while len(frontier) < 4 * cfg.threads:
            expandable = [i for i, (v, _) in enumerate(frontier) if not bt[v].is_leaf]
            if not expandable:
                break
            v, P = frontier.pop(expandable[0])
            entries[v] = P
            kids, cut = _split(bt, v, P, cut_fn)
            cuts[v] = cut
            frontier.extend(kids)
        parts = [({}, {}) for _ in frontier]
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            futures = [
                pool.submit(_run, bt, v, P, cut_fn, e, c) for (v, P), (e, c) in zip(frontier, parts)
            ]
            for f in futures:
                f.result()
        for e, c in parts:
            entries.update(e)
            cuts.update(c)
    ordered = {v: entries[v] for v in bt.preorder()}
    return PolygonalPartition(ordered, method, bt, cuts)


def check_partition(p: PolygonalPartition, rtol: float = 1e-8) -> None:
    """Raise :class:`InvariantViolation` if areas or tiling are off."""
    bt = p.binary_tree
    for v in bt.preorder():
        P = p.entries[v]
        A = area(P)
        w = bt.weight(v)
        if abs(A - w) > rtol * w:
            raise InvariantViolation(f"node {v}: area {A!r} differs from weight {w!r}")
        kids = bt.children(v)
        if kids:
            s = sum(area(p.entries[c]) for c in kids)
            if abs(s - A) > rtol * A:
                raise InvariantViolation(f"node {v}: children areas sum to {s!r}, parent {A!r}")


def _aggregate(values: list[float], depths: list[int]) -> PartitionStats:
    per: dict[int, float] = {}
    for r, d in zip(values, depths):
        per[d] = max(per.get(d, -math.inf), r)
    per_depth = tuple(per.get(d, math.nan) for d in range(max(per) + 1))
    return PartitionStats(
        avg_aspect_ratio=math.fsum(values) / len(values),
        max_aspect_ratio=max(values),
        per_depth_max=per_depth,
        polygon_count=len(values),
    )


def stats(p: PolygonalPartition) -> PartitionStats:
    """Aspect-ratio summary over every node polygon, root included."""
    depth = p.binary_tree.depths()
    ids = list(p.binary_tree.preorder())
    return _aggregate([aspect_ratio(p.entries[v]) for v in ids], [depth[v] for v in ids])


def stats_from_document(doc: dict) -> PartitionStats:
    """Recompute :class:`PartitionStats` from a partition JSON document.

    Stored per-entry aspect ratios are used when present, because they were
    computed in local coordinates and are more precise than re-deriving them
    from the absolute vertex lists.
    """
    try:
        entries = doc["entries"]
        values, depths = [], []
        for e in entries:
            if "aspect_ratio" in e:
                r = float(e["aspect_ratio"])
            else:
                pts = np.asarray(e["polygon"], float)
                r = aspect_ratio(ConvexPolygon.from_points(pts - pts[0], origin=tuple(pts[0])))
            values.append(r)
            depths.append(int(e["depth"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"not a partition document: {exc}") from None
    if not values:
        raise MalformedDocument("partition document has no entries")
    return _aggregate(values, depths)
