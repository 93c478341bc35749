"""Independent reference implementations used by the tests.

Nothing here imports the package under test. The oracles are slow and
simple on purpose: plain Python loops, half-plane clipping, bisection and
exhaustive enumeration.
"""

from __future__ import annotations

import itertools
import math
from typing import Sequence

Point = tuple[float, float]


# ---------------------------------------------------------------------------
# planar polygons


def shoelace(pts: Sequence[Point]) -> float:
    s = 0.0
    n = len(pts)
    for i in range(n):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return 0.5 * s


def clip(pts: Sequence[Point], normal: Point, t: float) -> list[Point]:
    """Sutherland-Hodgman clip of a convex polygon to ``normal . x <= t``."""
    nx, ny = normal
    out: list[Point] = []
    n = len(pts)
    for i in range(n):
        p, q = pts[i], pts[(i + 1) % n]
        fp = nx * p[0] + ny * p[1] - t
        fq = nx * q[0] + ny * q[1] - t
        if fp <= 0:
            out.append(p)
        if (fp < 0 < fq) or (fq < 0 < fp):
            s = fp / (fp - fq)
            out.append((p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])))
    return out


def bisection_cut(pts: Sequence[Point], normal: Point, a: float, iters: int = 200) -> tuple[float, list[Point]]:
    """Offset ``t`` with area{normal . x <= t} = a * area, by bisection.

    Returns the offset and the clipped polygon.
    """
    proj = [normal[0] * x + normal[1] * y for x, y in pts]
    lo, hi = min(proj), max(proj)
    target = a * shoelace(pts)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if shoelace(clip(pts, normal, mid)) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 0.0:
            break
    t = 0.5 * (lo + hi)
    return t, clip(pts, normal, t)


def sampled_diameter(pts: Sequence[Point], per_edge: int = 200) -> float:
    """Largest distance between points sampled densely on the boundary."""
    samples: list[Point] = []
    n = len(pts)
    for i in range(n):
        p, q = pts[i], pts[(i + 1) % n]
        for j in range(per_edge):
            s = j / per_edge
            samples.append((p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])))
    best = 0.0
    for i in range(len(samples)):
        xi, yi = samples[i]
        for j in range(i + 1, len(samples)):
            d = math.hypot(xi - samples[j][0], yi - samples[j][1])
            if d > best:
                best = d
    return best


def point_in_convex(pts: Sequence[Point], x: Point, tol: float = 1e-9) -> bool:
    n = len(pts)
    scale = max(max(abs(c) for p in pts for c in p), 1.0)
    for i in range(n):
        p, q = pts[i], pts[(i + 1) % n]
        ex, ey = q[0] - p[0], q[1] - p[1]
        L = math.hypot(ex, ey)
        if L == 0:
            continue
        cross = (ex * (x[1] - p[1]) - ey * (x[0] - p[0])) / L
        if cross < -tol * scale:
            return False
    return True


# ---------------------------------------------------------------------------
# A* volume estimates


def ball_volume(d: int, r: float) -> float:
    return math.pi ** (d / 2) / math.gamma(d / 2 + 1) * r**d


def direct_astar(children: Sequence[Sequence[int]], labels: Sequence[float], v: int, d: int) -> float:
    """A*(v) straight from the recurrence, recursively, via math.gamma."""
    if not children[v]:
        return ball_volume(d, 0.5)
    pad = ball_volume(d, labels[v] / 4) ** (1.0 / d)
    return math.fsum((direct_astar(children, labels, c, d) ** (1.0 / d) + pad) ** d for c in children[v])


# ---------------------------------------------------------------------------
# guillotine layouts for slack partitions


def _shrunk_ar(sides: tuple[float, float], g: float) -> float:
    """Best aspect ratio of a box of volume ``g * vol`` inside a 2D cell."""
    lo, hi = sorted(sides)
    if g * hi <= lo:
        return 1.0  # a square of side sqrt(g * lo * hi) <= lo fits
    return g * hi / lo  # keep the short side, cut the long one to g * hi


def _shrink_cell(box: tuple[float, float], volume: float) -> tuple[float, float]:
    """Cut the long side first, keeping the box as square as possible."""
    lo, hi = sorted(box)
    if volume / lo >= lo:
        return (lo, volume / lo)
    r = math.sqrt(volume)
    return (r, r)


def guillotine_minmax(weights: Sequence[float], sides: tuple[float, float], eps: float) -> float:
    """Minimum over guillotine layouts of the maximum box aspect ratio.

    A layout recursively splits a cell into two along either axis. The
    split point is proportional to the two groups' weights, or tight on
    one side (that side gets exactly its weight as volume). A cell holding
    items of total weight ``w`` may first be shrunk to volume
    ``w / (1 - eps)``. Each item finally gets a box of volume exactly
    ``w_i`` of the best shape inside its cell. Exhaustive over all
    unordered subset splits for small ``k``.
    """
    assert math.fsum(weights) <= (1 - eps) * sides[0] * sides[1] * (1 + 1e-12)

    def rec(items: tuple[int, ...], box: tuple[float, float], may_shrink: bool = True) -> float:
        cell = box[0] * box[1]
        if len(items) == 1:
            return _shrunk_ar(box, weights[items[0]] / cell)
        wtot = math.fsum(weights[i] for i in items)
        best = math.inf
        if may_shrink and cell > wtot / (1 - eps) * (1 + 1e-12):
            best = rec(items, _shrink_cell(box, wtot / (1 - eps)), False)
        first, rest = items[0], items[1:]
        for r in range(0, len(rest)):
            for combo in itertools.combinations(rest, r):
                left = (first,) + combo
                right = tuple(i for i in rest if i not in combo)
                wl = math.fsum(weights[i] for i in left)
                wr = wtot - wl
                for f in {wl / wtot, wl / cell, 1 - wr / cell}:
                    if not 0 < f < 1 or f * cell < wl * (1 - 1e-12) or (1 - f) * cell < wr * (1 - 1e-12):
                        continue
                    for axis in (0, 1):
                        b1 = list(box)
                        b2 = list(box)
                        b1[axis] = box[axis] * f
                        b2[axis] = box[axis] * (1 - f)
                        m = max(rec(left, tuple(b1)), rec(right, tuple(b2)))
                        best = min(best, m)
        return best

    return rec(tuple(range(len(weights))), tuple(sides))
