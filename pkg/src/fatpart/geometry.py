"""Convex polygons in the plane and axis-aligned boxes in R^d.

A :class:`ConvexPolygon` keeps its vertices relative to an ``origin`` (an
absolute point, usually one of its own vertices). Every intrinsic quantity
(area, diameter, edge directions, cuts) is computed from the local
coordinates, so a polygon far smaller than the unit square's float
resolution keeps full relative precision. ``vertices`` gives absolute
coordinates for output and containment tests.

Orientation conventions: a cut orientation ``theta`` is the direction of the
cut line, canonicalized to ``[0, pi)``. ``small_side="left"`` places the
requested-area piece to the left of the direction ``(cos theta, sin theta)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Optional, Sequence

import numpy as np

from .exceptions import DegenerateCut, PreconditionViolated

__all__ = [
    "ANGLE_TOL",
    "ConvexPolygon",
    "HyperRect",
    "Cut",
    "unit_square",
    "area",
    "diameter",
    "aspect_ratio",
    "rect_aspect_ratio",
    "cut_at_orientation",
    "cut_with_normal",
    "min_edge_angle",
    "best_angular_orientation",
    "edge_orientations",
    "phi_separated",
    "sweep_cuts",
]

ANGLE_TOL = 1e-9
MERGE_TOL = 1e-12  # relative to polygon extent
TURN_TOL = 1e-12  # sine of the turn angle
MIN_AREA = 1e-300

SmallSide = Literal["left", "right"]


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    local: np.ndarray
    origin: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        arr = np.array(self.local, dtype=float).reshape(-1, 2)
        arr.setflags(write=False)
        object.__setattr__(self, "local", arr)
        object.__setattr__(self, "origin", (float(self.origin[0]), float(self.origin[1])))

    @classmethod
    def from_points(cls, points, origin=None, check: bool = True) -> "ConvexPolygon":
        """Build from absolute points (or local points when ``origin`` given).

        Clockwise input is reversed. Raises ``ValueError`` for fewer than
        three vertices, zero area or a non-convex vertex sequence.
        """
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        if origin is None:
            origin = (0.0, 0.0)
        if check:
            if len(pts) < 3:
                raise ValueError("a polygon needs at least 3 vertices")
            if _signed_area(pts) < 0:
                pts = pts[::-1]
            if not _signed_area(pts) > 0:
                raise ValueError("polygon has zero area")
            if not _is_convex(pts):
                raise ValueError("polygon is not convex")
        return cls(pts, origin)

    @property
    def vertices(self) -> np.ndarray:
        return self.local + np.asarray(self.origin)

    @property
    def k(self) -> int:
        return len(self.local)

    def __len__(self) -> int:
        return len(self.local)

    def __repr__(self) -> str:
        return f"ConvexPolygon(k={self.k}, area={area(self):.6g})"

    def to_list(self) -> list[list[float]]:
        return [[float(x), float(y)] for x, y in self.vertices]

    def contains_point(self, pt, tol: float = 1e-9) -> bool:
        q = np.asarray(pt, float) - np.asarray(self.origin)
        v = self.local
        e = np.roll(v, -1, axis=0) - v
        w = q - v
        cross = e[:, 0] * w[:, 1] - e[:, 1] * w[:, 0]
        lengths = np.hypot(e[:, 0], e[:, 1])
        return bool(np.all(cross >= -tol * lengths))


def unit_square() -> ConvexPolygon:
    return ConvexPolygon(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]))


@dataclass(frozen=True, eq=False)
class HyperRect:
    """Axis-aligned box ``origin + [0, sides]`` in R^d.

    The upper corner is stored rather than recomputed, so boxes produced by
    splitting a common parent share bit-identical faces. Build from corners
    with :meth:`from_bounds`.
    """

    origin: np.ndarray
    sides: np.ndarray
    hi: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        o = np.array(self.origin, dtype=float).reshape(-1)
        if self.hi is None:
            s = np.array(self.sides, dtype=float).reshape(-1)
            if o.shape != s.shape:
                raise ValueError("origin and sides must be d-vectors with d >= 1")
            h = o + s
        else:
            h = np.array(self.hi, dtype=float).reshape(-1)
            if o.shape != h.shape:
                raise ValueError("corners must be d-vectors with d >= 1")
            s = h - o
        if o.size < 1:
            raise ValueError("origin and sides must be d-vectors with d >= 1")
        if not np.all(s > 0):
            raise ValueError("all sides must be positive")
        for arr in (o, s, h):
            arr.setflags(write=False)
        object.__setattr__(self, "origin", o)
        object.__setattr__(self, "sides", s)
        object.__setattr__(self, "hi", h)

    @classmethod
    def from_bounds(cls, lo, hi) -> "HyperRect":
        return cls(lo, None, hi)  # type: ignore[arg-type]

    @classmethod
    def unit(cls, dim: int) -> "HyperRect":
        return cls(np.zeros(dim), np.ones(dim))

    @property
    def dim(self) -> int:
        return self.sides.size

    @property
    def volume(self) -> float:
        return float(np.prod(self.sides))

    @property
    def center(self) -> np.ndarray:
        return self.origin + 0.5 * self.sides

    @property
    def upper(self) -> np.ndarray:
        return self.hi

    @property
    def diameter(self) -> float:
        return float(np.sqrt(np.sum(self.sides**2)))

    def scaled(self, factor: float, center) -> "HyperRect":
        c = np.asarray(center, float)
        return HyperRect.from_bounds(c + factor * (self.origin - c), c + factor * (self.hi - c))

    def contains(self, other: "HyperRect", tol: float = 1e-12) -> bool:
        return bool(np.all(other.origin >= self.origin - tol) and np.all(other.upper <= self.upper + tol))

    def contains_point(self, pt, strict: bool = False) -> bool:
        p = np.asarray(pt, float)
        if strict:
            return bool(np.all(p > self.origin) and np.all(p < self.upper))
        return bool(np.all(p >= self.origin) and np.all(p <= self.upper))

    def overlap_volume(self, other: "HyperRect") -> float:
        lo = np.maximum(self.origin, other.origin)
        hi = np.minimum(self.upper, other.upper)
        return float(np.prod(np.clip(hi - lo, 0.0, None)))


@dataclass(frozen=True)
class Cut:
    orientation: float
    endpoints: tuple[tuple[float, float], tuple[float, float]]
    small_side: str = "left"
    normal: Optional[tuple[float, float]] = field(default=None, compare=False)


# ---------------------------------------------------------------------------
# scalar measures


def _signed_area(v: np.ndarray) -> float:
    w = v - v[0]
    x, y = w[:, 0], w[:, 1]
    return 0.5 * float(np.dot(x[:-1], y[1:]) - np.dot(x[1:], y[:-1]))


def _is_convex(v: np.ndarray) -> bool:
    a = v - np.roll(v, 1, axis=0)
    b = np.roll(v, -1, axis=0) - v
    cross = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
    scale = float(np.max(np.ptp(v, axis=0))) ** 2
    return bool(np.all(cross >= -1e-12 * scale))


def area(P: ConvexPolygon) -> float:
    return _signed_area(P.local)


def _pairwise_sq(v: np.ndarray) -> np.ndarray:
    d = v[:, None, :] - v[None, :, :]
    return np.einsum("ijk,ijk->ij", d, d)


def diameter(P: ConvexPolygon) -> float:
    """Largest vertex-to-vertex distance (all pairs; k is small)."""
    return float(math.sqrt(np.max(_pairwise_sq(P.local))))


def aspect_ratio(P: ConvexPolygon) -> float:
    """``diameter**2 / area``; the unit square scores 2."""
    return float(np.max(_pairwise_sq(P.local))) / area(P)


def rect_aspect_ratio(R: HyperRect) -> float:
    return float(np.max(R.sides) / np.min(R.sides))


# ---------------------------------------------------------------------------
# orientations


def _canon(theta):
    t = np.mod(theta, math.pi)
    return np.where(t >= math.pi, 0.0, t) if isinstance(t, np.ndarray) else (0.0 if t >= math.pi else float(t))


def edge_orientations(P: ConvexPolygon) -> np.ndarray:
    """Line orientation of each edge ``(v_i, v_{i+1})`` in ``[0, pi)``."""
    e = np.roll(P.local, -1, axis=0) - P.local
    return _canon(np.arctan2(e[:, 1], e[:, 0]))


def _line_angle(t1, t2):
    d = np.abs(np.mod(np.asarray(t1) - np.asarray(t2), math.pi))
    return np.minimum(d, math.pi - d)


def min_edge_angle(P: ConvexPolygon, theta: float) -> float:
    return float(np.min(_line_angle(edge_orientations(P), theta)))


def best_angular_orientation(P: ConvexPolygon) -> float:
    """Orientation maximizing the smallest angle to any edge line.

    Returns the midpoint of the widest circular gap between the sorted edge
    orientations (mod pi). Gaps within ``ANGLE_TOL`` of the widest tie, and
    the smallest resulting orientation wins.
    """
    th = np.sort(edge_orientations(P))
    distinct = [float(th[0])]
    for t in th[1:]:
        if t - distinct[-1] > ANGLE_TOL:
            distinct.append(float(t))
    if len(distinct) > 1 and distinct[0] + math.pi - distinct[-1] <= ANGLE_TOL:
        distinct.pop()
    if len(distinct) == 1:
        return float(_canon(distinct[0] + math.pi / 2))
    nxt = distinct[1:] + [distinct[0] + math.pi]
    gaps = [b - a for a, b in zip(distinct, nxt)]
    widest = max(gaps)
    mids = [_canon(a + g / 2) for a, g in zip(distinct, gaps) if g >= widest - ANGLE_TOL]
    return float(min(mids))


def _on_side(p: np.ndarray, q: np.ndarray, bounds, tol: float) -> set[str]:
    x0, y0, x1, y1 = bounds
    sides = set()
    if abs(p[1] - y1) <= tol and abs(q[1] - y1) <= tol:
        sides.add("top")
    if abs(p[1] - y0) <= tol and abs(q[1] - y0) <= tol:
        sides.add("bottom")
    if abs(p[0] - x0) <= tol and abs(q[0] - x0) <= tol:
        sides.add("left")
    if abs(p[0] - x1) <= tol and abs(q[0] - x1) <= tol:
        sides.add("right")
    return sides


_OPPOSITE = {"top": "bottom", "bottom": "top", "left": "right", "right": "left"}


def phi_separated(P: ConvexPolygon, phi: float, bounds=(0.0, 0.0, 1.0, 1.0), tol: float = ANGLE_TOL) -> bool:
    """True iff every pair of edges meets at a line angle >= ``phi`` or lies
    on opposite sides of the enclosing square ``bounds = (x0, y0, x1, y1)``."""
    th = edge_orientations(P)
    ang = _line_angle(th[:, None], th[None, :])
    v = P.vertices
    w = np.roll(v, -1, axis=0)
    k = len(v)
    sides = [None] * k
    for i in range(k):
        for j in range(i + 1, k):
            if ang[i, j] >= phi - tol:
                continue
            if sides[i] is None:
                sides[i] = _on_side(v[i], w[i], bounds, tol)
            if sides[j] is None:
                sides[j] = _on_side(v[j], w[j], bounds, tol)
            if not any(_OPPOSITE[s] in sides[j] for s in sides[i]):
                return False
    return True


# ---------------------------------------------------------------------------
# area-fraction sweep


@dataclass
class SweepResult:
    """Per-normal solution of ``area({x in P : n.x <= t}) = a * area(P)``.

    All coordinates are relative to the minimum-projection vertex ``p`` of
    each normal, so a tiny piece around ``p`` is represented exactly.
    """

    normals: np.ndarray  # (M, 2)
    p: np.ndarray  # (M,) index of the lowest vertex
    q: np.ndarray  # (M,) index of the highest vertex
    vrel: np.ndarray  # (M, k, 2)
    small: np.ndarray  # (M, k) vertex lies on the requested-area side
    active: np.ndarray  # (M, k) edge i -> i+1 is crossed by the cut
    chord: np.ndarray  # (M, k, 2) crossing point on each active edge
    target: np.ndarray  # (M,)
    total: np.ndarray  # (M,)
    diam2_small: np.ndarray
    diam2_big: np.ndarray

    @property
    def ar_small(self) -> np.ndarray:
        return self.diam2_small / self.target

    @property
    def ar_big(self) -> np.ndarray:
        return self.diam2_big / (self.total - self.target)


def _quad_root(f0, g, rem, width):
    """Smallest tau in [0, width] with f0*tau + g*tau**2/2 = rem."""
    disc = np.maximum(f0 * f0 + 2.0 * g * rem, 0.0)
    denom = f0 + np.sqrt(disc)
    with np.errstate(divide="ignore", invalid="ignore"):
        tau = np.where(denom > 0, 2.0 * rem / denom, 0.0)
    resid = f0 * tau + 0.5 * g * tau * tau - rem
    bad = ~np.isfinite(tau) | (tau < 0) | (tau > width * (1 + 1e-12)) | (
        np.abs(resid) > 1e-12 * np.maximum(rem, np.abs(f0 * width) + 1e-300)
    )
    if np.any(bad):
        lo = np.zeros(int(bad.sum()))
        hi = width[bad].astype(float)
        f0b, gb, rb = f0[bad], g[bad], rem[bad]
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            below = f0b * mid + 0.5 * gb * mid * mid < rb
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        tau = tau.copy()
        tau[bad] = 0.5 * (lo + hi)
    return np.clip(tau, 0.0, width)


def sweep_cuts(V: np.ndarray, normals: np.ndarray, a: float, diameters: bool = True) -> SweepResult:
    """Solve the area-``a`` cut for every normal direction at once.

    ``V`` are CCW local vertices (k, 2); ``normals`` unit vectors (M, 2). The
    requested piece is the sub-level set ``{x : n.x <= t}``. The chord length
    along the sweep is piecewise linear in ``t``, so the swept area is
    piecewise quadratic and each piece is solved in closed form.

    Piece diameters are only needed to score candidates and are skipped
    when ``diameters`` is false.
    """
    V = np.asarray(V, float)
    N = np.atleast_2d(np.asarray(normals, float))
    k = len(V)
    M = len(N)
    rows = np.arange(M)[:, None]

    p = np.argmin(V @ N.T, axis=0)
    vrel = V[None, :, :] - V[p][:, None, :]
    h = np.maximum(np.einsum("mkd,md->mk", vrel, N), 0.0)
    tang = np.stack([-N[:, 1], N[:, 0]], axis=1)
    s = np.einsum("mkd,md->mk", vrel, tang)
    order = np.argsort(h, axis=1, kind="stable")
    L = h[rows, order]
    ranks = np.empty_like(order)
    ranks[rows, order] = np.arange(k)

    ia = np.arange(k)
    ib = (ia + 1) % k
    up = h[:, ib] > h[:, ia]
    lo = np.where(up, ia[None, :], ib[None, :])
    hi = np.where(up, ib[None, :], ia[None, :])
    hlo = h[rows, lo]
    hhi = h[rows, hi]
    slo = s[rows, lo]
    shi = s[rows, hi]
    dh = hhi - hlo
    with np.errstate(divide="ignore", invalid="ignore"):
        rate = np.where(dh > 0, (shi - slo) / dh, 0.0)
    sign = np.where(up, 1.0, -1.0)

    Lj, Lj1 = L[:, :-1], L[:, 1:]
    dL = Lj1 - Lj
    act = (hlo[:, None, :] <= Lj[:, :, None]) & (hhi[:, None, :] >= Lj1[:, :, None]) & (dh[:, None, :] > 0)
    act &= (dL > 0)[:, :, None]
    wsign = np.where(act, sign[:, None, :], 0.0)
    s_start = slo[:, None, :] + (Lj[:, :, None] - hlo[:, None, :]) * rate[:, None, :]
    s_end = slo[:, None, :] + (Lj1[:, :, None] - hlo[:, None, :]) * rate[:, None, :]
    f_start = np.abs(np.sum(wsign * s_start, axis=2))
    f_end = np.abs(np.sum(wsign * s_end, axis=2))
    slab = 0.5 * (f_start + f_end) * dL
    C = np.concatenate([np.zeros((M, 1)), np.cumsum(slab, axis=1)], axis=1)
    total = C[:, -1]
    target = a * total

    cond = (C[:, 1:] >= target[:, None]) & (dL > 0)
    j = np.argmax(cond, axis=1)
    r = rows[:, 0]
    rem = np.maximum(target - C[r, j], 0.0)
    width = dL[r, j]
    f0 = f_start[r, j]
    g = (f_end[r, j] - f0) / width
    tau = _quad_root(f0, g, rem, width)

    active = act[r, j]
    with np.errstate(divide="ignore", invalid="ignore"):
        mu = np.where(active, ((L[r, j][:, None] - hlo) + tau[:, None]) / dh, 0.0)
    vlo = vrel[rows, lo]
    vhi = vrel[rows, hi]
    chord = vlo + mu[:, :, None] * (vhi - vlo)

    small = ranks <= j[:, None]
    if not diameters:
        nan = np.full(M, np.nan)
        return SweepResult(
            normals=N, p=p, q=order[:, -1], vrel=vrel, small=small, active=active, chord=chord,
            target=target, total=total, diam2_small=nan, diam2_big=nan,
        )
    i1 = np.argmax(active, axis=1)
    i2 = k - 1 - np.argmax(active[:, ::-1], axis=1)
    c1 = chord[r, i1]
    c2 = chord[r, i2]
    D2 = _pairwise_sq(V)

    def piece_diam2(mask):
        pair = mask[:, :, None] & mask[:, None, :]
        best = np.max(np.where(pair, D2[None], 0.0), axis=(1, 2))
        for c in (c1, c2):
            d = np.sum((vrel - c[:, None, :]) ** 2, axis=2)
            best = np.maximum(best, np.max(np.where(mask, d, 0.0), axis=1))
        return np.maximum(best, np.sum((c1 - c2) ** 2, axis=1))

    return SweepResult(
        normals=N, p=p, q=order[:, -1], vrel=vrel, small=small, active=active, chord=chord,
        target=target, total=total, diam2_small=piece_diam2(small), diam2_big=piece_diam2(~small),
    )


def _cleanup(pts: np.ndarray) -> np.ndarray:
    """Merge near-duplicate vertices and drop collinear or reflex ones.

    Tolerances are relative to the piece's own extent, so the rule behaves
    the same at every scale. Pure-Python floats: k is tiny and numpy call
    overhead would dominate.
    """
    P = [(float(x), float(y)) for x, y in pts]
    if len(P) < 3:
        return np.asarray(pts, float)
    xs = [p[0] for p in P]
    ys = [p[1] for p in P]
    tol = MERGE_TOL * max(max(xs) - min(xs), max(ys) - min(ys))
    keep = [P[0]]
    for q in P[1:]:
        if math.hypot(q[0] - keep[-1][0], q[1] - keep[-1][1]) > tol:
            keep.append(q)
    while len(keep) > 1 and math.hypot(keep[0][0] - keep[-1][0], keep[0][1] - keep[-1][1]) <= tol:
        keep.pop()
    while len(keep) > 3:
        k = len(keep)
        worst, wi = math.inf, -1
        for i in range(k):
            px, py = keep[i - 1]
            cx, cy = keep[i]
            nx, ny = keep[(i + 1) % k]
            ax, ay = cx - px, cy - py
            bx, by = nx - cx, ny - cy
            norm = math.hypot(ax, ay) * math.hypot(bx, by)
            st = (ax * by - ay * bx) / norm if norm > 0 else -math.inf
            if st < worst:
                worst, wi = st, i
        if worst > TURN_TOL:
            break
        del keep[wi]
    return np.array(keep)


def _pieces(P: ConvexPolygon, sw: SweepResult, m: int) -> tuple[ConvexPolygon, ConvexPolygon, tuple]:
    vrel = sw.vrel[m]
    small, active, chord = sw.small[m], sw.active[m], sw.chord[m]
    k = len(vrel)
    sp: list[np.ndarray] = []
    bp: list[np.ndarray] = []
    cpts: list[np.ndarray] = []
    for i in range(k):
        (sp if small[i] else bp).append(vrel[i])
        if active[i]:
            sp.append(chord[i])
            bp.append(chord[i])
            cpts.append(chord[i])
    base = np.asarray(P.origin) + P.local[sw.p[m]]
    q = sw.q[m]
    small_local = _cleanup(np.array(sp))
    big_local = _cleanup(np.array(bp) - vrel[q])
    pieces = []
    for loc, org in ((small_local, base), (big_local, base + vrel[q])):
        if len(loc) < 3 or not _signed_area(loc) > MIN_AREA:
            raise DegenerateCut("cut produced a piece with unrepresentable area")
        pieces.append(ConvexPolygon(loc, (org[0], org[1])))
    if len(cpts) < 2:
        cpts = cpts * 2 if cpts else [np.zeros(2), np.zeros(2)]
    ends = tuple(tuple(float(x) for x in base + c) for c in (cpts[0], cpts[-1]))
    return pieces[0], pieces[1], ends


def cut_with_normal(P: ConvexPolygon, normal, a: float) -> tuple[ConvexPolygon, ConvexPolygon, tuple]:
    """Cut ``P`` so that ``{x : normal.x <= t}`` has area ``a * area(P)``.

    Returns ``(P1, P2, endpoints)`` with ``P1`` the requested-area piece.
    """
    if not 0.0 < a < 1.0:
        raise PreconditionViolated(f"area fraction must lie in (0, 1), got {a}")
    n = np.asarray(normal, float)
    n = n / np.hypot(*n)
    if a > 0.5:
        # solve on the complementary side so the small piece stays anchored
        P2, P1, ends = cut_with_normal(P, -n, 1.0 - a)
        return P1, P2, ends
    if a * area(P) < MIN_AREA:
        raise DegenerateCut(f"requested piece area {a * area(P):g} underflows")
    sw = sweep_cuts(P.local, n[None, :], a, diameters=False)
    return _pieces(P, sw, 0)


def _normal_for(theta: float, small_side: str) -> np.ndarray:
    if small_side == "left":
        return np.array([math.sin(theta), -math.cos(theta)])
    if small_side == "right":
        return np.array([-math.sin(theta), math.cos(theta)])
    raise ValueError(f"small_side must be 'left' or 'right', got {small_side!r}")


def cut_at_orientation(
    P: ConvexPolygon, theta: float, a: float, small_side: SmallSide = "left"
) -> tuple[ConvexPolygon, ConvexPolygon, Cut]:
    """Cut ``P`` along a line of orientation ``theta`` into pieces of area
    fractions ``a`` (on ``small_side``) and ``1 - a``."""
    P1, P2, ends = cut_with_normal(P, _normal_for(theta, small_side), a)
    n = _normal_for(theta, small_side)
    return P1, P2, Cut(float(_canon(theta)), ends, small_side, (float(n[0]), float(n[1])))


def normal_orientation(normal) -> tuple[float, str]:
    """Inverse of the (theta, small_side) -> normal convention."""
    nx, ny = float(normal[0]), float(normal[1])
    theta = math.atan2(nx, -ny) % (2 * math.pi)  # direction d = (-n_y, n_x)
    if theta >= math.pi:
        return float(_canon(theta - math.pi)), "right"
    return float(_canon(theta)), "left"


def interior_angles(P: ConvexPolygon) -> np.ndarray:
    v = P.local
    a = np.roll(v, 1, axis=0) - v
    b = np.roll(v, -1, axis=0) - v
    cross = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
    dot = np.einsum("ij,ij->i", a, b)
    return np.abs(np.arctan2(cross, dot))


def min_angle_bisector(P: ConvexPolygon) -> tuple[int, np.ndarray]:
    """Vertex with the smallest interior angle and its inward bisector."""
    ang = interior_angles(P)
    i = int(np.argmin(ang))
    v = P.local
    u1 = v[i - 1] - v[i]
    u2 = v[(i + 1) % len(v)] - v[i]
    b = u1 / np.hypot(*u1) + u2 / np.hypot(*u2)
    return i, b / np.hypot(*b)


def diameter_pair(P: ConvexPolygon) -> tuple[int, int]:
    D2 = _pairwise_sq(P.local)
    flat = int(np.argmax(D2))
    i, j = divmod(flat, len(D2))
    return (i, j) if i < j else (j, i)


def polygon_from_rect(x0: float, y0: float, w: float, h: float, origin=(0.0, 0.0)) -> ConvexPolygon:
    o = (origin[0] + x0, origin[1] + y0)
    return ConvexPolygon(np.array([[0.0, 0.0], [w, 0.0], [w, h], [0.0, h]]), o)


def clip_halfplane(points: np.ndarray, normal, offset: float) -> np.ndarray:
    """Sutherland-Hodgman clip of ``points`` to ``{x : normal.x <= offset}``."""
    n = np.asarray(normal, float)
    out = []
    k = len(points)
    for i in range(k):
        cur, nxt = points[i], points[(i + 1) % k]
        dc, dn = cur @ n - offset, nxt @ n - offset
        if dc <= 0:
            out.append(cur)
        if (dc < 0 < dn) or (dn < 0 < dc):
            t = dc / (dc - dn)
            out.append(cur + t * (nxt - cur))
    return np.array(out).reshape(-1, 2)


def points_area(points: Sequence) -> float:
    pts = np.asarray(points, float).reshape(-1, 2)
    return _signed_area(pts) if len(pts) >= 3 else 0.0
