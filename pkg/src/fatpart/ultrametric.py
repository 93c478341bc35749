"""Ultrametrics, 2-HSTs and their embedding into R^d.

The pipeline is:

1. round the ultrametric up to powers of two, giving a 2-HST;
2. compute volume estimates ``A*`` for every HST node;
3. give each node a box from a slack partition weighted by ``A*``;
4. shrink every subtree towards the centre of its parent's box, then map
   each point to the centre of its leaf box.

``A*`` values grow like ``label**d`` and overflow quickly in high dimension,
so they are carried as ``rho = A*^(1/d)`` and only exponentiated on request.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .exceptions import DimensionTooSmall, DuplicatePoints, MalformedDocument, NotUltrametric
from .geometry import HyperRect
from .slack import _slack_tree

__all__ = [
    "MetricSpace",
    "HST",
    "VolumeEstimates",
    "DistortionReport",
    "EmbeddingResult",
    "validate_ultrametric",
    "build_2hst",
    "ball_volume",
    "unit_ball_volume",
    "radius_for_volume",
    "compute_astar",
    "distortion_lower_bound",
    "embed",
    "distortion",
    "read_distance_csv",
    "write_points_csv",
]

ULTRA_RTOL = 1e-9


class MetricSpace:
    """Finite metric space given by a symmetric distance matrix.

    Raises ``MalformedDocument`` when the matrix is not square, symmetric,
    finite, zero exactly on the diagonal, or violates the triangle
    inequality by more than ``1e-9`` relative.
    """

    def __init__(self, D, names: Optional[Sequence[str]] = None, check_triangle: bool = True):
        D = np.array(D, dtype=float)
        if D.ndim != 2 or D.shape[0] != D.shape[1] or D.shape[0] < 1:
            raise MalformedDocument("distance matrix must be square and non-empty")
        n = D.shape[0]
        if not np.all(np.isfinite(D)):
            raise MalformedDocument("distances must be finite")
        if not np.array_equal(D, D.T):
            if not np.allclose(D, D.T, rtol=1e-12, atol=0.0):
                raise MalformedDocument("distance matrix must be symmetric")
            D = 0.5 * (D + D.T)
        if np.any(np.diag(D) != 0):
            raise MalformedDocument("distance matrix must have a zero diagonal")
        off = ~np.eye(n, dtype=bool)
        if np.any(D[off] <= 0):
            raise MalformedDocument("distinct points must have positive distance")
        if names is None:
            names = [f"p{i}" for i in range(n)]
        names = [str(s) for s in names]
        if len(names) != n:
            raise MalformedDocument("need one name per point")
        if len(set(names)) != n:
            raise MalformedDocument("point names must be unique")
        if check_triangle:
            for k in range(n):
                via = D[:, k][:, None] + D[k, :][None, :]
                if np.any(D > via * (1 + 1e-9)):
                    raise MalformedDocument("distances violate the triangle inequality")
        D.setflags(write=False)
        self.D = D
        self.names = tuple(names)

    @property
    def n(self) -> int:
        return self.D.shape[0]

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"MetricSpace(n={self.n})"

    def min_distance(self) -> float:
        if self.n < 2:
            return math.nan
        return float(np.min(self.D[~np.eye(self.n, dtype=bool)]))

    def spread(self) -> float:
        """Diameter over minimum distance (1 for fewer than two points)."""
        if self.n < 2:
            return 1.0
        return float(np.max(self.D)) / self.min_distance()


def validate_ultrametric(M: MetricSpace, rtol: float = ULTRA_RTOL) -> bool:
    """True iff ``D(x,z) <= max(D(x,y), D(y,z))`` for all triples."""
    D = M.D
    for y in range(M.n):
        bound = np.maximum(D[:, y][:, None], D[y, :][None, :])
        if np.any(D > bound * (1 + rtol)):
            return False
    return True


# ---------------------------------------------------------------------------
# HST


def _ceil_log2(x: np.ndarray) -> np.ndarray:
    """Exact ``ceil(log2(x))`` for positive floats."""
    m, e = np.frexp(x)
    return np.where(m == 0.5, e - 1, e).astype(np.int64)


@dataclass(eq=False)
class HST:
    """Hierarchically separated tree with labels halving per level.

    Leaves carry label ``1/2`` and sit at height 0; a node at height ``h >= 1``
    carries label ``2**(h-1)``. Distances are in units of the minimum
    input distance, which is stored as ``scale``.
    """

    children: list[tuple[int, ...]]
    parent: list[Optional[int]]
    height: list[int]
    leaf_map: list[int]  # point index -> leaf node id
    scale: float = 1.0
    alpha: float = 2.0
    root: int = 0
    point_of: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.point_of:
            self.point_of = {leaf: i for i, leaf in enumerate(self.leaf_map)}

    def __len__(self) -> int:
        return len(self.children)

    @property
    def root_level(self) -> int:
        """Exponent ``L`` of the root label ``2**L`` (0 for a single leaf)."""
        return max(self.height[self.root] - 1, 0)

    def label(self, v: int) -> float:
        return math.ldexp(1.0, self.height[v] - 1)

    def labels(self) -> np.ndarray:
        return np.array([self.label(v) for v in range(len(self))])

    def is_leaf(self, v: int) -> bool:
        return not self.children[v]

    def preorder(self) -> list[int]:
        out, stack = [], [self.root]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(reversed(self.children[v]))
        return out

    def internal_nodes(self) -> list[int]:
        return [v for v in self.preorder() if self.children[v]]

    def ancestors(self, v: int) -> list[int]:
        out = []
        p = self.parent[v]
        while p is not None:
            out.append(p)
            p = self.parent[p]
        return out

    def nca(self, x: int, y: int) -> int:
        """Nearest common ancestor of the leaves of points ``x`` and ``y``."""
        a, b = self.leaf_map[x], self.leaf_map[y]
        while a != b:
            a, b = self.parent[a], self.parent[b]
        return a

    def distance(self, x: int, y: int) -> float:
        """HST distance in the caller's original units."""
        if x == y:
            return 0.0
        return self.label(self.nca(x, y)) * self.scale

    def distance_matrix(self) -> np.ndarray:
        n = len(self.leaf_map)
        out = np.zeros((n, n))
        for x in range(n):
            for y in range(x + 1, n):
                out[x, y] = out[y, x] = self.distance(x, y)
        return out


def _components(adj: np.ndarray) -> list[np.ndarray]:
    n = adj.shape[0]
    seen = np.zeros(n, dtype=bool)
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp = np.zeros(n, dtype=bool)
        comp[s] = True
        frontier = comp.copy()
        while frontier.any():
            nxt = adj[frontier].any(axis=0) & ~comp
            comp |= nxt
            frontier = nxt
        seen |= comp
        comps.append(np.flatnonzero(comp))
    return comps


def build_2hst(M: MetricSpace) -> HST:
    """Round an ultrametric up to powers of two and build the matching tree.

    Distances are first divided by the minimum distance. Points at rounded
    distance ``2**l`` meet at a node of label ``2**l``; unary padding nodes
    keep every leaf at height 0.
    """
    if not validate_ultrametric(M):
        raise NotUltrametric("distance matrix is not an ultrametric")
    n = M.n
    if n == 1:
        return HST([()], [None], [0], [0], scale=1.0)
    scale = M.min_distance()
    Dn = np.asarray(M.D) / scale
    lev = np.zeros((n, n), dtype=np.int64)
    off = ~np.eye(n, dtype=bool)
    lev[off] = np.maximum(_ceil_log2(Dn[off]), 0)
    lev[~off] = -1
    H = int(lev.max()) + 1

    children: list[list[int]] = []
    parent: list[Optional[int]] = []
    height: list[int] = []
    leaf_map = [0] * n

    def add(h: int, par: Optional[int]) -> int:
        children.append([])
        parent.append(par)
        height.append(h)
        if par is not None:
            children[par].append(len(children) - 1)
        return len(children) - 1

    # depth-first with an explicit stack; children are created in order of
    # their smallest member so ids come out in preorder
    stack: list[tuple[np.ndarray, int, Optional[int]]] = [(np.arange(n), H, None)]
    while stack:
        members, h, par = stack.pop()
        v = add(h, par)
        if h == 0:
            leaf_map[int(members[0])] = v
            continue
        sub = lev[np.ix_(members, members)] < h - 1
        groups = [members[c] for c in _components(sub)]
        for g in reversed(groups):
            stack.append((g, h - 1, v))
    return HST([tuple(c) for c in children], parent, height, leaf_map, scale=scale)


# ---------------------------------------------------------------------------
# volumes


def unit_ball_volume(d: int) -> float:
    """Volume of the unit ball in R^d via ``V_d = V_{d-2} * 2 pi / d``."""
    if d < 0:
        raise ValueError("dimension must be non-negative")
    v = 1.0 if d % 2 == 0 else 2.0
    for k in range(2 + d % 2, d + 1, 2):
        v *= 2.0 * math.pi / k
    return v


def ball_volume(d: int, r: float) -> float:
    if d < 1:
        raise ValueError("dimension must be at least 1")
    if not r > 0:
        raise ValueError("radius must be positive")
    return unit_ball_volume(d) * r**d


def radius_for_volume(d: int, V: float) -> float:
    """Radius of the ``d``-ball of volume ``V``."""
    if d < 1:
        raise ValueError("dimension must be at least 1")
    if not V > 0:
        raise ValueError("volume must be positive")
    return (V / unit_ball_volume(d)) ** (1.0 / d)


@dataclass(eq=False)
class VolumeEstimates:
    """Per-node volume estimates, stored as ``rho = A*^(1/d)``."""

    rho: np.ndarray
    dim: int

    def __getitem__(self, v: int) -> float:
        return float(self.rho[v]) ** self.dim

    def values(self) -> np.ndarray:
        with np.errstate(over="ignore"):
            return self.rho**self.dim

    def radius(self, v: int) -> float:
        """Radius of the ball whose volume is ``A*(v)``."""
        return float(self.rho[v]) / unit_ball_volume(self.dim) ** (1.0 / self.dim)


def compute_astar(hst: HST, d: int) -> VolumeEstimates:
    """Evaluate the ``A*`` recurrence bottom-up.

    A leaf gets the volume of a ball of radius ``1/2``; an internal node
    ``v`` gets ``sum over children c of (A*(c)^(1/d) + vol(B(l(v)/4))^(1/d))^d``.
    """
    if d < 1:
        raise ValueError("dimension must be at least 1")
    root_unit = unit_ball_volume(d) ** (1.0 / d)
    rho = np.zeros(len(hst))
    for v in reversed(hst.preorder()):
        kids = hst.children[v]
        if not kids:
            rho[v] = root_unit * 0.5
            continue
        beta = root_unit * hst.label(v) / 4.0
        terms = np.array([rho[c] + beta for c in kids])
        top = terms.max()
        rho[v] = top * math.fsum((terms / top) ** d) ** (1.0 / d)
    return VolumeEstimates(rho, d)


def distortion_lower_bound(est: VolumeEstimates, hst: HST, d: Optional[int] = None) -> float:
    """``max over internal v of r_d(A*(v)) / l(v) - 1``; 0 without internal nodes."""
    if d is not None and d != est.dim:
        raise ValueError("dimension differs from the estimates' dimension")
    internal = hst.internal_nodes()
    if not internal:
        return 0.0
    return max(est.radius(v) / hst.label(v) for v in internal) - 1.0


# ---------------------------------------------------------------------------
# embedding


@dataclass
class DistortionReport:
    expansion: float
    contraction: float
    distortion: float
    lower_bound: float = 1.0
    lower_bound_raw: float = 0.0
    ratio: float = math.nan
    spread: float = 1.0
    epsilon_used: float = math.nan
    log_spread: int = 0
    shrink_factor: float = 1.0
    warning: Optional[str] = None

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass(eq=False)
class EmbeddingResult:
    points: np.ndarray  # (n, d) in original distance units
    unit_points: np.ndarray  # (n, d) inside the unit hypercube
    boxes: dict[int, HyperRect]
    shrunk_boxes: dict[int, HyperRect]
    hst: HST
    estimates: VolumeEstimates
    report: DistortionReport
    scale: float


def _pairwise(points: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - points[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


def _ratios(M: MetricSpace, points: np.ndarray) -> tuple[float, float]:
    n = M.n
    iu = np.triu_indices(n, 1)
    img = _pairwise(points)[iu]
    if np.any(img == 0):
        raise DuplicatePoints("two points share the same image")
    src = np.asarray(M.D)[iu]
    return float(np.max(img / src)), float(np.max(src / img))


def distortion(M: MetricSpace, points, lower_bound: bool = True) -> DistortionReport:
    """Expansion, contraction and their product over all pairs.

    With ``lower_bound`` the volume-based lower bound is computed for the
    points' dimension (requires an ultrametric ``M``).
    """
    P = np.asarray(points, dtype=float)
    if P.ndim == 1:
        P = P[:, None]
    if P.shape[0] != M.n:
        raise ValueError("need exactly one image per point")
    if M.n < 2:
        raise ValueError("distortion needs at least two points")
    expansion, contraction = _ratios(M, P)
    rep = DistortionReport(expansion, contraction, expansion * contraction, spread=M.spread())
    if lower_bound:
        hst = build_2hst(M)
        raw = distortion_lower_bound(compute_astar(hst, P.shape[1]), hst)
        rep.lower_bound_raw = raw
        rep.lower_bound = max(raw, 1.0)
    rep.ratio = rep.distortion / rep.lower_bound
    return rep


def embed(M: MetricSpace, d: int = 2) -> EmbeddingResult:
    """Embed an ultrametric into R^d through its 2-HST.

    Returned ``points`` are scaled so that no distance contracts; the
    reported distortion is invariant to that scaling.
    """
    if isinstance(d, bool) or int(d) != d or d < 2:
        raise DimensionTooSmall(f"dimension must be an integer >= 2, got {d}")
    d = int(d)
    hst = build_2hst(M)
    est = compute_astar(hst, d)
    L = hst.root_level
    eps = min(1.0 / 3.0, 1.0 / L) if L >= 1 else 1.0 / 3.0
    shrink = 1.0 - 1.0 / L if L >= 2 else (0.5 if L == 1 else 1.0)

    rho = est.rho
    boxes = _slack_tree(
        hst.root,
        lambda v: hst.children[v],
        lambda v, c: (rho[c] / rho[v]) ** d,
        d,
        eps,
    )

    # compose the shrink maps x -> c * x + o from the root down
    coef = {hst.root: 1.0}
    offs = {hst.root: np.zeros(d)}
    shrunk: dict[int, HyperRect] = {}
    for v in hst.preorder():
        R = boxes[v]
        c, o = coef[v], offs[v]
        Rs = HyperRect.from_bounds(c * R.origin + o, c * R.hi + o)
        shrunk[v] = Rs
        centre = Rs.center
        for ch in hst.children[v]:
            coef[ch] = shrink * c
            offs[ch] = centre + shrink * (o - centre)

    n = M.n
    unit_points = np.array([shrunk[hst.leaf_map[i]].center for i in range(n)])
    warning = None
    if L < math.sqrt(d - 1):
        warning = "log2 spread is below sqrt(d - 1); the distortion guarantee may not apply"

    if n >= 2:
        _, contraction = _ratios(M, unit_points)
        scale = contraction
        points = unit_points * scale
        rep = distortion(M, points, lower_bound=False)
        raw = distortion_lower_bound(est, hst)
        rep.lower_bound_raw = raw
        rep.lower_bound = max(raw, 1.0)
        rep.ratio = rep.distortion / rep.lower_bound
    else:
        scale = 1.0
        points = unit_points.copy()
        rep = DistortionReport(1.0, 1.0, 1.0, 1.0, 0.0, 1.0)
    rep.spread = M.spread()
    rep.epsilon_used = eps
    rep.log_spread = L
    rep.shrink_factor = shrink
    rep.warning = warning
    return EmbeddingResult(points, unit_points, boxes, shrunk, hst, est, rep, scale)


# ---------------------------------------------------------------------------
# CSV


def read_distance_csv(text: str) -> MetricSpace:
    """Parse a header row of point names followed by the matrix rows.

    A leading label column (first header cell empty, or rows starting with
    the point's name) is accepted and ignored.
    """
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise MalformedDocument("empty distance CSV")
    header = [c.strip() for c in rows[0]]
    body = rows[1:]
    labelled = header and header[0] == "" or (body and len(body[0]) == len(header) + 1)
    names = header[1:] if header and header[0] == "" else header
    if len(body) != len(names):
        raise MalformedDocument("distance CSV must have one row per point")
    try:
        mat = []
        for r in body:
            cells = r[1:] if labelled else r
            if len(cells) != len(names):
                raise MalformedDocument("distance CSV rows must match the header width")
            mat.append([float(c) for c in cells])
    except ValueError as exc:
        if isinstance(exc, MalformedDocument):
            raise
        raise MalformedDocument(f"non-numeric distance: {exc}") from None
    return MetricSpace(np.array(mat), names)


def write_distance_csv(M: MetricSpace) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(M.names)
    for row in M.D:
        w.writerow([repr(float(x)) for x in row])
    return buf.getvalue()


def write_points_csv(names: Sequence[str], points: np.ndarray) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    d = points.shape[1]
    w.writerow(["name"] + [f"x{i}" for i in range(d)])
    for name, p in zip(names, points):
        w.writerow([name] + [repr(float(x)) for x in p])
    return buf.getvalue()
