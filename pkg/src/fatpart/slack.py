"""Hyperrectangular partitions with slack.

Children of a node get boxes whose volumes may fall short of their
proportional share by a factor of at most ``1 - epsilon``. That freedom lets
every box keep ``max side / min side <= 1 / epsilon``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import _jsonio
from .exceptions import InvariantViolation, PreconditionViolated
from .geometry import HyperRect, rect_aspect_ratio
from .hierarchy import WeightedTree

__all__ = [
    "SlackConfig",
    "SlackPartition",
    "slack_cut",
    "slack_partition",
    "check_slack_partition",
]

_SUM_RTOL = 1e-10
_AR_TOL = 1e-9


@dataclass(frozen=True)
class SlackConfig:
    """``epsilon`` must lie strictly inside ``(0, 1/3)``; ``dim >= 2``."""

    epsilon: float
    dim: int = 2

    def __post_init__(self):
        e = float(self.epsilon)
        if not (math.isfinite(e) and 0.0 < e < 1.0 / 3.0):
            raise PreconditionViolated(f"epsilon must lie in (0, 1/3), got {self.epsilon}")
        if isinstance(self.dim, bool) or int(self.dim) != self.dim or int(self.dim) < 2:
            raise PreconditionViolated(f"dim must be an integer >= 2, got {self.dim}")


def _water_fill(sides: np.ndarray, g: float) -> np.ndarray:
    """Shrink ``sides`` so the volume drops by factor ``g`` in (0, 1].

    Only the longest sides are reduced: they are capped at a common value
    chosen so the product falls by exactly ``g``. Shorter sides are kept
    whenever possible, so the max/min ratio never increases.
    """
    if g >= 1.0:
        return sides.copy()
    order = np.argsort(-sides, kind="stable")
    s = sides[order]
    d = len(s)
    log_target = math.fsum(np.log(s)) + math.log(g)
    rest = math.fsum(np.log(s))
    for m in range(1, d + 1):
        rest -= math.log(s[m - 1])
        cap = math.exp((log_target - rest) / m)
        nxt = s[m] if m < d else 0.0
        if cap >= nxt:
            out = s.copy()
            out[:m] = cap
            res = np.empty_like(sides)
            res[order] = out
            return res
    raise AssertionError("unreachable")


def _shrink_to(R: HyperRect, volume: float) -> HyperRect:
    """Box anchored at ``R.origin`` with the requested volume."""
    g = volume / R.volume
    hi = np.minimum(R.origin + _water_fill(R.sides, g), R.hi)
    return HyperRect.from_bounds(R.origin, hi)


def _split_longest(R: HyperRect, frac: float) -> tuple[HyperRect, HyperRect]:
    axis = int(np.argmax(R.sides))  # lowest axis on ties
    mid = R.origin[axis] + R.sides[axis] * frac
    hi1 = R.hi.copy()
    hi1[axis] = mid
    lo2 = R.origin.copy()
    lo2[axis] = mid
    return HyperRect.from_bounds(R.origin, hi1), HyperRect.from_bounds(lo2, R.hi)


def _slack_cut_sorted(R: HyperRect, items: list[tuple[int, float]], eps: float) -> dict[int, HyperRect]:
    """Core construction; ``items`` are ``(key, weight)`` sorted by weight
    descending with total weight ``(1 - eps) * vol(R)``."""
    out: dict[int, HyperRect] = {}
    stack = [(R, items)]
    while stack:
        box, S = stack.pop()
        if len(S) == 1:
            key, w = S[0]
            out[key] = _shrink_to(box, w)
            continue
        ws = [w for _, w in S]
        total = math.fsum(ws)
        w1 = ws[0]
        if w1 <= (1.0 - eps) * total:
            acc = 0.0
            istar = len(S) - 1
            for i, w in enumerate(ws):
                acc += w
                if acc >= eps * total:
                    istar = i + 1
                    break
            istar = min(max(istar, 1), len(S) - 1)
            S1, S2 = S[:istar], S[istar:]
            frac = math.fsum(ws[:istar]) / total
            R1, R2 = _split_longest(box, frac)
            stack.append((R2, S2))
            stack.append((R1, S1))
        else:
            vol = box.volume
            R1, Rr = _split_longest(box, w1 / vol)
            out[S[0][0]] = R1
            rest = S[1:]
            w_rest = math.fsum(w for _, w in rest)
            Rr = _shrink_to(Rr, w_rest / (1.0 - eps))
            stack.append((Rr, rest))
    return out


def _cut_with_filler(R: HyperRect, weights: Sequence[float], eps: float) -> list[HyperRect]:
    """Like :func:`slack_cut` but allows ``sum(weights) < (1 - eps) vol(R)``.

    The shortfall becomes an extra filler weight whose box is discarded.
    """
    budget = (1.0 - eps) * R.volume
    total = math.fsum(weights)
    items = [(i, float(w)) for i, w in enumerate(weights)]
    filler = budget - total
    if filler > _SUM_RTOL * budget:
        items.append((-1, filler))
    else:
        # rescale away rounding so the lemma's identity holds exactly
        scale = budget / total
        items = [(i, w * scale) for i, w in items]
    items.sort(key=lambda t: -t[1])
    boxes = _slack_cut_sorted(R, items, eps)
    return [boxes[i] for i in range(len(weights))]


def slack_cut(R: HyperRect, weights: Sequence[float], epsilon: float) -> list[HyperRect]:
    """Place boxes of volumes ``weights`` inside ``R`` with bounded aspect ratio.

    Parameters
    ----------
    R : HyperRect
        Enclosing box with ``rect_aspect_ratio(R) <= 1/epsilon``.
    weights : sequence of float
        Positive target volumes summing to ``(1 - epsilon) * vol(R)``.
    epsilon : float
        Slack in ``(0, 1/3)``.

    Returns
    -------
    list of HyperRect
        Pairwise interior-disjoint boxes inside ``R``, in input order, each
        with ``rect_aspect_ratio <= 1/epsilon``.
    """
    eps = float(epsilon)
    if not 0.0 < eps < 1.0 / 3.0:
        raise PreconditionViolated(f"epsilon must lie in (0, 1/3), got {epsilon}")
    ws = [float(w) for w in weights]
    if not ws:
        return []
    if any(not (w > 0 and math.isfinite(w)) for w in ws):
        raise PreconditionViolated("weights must be positive and finite")
    if rect_aspect_ratio(R) > (1.0 + _AR_TOL) / eps:
        raise PreconditionViolated("enclosing box is too elongated for this epsilon")
    budget = (1.0 - eps) * R.volume
    if abs(math.fsum(ws) - budget) > _SUM_RTOL * budget:
        raise PreconditionViolated(
            f"weights must sum to (1 - epsilon) * vol(R) = {budget!r}, got {math.fsum(ws)!r}"
        )
    return _cut_with_filler(R, ws, eps)


@dataclass(eq=False)
class SlackPartition:
    entries: dict[int, HyperRect]
    config: SlackConfig
    tree: WeightedTree

    def __getitem__(self, node_id: int) -> HyperRect:
        return self.entries[node_id]

    def __len__(self) -> int:
        return len(self.entries)

    def max_aspect_ratio(self) -> float:
        return max(rect_aspect_ratio(R) for R in self.entries.values())

    def to_document(self) -> dict:
        out = []
        for v in self.tree.preorder():
            R = self.entries[v]
            out.append(
                {
                    "id": v,
                    "path": self.tree.path(v),
                    "origin": [float(x) for x in R.origin],
                    "sides": [float(x) for x in R.sides],
                    "weight": self.tree.weight(v),
                    "rect_aspect_ratio": rect_aspect_ratio(R),
                }
            )
        return {"epsilon": self.config.epsilon, "dim": self.config.dim, "entries": out}

    def to_json(self) -> str:
        return _jsonio.dumps(self.to_document())


def _slack_tree(
    root: int,
    children: Callable[[int], Sequence[int]],
    fraction: Callable[[int, int], float],
    dim: int,
    eps: float,
) -> dict[int, HyperRect]:
    """Assign boxes top-down. ``fraction(parent, child)`` is ``w(child) /
    w(parent)``; fractions of one parent may sum to less than 1."""
    entries = {root: HyperRect.unit(dim)}
    stack = [root]
    while stack:
        v = stack.pop()
        kids = list(children(v))
        if not kids:
            continue
        R = entries[v]
        targets = [(1.0 - eps) * fraction(v, c) * R.volume for c in kids]
        for c, box in zip(kids, _cut_with_filler(R, targets, eps)):
            entries[c] = box
        stack.extend(reversed(kids))
    return entries


def slack_partition(tree: WeightedTree, cfg: SlackConfig) -> SlackPartition:
    """Slack partition of the unit hypercube for an arbitrary-fan-out tree."""
    entries = _slack_tree(
        tree.root,
        tree.children,
        lambda v, c: tree.weight(c) / tree.weight(v),
        int(cfg.dim),
        float(cfg.epsilon),
    )
    ordered = {v: entries[v] for v in tree.preorder()}
    return SlackPartition(ordered, cfg, tree)


def check_slack_partition(sp: SlackPartition, tol: float = 1e-9) -> None:
    """Raise :class:`InvariantViolation` on any broken partition property."""
    eps = sp.config.epsilon
    tree = sp.tree
    bound = 1.0 / eps + tol
    for v in tree.preorder():
        R = sp.entries[v]
        if rect_aspect_ratio(R) > bound:
            raise InvariantViolation(f"node {v}: aspect ratio {rect_aspect_ratio(R)!r} > 1/eps")
        kids = tree.children(v)
        dens_parent = R.volume / tree.weight(v)
        for c in kids:
            Rc = sp.entries[c]
            dens = Rc.volume / tree.weight(c)
            if not ((1 - eps) * dens_parent * (1 - tol) <= dens <= dens_parent * (1 + tol)):
                raise InvariantViolation(f"node {c}: volume/weight outside the slack window")
            if not R.contains(Rc, tol=1e-12):
                raise InvariantViolation(f"node {c}: box not contained in parent box")
        for i, a in enumerate(kids):
            for b in kids[i + 1:]:
                if sp.entries[a].overlap_volume(sp.entries[b]) > 0.0:
                    raise InvariantViolation(f"nodes {a} and {b}: boxes overlap")
