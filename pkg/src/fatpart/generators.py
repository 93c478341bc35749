"""Seeded instance generators: the adversarial path tree, random
hierarchies and random ultrametrics."""

from __future__ import annotations

import math

import numpy as np

from .hierarchy import WeightedTree, _build
from .ultrametric import MetricSpace

__all__ = ["lowerbound_tree", "lowerbound_weights", "random_hierarchy", "random_ultrametric"]

WEIGHT_LAWS = ("uniform", "pareto")
PARETO_SHAPE = 1.2


def lowerbound_weights(d: int) -> list[float]:
    """Pendant leaf weights ``x_{i-1}**2 / (4d)`` with ``x_i = x_{i-1} / (2 sqrt d)``."""
    if isinstance(d, bool) or int(d) != d or d < 1:
        raise ValueError(f"depth must be an integer >= 1, got {d}")
    d = int(d)
    # carry x**2 rather than x: x_i**2 = x_{i-1}**2 / (4d) avoids the
    # rounding of sqrt(d)
    x2 = 1.0
    out = []
    for _ in range(d):
        out.append(x2 / (4 * d))
        x2 = x2 / (4 * d)
    return out


def lowerbound_tree(d: int) -> WeightedTree:
    """Path ``nu_0 .. nu_d`` where ``nu_{i-1}`` has children ``(lambda_i, nu_i)``.

    ``nu_d`` holds a single leaf carrying the residual weight, so the total
    weight is 1. Partitioning this tree forces some polygon to have an
    aspect ratio that grows linearly with ``d``.
    """
    lam = lowerbound_weights(d)
    residual = 1.0 - math.fsum(lam)
    names: list[str] = []
    raw: list = []
    children: list[list[int]] = []

    def add(name, w=None):
        names.append(name)
        raw.append(w)
        children.append([])
        return len(names) - 1

    path = add("nu0")
    for i, w in enumerate(lam, start=1):
        leaf = add(f"lambda{i}", w)
        nxt = add(f"nu{i}")
        children[path] = [leaf, nxt]
        path = nxt
    children[path] = [add("residual", residual)]
    return _build(names, raw, children, 0)


def _draw_weight(rng: np.random.Generator, law: str) -> float:
    if law == "uniform":
        return 1.0 - float(rng.random())  # in (0, 1]
    return float(rng.pareto(PARETO_SHAPE)) + 1.0


def random_hierarchy(
    seed: int,
    n_leaves: int,
    max_depth: int = 8,
    weight_law: str = "uniform",
    max_fanout: int = 6,
) -> WeightedTree:
    """Random tree with exactly ``n_leaves`` leaves and depth ``<= max_depth``.

    Each node with ``m > 1`` leaves to place picks a fan-out in
    ``[2, min(m, max_fanout)]`` and splits ``m`` into a random composition.
    Nodes at depth ``max_depth - 1`` take all their leaves directly.
    """
    if n_leaves < 1:
        raise ValueError("n_leaves must be at least 1")
    if max_depth < 1 and n_leaves > 1:
        raise ValueError("max_depth must be at least 1 for more than one leaf")
    if weight_law not in WEIGHT_LAWS:
        raise ValueError(f"weight_law must be one of {WEIGHT_LAWS}")
    rng = np.random.default_rng(seed)
    names: list[str] = []
    raw: list = []
    children: list[list[int]] = []
    n_leaf_names = 0

    def add(par):
        names.append("")
        raw.append(None)
        children.append([])
        if par is not None:
            children[par].append(len(names) - 1)
        return len(names) - 1

    stack = [(n_leaves, 0, None)]
    while stack:
        m, depth, par = stack.pop()
        v = add(par)
        if m == 1:
            names[v] = f"leaf{n_leaf_names}"
            n_leaf_names += 1
            raw[v] = _draw_weight(rng, weight_law)
            continue
        names[v] = f"dir{v}"
        if depth >= max_depth - 1:
            parts = [1] * m
        else:
            k = int(rng.integers(2, min(m, max_fanout) + 1))
            cuts = np.sort(rng.choice(np.arange(1, m), size=k - 1, replace=False))
            parts = np.diff(np.concatenate([[0], cuts, [m]])).tolist()
        for part in reversed(parts):
            stack.append((int(part), depth + 1, v))
    return _build(names, raw, children, 0)


def random_ultrametric(seed: int, n: int, levels: int = 4) -> MetricSpace:
    """Random ultrametric from a laminar family of nested groups.

    Level ``levels`` holds one group; each lower level splits every group
    into 1 to 3 random parts; level 0 is all singletons. Points first
    separated at level ``j`` are at distance ``v_j`` drawn from
    ``[2**(j-1), 2**j)``, increasing with ``j``, so the result satisfies the
    strong triangle inequality exactly.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if levels < 1:
        raise ValueError("levels must be at least 1")
    rng = np.random.default_rng(seed)
    values = [0.0] + [math.ldexp(1.0 + float(rng.random()), j - 1) for j in range(1, levels + 1)]
    group = np.zeros(n, dtype=np.int64)
    D = np.zeros((n, n))
    for j in range(levels, 0, -1):
        if j == 1:
            new = np.arange(n)
        else:
            parts = rng.integers(1, 4, size=int(group.max()) + 1)
            labels = rng.integers(0, 1 << 30, size=n) % parts[group]
            _, new = np.unique(np.stack([group, labels], axis=1), axis=0, return_inverse=True)
            new = np.asarray(new).reshape(-1)
        split = (group[:, None] == group[None, :]) & (new[:, None] != new[None, :])
        D[split] = values[j]
        group = new
    return MetricSpace(D, [f"p{i}" for i in range(n)], check_triangle=False)
