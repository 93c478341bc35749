import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fatpart.exceptions import PreconditionViolated
from fatpart.geometry import (
    ConvexPolygon,
    area,
    aspect_ratio,
    cut_at_orientation,
    cut_with_normal,
    diameter_pair,
    edge_orientations,
    min_edge_angle,
    phi_separated,
    polygon_from_rect,
    unit_square,
)
from fatpart.hierarchy import parse_tree, to_binary
from fatpart.partitioners import (
    PartitionConfig,
    angular_cut,
    check_partition,
    greedy_cut,
    greedy_rect_cut,
    partition,
    partition_to_svg,
    random_cut,
    stats,
    stats_from_document,
)

import oracles
from strategies import hierarchy_docs, two_leaf

# frozen once from random_cut(unit_square(), 0.5, default_rng(42))
RANDOM_SEED42_ORIENTATION = 2.4314546363447995


def dense_minmax(P, a, n=10_000):
    """Smallest max-aspect-ratio over n orientations and both sides."""
    best = math.inf
    for theta in np.arange(n) * math.pi / n:
        for side in ("left", "right"):
            P1, P2, _ = cut_at_orientation(P, theta, a, side)
            best = min(best, max(aspect_ratio(P1), aspect_ratio(P2)))
    return best


def interiors_disjoint(P, Q, tol=1e-9):
    """Separating-axis test on the edge normals of both polygons."""
    for poly in (P, Q):
        v = poly.vertices
        e = np.roll(v, -1, axis=0) - v
        for nx, ny in np.stack([e[:, 1], -e[:, 0]], axis=1):
            L = math.hypot(nx, ny)
            n = np.array([nx, ny]) / L
            p, q = P.vertices @ n, Q.vertices @ n
            scale = max(np.ptp(P.vertices, axis=0).max(), np.ptp(Q.vertices, axis=0).max())
            if p.max() <= q.min() + tol * scale or q.max() <= p.min() + tol * scale:
                return True
    return False


# ---------------------------------------------------------------------------
# single cuts


def test_angular_cut_on_square():
    P1, P2, cut = angular_cut(unit_square(), 0.5)
    assert cut.orientation == pytest.approx(math.pi / 4)
    assert area(P1) == pytest.approx(0.5) and area(P2) == pytest.approx(0.5)
    assert P1.k == 3 and P2.k == 3


def test_angular_cut_on_thin_triangle():
    P = ConvexPolygon.from_points([(0, 0), (1, 0), (1, 0.01)])
    th = np.sort(edge_orientations(P))
    gaps = np.diff(np.concatenate([th, [th[0] + math.pi]]))
    _, _, cut = angular_cut(P, 0.5)
    assert min_edge_angle(P, cut.orientation) >= gaps.max() / 2 - 1e-9


def test_greedy_square_half_matches_dense_oracle():
    P1, P2, _ = greedy_cut(unit_square(), 0.5)
    got = max(aspect_ratio(P1), aspect_ratio(P2))
    assert got == pytest.approx(2.5, rel=1e-12)
    assert got <= dense_minmax(unit_square(), 0.5) + 1e-9


def test_greedy_square_tiny_fraction_cuts_a_corner():
    P1, P2, _ = greedy_cut(unit_square(), 1e-6)
    assert area(P1) == pytest.approx(1e-6, rel=1e-10)
    assert P1.k == 3
    # isosceles right triangle: diam^2 / area = 2L^2 / (L^2 / 2) = 4
    assert aspect_ratio(P1) == pytest.approx(4.0, rel=1e-6)
    corners = {(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)}
    assert any(tuple(np.round(v, 12)) in corners for v in P1.vertices)


def test_greedy_thin_rectangle_cuts_across_the_diameter():
    P = polygon_from_rect(0, 0, 10, 0.1)
    P1, P2, cut = greedy_cut(P, 0.5)
    got = max(aspect_ratio(P1), aspect_ratio(P2))
    i, j = diameter_pair(P)
    d = P.local[j] - P.local[i]
    diam_dir = math.atan2(d[1], d[0]) % math.pi
    c1, c2, _ = cut_with_normal(P, d, 0.5)
    assert got <= max(aspect_ratio(c1), aspect_ratio(c2)) + 1e-12
    off = abs(((cut.orientation - diam_dir) % math.pi) - math.pi / 2)
    assert off <= 0.02
    assert got <= dense_minmax(P, 0.5, n=2000) + 1e-9


def test_random_cut_regression_and_determinism():
    P1, P2, cut = random_cut(unit_square(), 0.5, np.random.default_rng(42))
    assert cut.orientation == RANDOM_SEED42_ORIENTATION
    assert area(P1) == pytest.approx(0.5, rel=1e-12)
    Q1, _, cut2 = random_cut(unit_square(), 0.5, np.random.default_rng(42))
    assert cut2 == cut
    assert np.array_equal(P1.vertices, Q1.vertices)


def test_greedy_rect_examples():
    P1, P2, _ = greedy_rect_cut(unit_square(), 0.5)
    assert np.ptp(P1.vertices, axis=0).tolist() == [0.5, 1.0]
    R = polygon_from_rect(0, 0, 2, 1)
    P1, P2, _ = greedy_rect_cut(R, 0.25)
    assert np.ptp(P1.vertices, axis=0).tolist() == [0.5, 1.0]
    assert np.ptp(P2.vertices, axis=0).tolist() == [1.5, 1.0]
    P1, _, _ = greedy_rect_cut(unit_square(), 1e-6)
    w, h = np.ptp(P1.vertices, axis=0)
    assert h / w == pytest.approx(1e6, rel=1e-9)


def test_greedy_rect_needs_a_rectangle():
    with pytest.raises(PreconditionViolated):
        greedy_rect_cut(ConvexPolygon.from_points([(0, 0), (1, 0), (0, 1)]), 0.5)


@pytest.mark.parametrize("fn", [angular_cut, greedy_cut, greedy_rect_cut])
def test_fraction_precondition(fn):
    with pytest.raises(PreconditionViolated):
        fn(unit_square(), 0.0)


# ---------------------------------------------------------------------------
# full partitions


def test_two_children_greedy_rect():
    p = partition(to_binary(parse_tree(two_leaf(0.5, 0.5))), "greedy_rect")
    for v in p.leaves():
        assert sorted(np.ptp(p[v].vertices, axis=0).tolist()) == [0.5, 1.0]
    assert stats(p).avg_aspect_ratio == pytest.approx(7 / 3)
    assert stats(p).max_aspect_ratio == pytest.approx(2.5)


def test_two_children_angular():
    p = partition(to_binary(parse_tree(two_leaf(0.5, 0.5))), "angular")
    assert p.cuts[0].orientation == pytest.approx(math.pi / 4)
    a, b = (p[v] for v in p.leaves())
    assert area(a) == pytest.approx(0.5) and area(b) == pytest.approx(0.5)
    assert aspect_ratio(a) == pytest.approx(aspect_ratio(b))
    assert sorted(np.round(np.sort(np.linalg.norm(a.vertices - a.vertices.mean(0), axis=1)), 12)) == sorted(
        np.round(np.sort(np.linalg.norm(b.vertices - b.vertices.mean(0), axis=1)), 12)
    )


@pytest.mark.parametrize("method", ["angular", "greedy", "random", "greedy_rect"])
def test_single_node_tree(method):
    p = partition(to_binary(parse_tree({"name": "a", "weight": 3})), method)
    assert len(p) == 1
    assert area(p[0]) == 1.0
    s = stats(p)
    assert s.avg_aspect_ratio == s.max_aspect_ratio == pytest.approx(2.0)
    assert s.polygon_count == 1


def test_lighter_child_gets_requested_piece():
    p = partition(to_binary(parse_tree(two_leaf(3, 1))), "greedy_rect")
    c1, c2 = p.binary_tree.children(0)
    # the second (lighter) child gets the low-x strip
    assert p[c2].vertices[:, 0].min() == 0.0
    assert area(p[c2]) == pytest.approx(0.25)


def _check_full(p, method):
    check_partition(p)
    bt = p.binary_tree
    depth = bt.depths()
    leaves = p.leaves()
    assert math.fsum(area(p[v]) for v in leaves) == pytest.approx(1.0, abs=1e-6)
    for v in bt.preorder():
        P = p[v]
        assert P.k <= depth[v] + 4
        parent = bt[v].parent
        if parent is not None:
            verts = [tuple(x) for x in p[parent].vertices]
            assert all(oracles.point_in_convex(verts, tuple(x)) for x in P.vertices)
        if method == "angular":
            k = depth[v]
            assert phi_separated(P, math.pi / (2 * k + 6) - 1e-9)
        if method == "greedy":
            assert aspect_ratio(P) <= (depth[v] + 3) ** 8
    for v in bt.preorder():
        ch = bt.children(v)
        if ch:
            assert interiors_disjoint(p[ch[0]], p[ch[1]])


@settings(max_examples=40, deadline=None)
@given(hierarchy_docs, st.sampled_from(["angular", "greedy", "random", "greedy_rect"]), st.integers(0, 2**64 - 1))
def test_partition_invariants(doc, method, seed):
    bt = to_binary(parse_tree(doc))
    cfg = PartitionConfig(seed=seed)
    p = partition(bt, method, cfg)
    _check_full(p, method)
    q = partition(bt, method, cfg)
    assert p.to_json() == q.to_json()


@pytest.mark.parametrize("method", ["angular", "greedy", "random"])
def test_threads_do_not_change_results(method):
    from fatpart.generators import random_hierarchy

    bt = to_binary(random_hierarchy(11, 150, weight_law="pareto"))
    serial = partition(bt, method, PartitionConfig(seed=5))
    threaded = partition(bt, method, PartitionConfig(seed=5, threads=4))
    assert serial.to_json() == threaded.to_json()


def test_lowerbound_tree_with_tiny_weights_partitions():
    from fatpart.generators import lowerbound_tree

    p = partition(to_binary(lowerbound_tree(20)), "greedy")
    check_partition(p)
    smallest = min(p.binary_tree.weight(v) for v in p.leaves())
    assert smallest < 1e-30


def test_document_svg_and_stats_round_trip():
    from fatpart.generators import random_hierarchy

    p = partition(to_binary(random_hierarchy(3, 40)), "greedy")
    doc = json.loads(p.to_json())
    assert doc["method"] == "greedy"
    assert {"path", "depth", "polygon", "weight"} <= set(doc["entries"][0])
    assert stats_from_document(doc) == stats(p)
    svg = partition_to_svg(p)
    assert svg.count("<polygon") == len(p.leaves())
    assert 'viewBox="0 0 1 1"' in svg and 'stroke-width="0.001"' in svg
    assert partition_to_svg(p, outlines=True).count("<polygon") == len(p)


def test_stats_per_depth_and_ordering():
    from fatpart.generators import random_hierarchy

    p = partition(to_binary(random_hierarchy(1, 60)), "angular")
    s = stats(p)
    assert s.max_aspect_ratio >= s.avg_aspect_ratio
    assert max(s.per_depth_max) == s.max_aspect_ratio
    assert s.polygon_count == len(p)
    assert s.line().startswith("avg=")
