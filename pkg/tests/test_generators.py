import hashlib
import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fatpart.generators import lowerbound_tree, lowerbound_weights, random_hierarchy, random_ultrametric
from fatpart.hierarchy import tree_to_document
from fatpart.ultrametric import validate_ultrametric, write_distance_csv

from strategies import seeds

# digests frozen once from the current generators
HIERARCHY_SEED7_N100_PARETO = "3c150c4ac5cde8262126d289ed957d4bc48f06477c6a17b7567ef174112b0b8f"
ULTRAMETRIC_SEED3_N16_L4 = "e3f9200b3799ac7054e49976108095e9d162838e2735f0d39a4a4b4ae9f01e1b"


def tree_digest(tree):
    return hashlib.sha256(json.dumps(tree_to_document(tree), sort_keys=True).encode()).hexdigest()


def test_lowerbound_depth_one():
    t = lowerbound_tree(1)
    leaves = {t[v].name: t.weight(v) for v in t.leaves()}
    assert leaves == {"lambda1": 0.25, "residual": 0.75}


def test_lowerbound_depth_four():
    w = lowerbound_weights(4)
    assert w[0] == 1 / 16
    assert w[1] == pytest.approx((1 / 4) ** 2 / 16, rel=1e-15)
    assert w[1] == pytest.approx(1 / 256, rel=1e-15)


@pytest.mark.parametrize("d", [1, 2, 5, 10, 40])
def test_lowerbound_shape_and_weights(d):
    t = lowerbound_tree(d)
    w = lowerbound_weights(d)
    x = 1.0
    for i in range(1, d + 1):
        assert w[i - 1] == pytest.approx(x * x / (4 * d), rel=1e-12)
        x = x / (2 * math.sqrt(d))
    # path nu0..nu_d, each nu_{i-1} holding (lambda_i, nu_i)
    v = t.root
    for i in range(1, d + 1):
        lam, nxt = t.children(v)
        assert t[lam].name == f"lambda{i}" and t[nxt].name == f"nu{i}"
        assert t.weight(lam) == pytest.approx(w[i - 1], rel=1e-12)
        v = nxt
    (res,) = t.children(v)
    assert t[res].name == "residual"
    assert t.weight(0) == 1.0
    for u in range(len(t)):
        ch = t.children(u)
        if ch:
            assert math.isclose(t.weight(u), math.fsum(t.weight(c) for c in ch), rel_tol=1e-12)


def test_lowerbound_rejects_bad_depth():
    for d in (0, -1, 2.5, True):
        with pytest.raises(ValueError):
            lowerbound_tree(d)


def test_random_hierarchy_single_leaf():
    t = random_hierarchy(0, 1)
    assert len(t) == 1 and t.weight(0) == 1.0


def test_random_hierarchy_deterministic():
    assert tree_digest(random_hierarchy(4, 50)) == tree_digest(random_hierarchy(4, 50))
    assert tree_digest(random_hierarchy(4, 50)) != tree_digest(random_hierarchy(5, 50))


def test_random_hierarchy_regression():
    assert tree_digest(random_hierarchy(7, 100, weight_law="pareto")) == HIERARCHY_SEED7_N100_PARETO


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(1, 400), st.integers(1, 12), st.sampled_from(["uniform", "pareto"]))
def test_random_hierarchy_shape(seed, n, depth, law):
    t = random_hierarchy(seed, n, max_depth=depth, weight_law=law)
    assert len(t.leaves()) == n
    assert t.depth() <= depth
    assert all(t.weight(v) > 0 for v in range(len(t)))


def test_random_ultrametric_two_points():
    M = random_ultrametric(0, 2)
    assert M.n == 2 and validate_ultrametric(M)


def test_random_ultrametric_regression():
    M = random_ultrametric(3, 16, 4)
    assert hashlib.sha256(write_distance_csv(M).encode()).hexdigest() == ULTRAMETRIC_SEED3_N16_L4


@settings(max_examples=80, deadline=None)
@given(seeds, st.integers(1, 80), st.integers(1, 8))
def test_random_ultrametric_is_exact(seed, n, levels):
    M = random_ultrametric(seed, n, levels)
    D = M.D
    for y in range(n):
        for x in range(n):
            for z in range(n):
                if D[x, z] > max(D[x, y], D[y, z]):
                    raise AssertionError((x, y, z))
    assert validate_ultrametric(M, rtol=0.0)
