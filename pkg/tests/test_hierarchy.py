import json
import math

import pytest
from hypothesis import given, settings

from fatpart import _jsonio
from fatpart.exceptions import EmptyTree, MalformedDocument, NonPositiveWeight
from fatpart.hierarchy import load_tree, parse_tree, scan_filesystem, to_binary, tree_to_document

from strategies import hierarchy_docs, star


def leaf_weights(tree):
    return {tree.path(v): tree.weight(v) for v in tree.leaves()}


# ---------------------------------------------------------------------------
# parse_tree


def test_single_leaf_normalizes_to_one():
    t = parse_tree({"name": "a", "weight": 7})
    assert len(t) == 1
    assert t.weight(0) == 1.0


def test_two_leaves_normalize():
    t = parse_tree({"name": "r", "children": [{"name": "x", "weight": 1}, {"name": "y", "weight": 3}]})
    assert t.weight(0) == 1.0
    assert [t.weight(c) for c in t.children(0)] == [0.25, 0.75]


@pytest.mark.parametrize("w", [0, -1, 0.0])
def test_non_positive_weight(w):
    with pytest.raises(NonPositiveWeight):
        parse_tree({"name": "r", "children": [{"name": "x", "weight": w}, {"name": "y", "weight": 1}]})


@pytest.mark.parametrize(
    "doc",
    [
        {"name": "x", "weight": 1, "children": [{"name": "y", "weight": 1}]},
        {"name": "x"},
        {"name": "x", "weight": "3"},
        {"name": "x", "weight": True},
        {"name": "x", "children": {"a": 1}},
        {"name": "x", "children": [{"name": "y", "children": []}]},
        {"name": 5, "weight": 1},
        {"name": "x", "weight": 1, "size": 2},
        [1, 2],
    ],
)
def test_malformed_documents(doc):
    with pytest.raises(MalformedDocument):
        parse_tree(doc)


@pytest.mark.parametrize("doc", [{}, {"name": "r", "children": []}, None])
def test_empty_documents(doc):
    with pytest.raises(EmptyTree):
        parse_tree(doc)


def test_invalid_json_text():
    with pytest.raises(MalformedDocument):
        parse_tree('{"name": "a", "weight": ')


def test_internal_weights_recomputed():
    t = parse_tree({"name": "r", "children": [
        {"name": "a", "children": [{"name": "x", "weight": 2}, {"name": "y", "weight": 2}]},
        {"name": "b", "weight": 4},
    ]})
    assert t.weight(t.children(0)[0]) == 0.5
    assert t.path(t.leaves()[0]) == "/a/x"  # the root is the leading slash


def test_deep_nesting_parses_and_dumps():
    depth = 100_000
    text = '{"name":"n","children":[' * depth + '{"name":"leaf","weight":1}' + "]}" * depth
    t = parse_tree(text)
    assert len(t) == depth + 1
    assert t.depth() == depth
    assert t.weight(t.leaves()[0]) == 1.0
    back = _jsonio.dumps(tree_to_document(t))
    assert parse_tree(back).depth() == depth
    bt = to_binary(t)
    assert len(bt) == 1  # the whole chain collapses onto its leaf


def test_jsonio_iterative_paths_agree_with_stdlib():
    doc = {"a": [1, 2.5, "x\"y", None, True, {"b": []}], "c": {"d": -1e-300}}
    text = json.dumps(doc)
    assert _jsonio._loads_iterative(text) == doc
    assert json.loads(_jsonio._dumps_iterative(doc)) == doc


# ---------------------------------------------------------------------------
# filesystem scan


def test_scan_two_files(tmp_path):
    (tmp_path / "a").write_bytes(b"x" * 100)
    (tmp_path / "b").write_bytes(b"x" * 300)
    t = scan_filesystem(tmp_path)
    assert sorted(t.weight(v) for v in t.leaves()) == [0.25, 0.75]


def test_scan_empty_directory(tmp_path):
    with pytest.raises(EmptyTree):
        scan_filesystem(tmp_path)


def test_scan_nested(tmp_path):
    for rel, size in [("a/x", 10), ("b/y", 10), ("b/z", 20), ("b/empty", 0)]:
        p = tmp_path / rel
        p.parent.mkdir(exist_ok=True)
        p.write_bytes(b"x" * size)
    (tmp_path / "c").mkdir()
    t = scan_filesystem(tmp_path)
    kids = {t[c].name: t.weight(c) for c in t.children(0)}
    assert kids == {"a": 0.25, "b": 0.75}
    assert len(t.leaves()) == 3
    assert load_tree(tmp_path).weight(0) == 1.0


# ---------------------------------------------------------------------------
# binary transform


def test_path_tree_collapses():
    t = parse_tree({"name": "a", "children": [{"name": "b", "children": [{"name": "c", "weight": 1}]}]})
    bt = to_binary(t)
    assert len(bt) == 1
    assert leaf_weights(bt) == leaf_weights(t)
    assert bt.collapsed[0] == (0, 1, 2)


def test_star_of_four():
    t = parse_tree(star(4))
    bt = to_binary(t)
    # the wiring step gives depth 3; removing degree-1 nodes leaves depth 2
    assert bt.depth() == 2
    assert bt.depth() <= 2 * (t.depth() + math.ceil(math.log2(len(t))))
    assert leaf_weights(bt) == leaf_weights(t)
    assert all(len(bt.children(v)) in (0, 2) for v in range(len(bt)))


def test_complete_binary_tree_is_identity():
    leaf = lambda n: {"name": n, "weight": 1}  # noqa: E731
    doc = {"name": "r", "children": [
        {"name": "a", "children": [leaf("a1"), leaf("a2")]},
        {"name": "b", "children": [leaf("b1"), leaf("b2")]},
    ]}
    t = parse_tree(doc)
    bt = to_binary(t)
    assert len(bt) == 7
    assert all(o is not None for o in bt.origin)
    for v in range(7):
        o = bt.origin[v]
        assert tuple(bt.origin[c] for c in bt.children(v)) == t.children(o)
        assert bt.weight(v) == t.weight(o)


def _representative(bt):
    rep = {}
    for v in range(len(bt)):
        for o in bt.collapsed[v]:
            rep[o] = v
    return rep


@settings(max_examples=150, deadline=None)
@given(hierarchy_docs)
def test_binary_transform_properties(doc):
    t = parse_tree(doc)
    bt = to_binary(t)
    # binary shape
    assert all(len(bt.children(v)) in (0, 2) for v in range(len(bt)))
    # leaves and weights preserved exactly
    assert sorted((bt.origin[v], bt.weight(v)) for v in bt.leaves()) == sorted((v, t.weight(v)) for v in t.leaves())
    # depth bound
    assert bt.depth() <= 2 * (t.depth() + math.ceil(math.log2(len(t))))
    # internal weights are sums of their children
    for v in range(len(bt)):
        ch = bt.children(v)
        if ch:
            s = bt.weight(ch[0]) + bt.weight(ch[1])
            assert abs(bt.weight(v) - s) <= 1e-12 * bt.weight(v)
    # every original node is represented exactly once
    rep = _representative(bt)
    assert sorted(rep) == list(range(len(t)))
    # ancestor relations among original nodes are preserved
    anc_t = {v: set(t.ancestors(v)) for v in range(len(t))}
    anc_b = {v: set(bt.ancestors(v)) for v in range(len(bt))}
    for u in range(len(t)):
        for v in range(len(t)):
            if u == v:
                continue
            ru, rv = rep[u], rep[v]
            if ru == rv:
                # collapsed onto one node: they were a unary chain
                assert u in anc_t[v] or v in anc_t[u]
            else:
                assert (u in anc_t[v]) == (ru in anc_b[rv])


@settings(max_examples=60, deadline=None)
@given(hierarchy_docs)
def test_document_round_trip(doc):
    t = parse_tree(doc)
    t2 = parse_tree(tree_to_document(t))
    assert [(n.name, n.children) for n in t.nodes] == [(n.name, n.children) for n in t2.nodes]
    for v in range(len(t)):
        assert math.isclose(t.weight(v), t2.weight(v), rel_tol=1e-12)
