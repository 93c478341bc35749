"""Weighted trees: ingestion, normalization and the binary transform.

Trees are stored as flat arenas of immutable :class:`Node` records indexed by
integer id, so every traversal here uses an explicit stack and arbitrarily
deep hierarchies are safe.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional, Sequence

from . import _jsonio
from .exceptions import EmptyTree, MalformedDocument, NonPositiveWeight

__all__ = [
    "Node",
    "WeightedTree",
    "BinaryTree",
    "parse_tree",
    "load_tree",
    "scan_filesystem",
    "to_binary",
    "tree_to_document",
]


@dataclass(frozen=True)
class Node:
    id: int
    name: str
    weight: float
    children: tuple[int, ...]
    parent: Optional[int]

    @property
    def is_leaf(self) -> bool:
        return not self.children


class WeightedTree:
    """A rooted tree whose node weights are normalized so the root weighs 1.

    Nodes are numbered in preorder with the root at id 0. Internal weights
    always equal the sum of their children's weights; they are recomputed
    from the leaves on construction.
    """

    def __init__(self, nodes: Sequence[Node], root: int = 0):
        self.nodes: tuple[Node, ...] = tuple(nodes)
        self.root = root

    def __len__(self) -> int:
        return len(self.nodes)

    def __getitem__(self, node_id: int) -> Node:
        return self.nodes[node_id]

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={len(self)}, depth={self.depth()})"

    @property
    def n(self) -> int:
        return len(self.nodes)

    def children(self, node_id: int) -> tuple[int, ...]:
        return self.nodes[node_id].children

    def weight(self, node_id: int) -> float:
        return self.nodes[node_id].weight

    def leaves(self) -> list[int]:
        return [nd.id for nd in self.preorder_nodes() if nd.is_leaf]

    def preorder(self) -> Iterator[int]:
        stack = [self.root]
        while stack:
            v = stack.pop()
            yield v
            stack.extend(reversed(self.nodes[v].children))

    def preorder_nodes(self) -> Iterator[Node]:
        for v in self.preorder():
            yield self.nodes[v]

    def postorder(self) -> list[int]:
        order = list(self.preorder())
        order.reverse()
        return order

    def depths(self) -> dict[int, int]:
        """Edge-count depth of every node (root = 0)."""
        out = {self.root: 0}
        for v in self.preorder():
            for c in self.nodes[v].children:
                out[c] = out[v] + 1
        return out

    def depth(self) -> int:
        return max(self.depths().values())

    def ancestors(self, node_id: int) -> list[int]:
        out = []
        p = self.nodes[node_id].parent
        while p is not None:
            out.append(p)
            p = self.nodes[p].parent
        return out

    def path(self, node_id: int) -> str:
        names = [self.nodes[node_id].name]
        names.extend(self.nodes[a].name for a in self.ancestors(node_id))
        names.pop()  # the root contributes the leading "/"
        return "/" + "/".join(reversed(names))

    def subtree_sizes(self) -> dict[int, int]:
        size: dict[int, int] = {}
        for v in self.postorder():
            size[v] = 1 + sum(size[c] for c in self.nodes[v].children)
        return size


class BinaryTree(WeightedTree):
    """Binary tree produced by :func:`to_binary`.

    ``origin[v]`` is the id of the source-tree node that ``v`` stands for, or
    ``None`` for synthetic nodes. ``collapsed[v]`` lists every source node
    represented by ``v``: the node itself plus the unary chain above it that
    was removed during the transform.
    """

    def __init__(
        self,
        nodes: Sequence[Node],
        origin: Sequence[Optional[int]],
        collapsed: Sequence[tuple[int, ...]],
        source: WeightedTree,
        root: int = 0,
    ):
        super().__init__(nodes, root)
        self.origin: tuple[Optional[int], ...] = tuple(origin)
        self.collapsed: tuple[tuple[int, ...], ...] = tuple(collapsed)
        self.source = source

    def is_synthetic(self, node_id: int) -> bool:
        return self.origin[node_id] is None

    def path(self, node_id: int) -> str:
        o = self.origin[node_id]
        if o is not None:
            return self.source.path(o)
        # synthetic nodes hang off the nearest original ancestor
        p = self.nodes[node_id].parent
        while p is not None and self.origin[p] is None:
            p = self.nodes[p].parent
        base = "" if p is None else self.source.path(self.origin[p]).rstrip("/")
        return f"{base}/~{node_id}"


# ---------------------------------------------------------------------------
# construction helpers


def _build(
    names: list[str],
    raw_leaf_weight: list[Optional[float]],
    children: list[list[int]],
    root: int = 0,
) -> WeightedTree:
    """Renumber to preorder, normalize leaf weights and sum them upward."""
    order: list[int] = []
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(reversed(children[v]))
    new_id = {old: i for i, old in enumerate(order)}

    # raw subtree sums, then one division each: the root gets exactly 1
    raw_sum: dict[int, float] = {}
    for old in reversed(order):
        if children[old]:
            raw_sum[old] = math.fsum(raw_sum[c] for c in children[old])
        else:
            raw_sum[old] = raw_leaf_weight[old]  # type: ignore[assignment]
    total = raw_sum[root]
    if not total > 0 or not math.isfinite(total):
        raise NonPositiveWeight("total leaf weight must be positive and finite")
    weight = [0.0] * len(order)
    for old in order:
        weight[new_id[old]] = raw_sum[old] / total

    parent: list[Optional[int]] = [None] * len(order)
    for old in order:
        for c in children[old]:
            parent[new_id[c]] = new_id[old]
    nodes = [
        Node(new_id[old], names[old], weight[new_id[old]],
             tuple(new_id[c] for c in children[old]), parent[new_id[old]])
        for old in order
    ]
    return WeightedTree(nodes, 0)


def parse_tree(document) -> WeightedTree:
    """Build a normalized :class:`WeightedTree` from a hierarchy document.

    ``document`` is either the decoded JSON object or its text. Each node is
    ``{"name": str, "weight": number}`` (leaf) or
    ``{"name": str, "children": [...]}`` (internal). Internal weights in the
    document are not allowed; they are always derived from the leaves.
    """
    if isinstance(document, (str, bytes)):
        document = _jsonio.loads(document.decode() if isinstance(document, bytes) else document)
    if document is None or document == {} or document == []:
        raise EmptyTree("empty hierarchy document")
    if not isinstance(document, dict):
        raise MalformedDocument("hierarchy root must be a JSON object")

    names: list[str] = []
    raw: list[Optional[float]] = []
    children: list[list[int]] = []
    stack: list[tuple[object, Optional[int], int]] = [(document, None, 0)]
    while stack:
        obj, parent, pos = stack.pop()
        if not isinstance(obj, dict):
            raise MalformedDocument("every node must be a JSON object")
        unknown = set(obj) - {"name", "weight", "children"}
        if unknown:
            raise MalformedDocument(f"unexpected keys {sorted(unknown)}")
        name = obj.get("name", str(pos))
        if not isinstance(name, str):
            raise MalformedDocument("node name must be a string")
        has_w, has_c = "weight" in obj, "children" in obj
        if has_w == has_c:
            raise MalformedDocument(f"node {name!r} needs exactly one of 'weight' or 'children'")
        idx = len(names)
        names.append(name)
        children.append([])
        if parent is not None:
            children[parent].append(idx)
        if has_w:
            w = obj["weight"]
            if isinstance(w, bool) or not isinstance(w, (int, float)):
                raise MalformedDocument(f"weight of {name!r} must be a number")
            if not math.isfinite(w):
                raise MalformedDocument(f"weight of {name!r} must be finite")
            if w <= 0:
                raise NonPositiveWeight(f"leaf {name!r} has non-positive weight {w}")
            raw.append(float(w))
        else:
            kids = obj["children"]
            if not isinstance(kids, list):
                raise MalformedDocument(f"children of {name!r} must be a list")
            if not kids:
                if parent is None:
                    raise EmptyTree("hierarchy has no leaves")
                raise MalformedDocument(f"internal node {name!r} has no children")
            raw.append(None)
            # pushed reversed so children are visited in document order
            for j in range(len(kids) - 1, -1, -1):
                stack.append((kids[j], idx, j))
    return _build(names, raw, children)


def load_tree(path) -> WeightedTree:
    """Load a hierarchy JSON file, or scan a directory."""
    p = Path(path)
    if p.is_dir():
        return scan_filesystem(p)
    return parse_tree(p.read_text(encoding="utf-8"))


def scan_filesystem(path) -> WeightedTree:
    """Turn a directory into a weighted tree; file sizes are leaf weights.

    Empty files, and directories that end up without any non-empty file, are
    dropped. Symlinks are not followed. Siblings are ordered by name.
    """
    root = Path(path)
    if not root.is_dir():
        raise NotADirectoryError(str(root))

    names: list[str] = []
    raw: list[Optional[float]] = []
    children: list[list[int]] = []

    def add(name: str, weight: Optional[float]) -> int:
        names.append(name)
        raw.append(weight)
        children.append([])
        return len(names) - 1

    root_id = add(root.name or str(root), None)
    stack = [(root, root_id)]
    while stack:
        d, idx = stack.pop()
        with os.scandir(d) as it:
            entries = sorted(it, key=lambda e: e.name)
        for e in entries:
            if e.is_symlink():
                continue
            if e.is_dir(follow_symlinks=False):
                child = add(e.name, None)
                children[idx].append(child)
                stack.append((Path(e.path), child))
            elif e.is_file(follow_symlinks=False):
                size = e.stat(follow_symlinks=False).st_size
                if size > 0:
                    children[idx].append(add(e.name, float(size)))

    # prune directories without positive-size files, bottom-up
    alive = [True] * len(names)
    order: list[int] = []
    stack2 = [root_id]
    while stack2:
        v = stack2.pop()
        order.append(v)
        stack2.extend(children[v])
    for v in reversed(order):
        if raw[v] is None:
            children[v] = [c for c in children[v] if alive[c]]
            alive[v] = bool(children[v])
    if not alive[root_id]:
        raise EmptyTree(f"no non-empty files under {root}")
    return _build(names, raw, children, root_id)


def tree_to_document(tree: WeightedTree) -> dict:
    """Inverse of :func:`parse_tree` (weights are the normalized ones)."""
    docs: dict[int, dict] = {}
    for v in tree.postorder():
        nd = tree[v]
        if nd.is_leaf:
            docs[v] = {"name": nd.name, "weight": nd.weight}
        else:
            docs[v] = {"name": nd.name, "children": [docs.pop(c) for c in nd.children]}
    return docs[tree.root]


# ---------------------------------------------------------------------------
# binary transform


def to_binary(tree: WeightedTree) -> BinaryTree:
    """Replace high-degree nodes so that every internal node has two children.

    A node with ``k >= 3`` children keeps its largest child subtree ``mu``
    (first one on ties) one level below a new node, and splits the others into
    two groups whose subtree sizes each stay below half of the node's subtree
    size. Unary nodes are then removed. The resulting depth is at most
    ``2 * (depth + ceil(log2 n))``.
    """
    kids: list[list[int]] = [list(nd.children) for nd in tree.nodes]
    origin: list[Optional[int]] = [nd.id for nd in tree.nodes]
    size = [0] * len(tree)
    for v, s in tree.subtree_sizes().items():
        size[v] = s

    def new_node(ch: list[int]) -> int:
        kids.append(ch)
        origin.append(None)
        size.append(1 + sum(size[c] for c in ch))
        return len(kids) - 1

    stack = [tree.root]
    while stack:
        v = stack.pop()
        ch = kids[v]
        if len(ch) <= 2:
            stack.extend(ch)
            continue
        mu = max(ch, key=lambda c: (size[c], -ch.index(c)))
        others = [c for c in ch if c != mu]
        total = size[v]
        c1: list[int] = []
        acc = 0
        for c in others:
            if 2 * (acc + size[c]) >= total:
                break
            c1.append(c)
            acc += size[c]
        c2 = others[len(c1):]
        if not c2:
            c2 = [c1.pop()]
        v1 = new_node(c1)
        v3 = new_node(c2)
        v2 = new_node([mu, v3])
        kids[v] = [v1, v2]
        size[v] = 1 + size[v1] + size[v2]
        stack.extend((v3, mu, v1))

    def representative(v: int) -> tuple[int, list[int]]:
        chain = []
        while len(kids[v]) == 1:
            chain.append(v)
            v = kids[v][0]
        return v, chain

    names: list[str] = []
    out_children: list[list[int]] = []
    out_origin: list[Optional[int]] = []
    out_collapsed: list[tuple[int, ...]] = []
    parent: list[Optional[int]] = []

    r, chain = representative(tree.root)
    work = [(r, chain, None)]
    leaf_w: list[float] = []
    while work:
        v, chain, par = work.pop()
        i = len(names)
        names.append(tree[origin[v]].name if origin[v] is not None else "")
        out_origin.append(origin[v])
        members = [origin[c] for c in chain if origin[c] is not None]
        if origin[v] is not None:
            members.append(origin[v])
        out_collapsed.append(tuple(members))  # type: ignore[arg-type]
        out_children.append([])
        parent.append(par)
        leaf_w.append(tree[origin[v]].weight if not kids[v] else 0.0)  # type: ignore[index]
        if par is not None:
            out_children[par].append(i)
        # push right child first so the left child gets the smaller preorder id
        for c in reversed(kids[v]):
            rc, cchain = representative(c)
            work.append((rc, cchain, i))

    weight = leaf_w[:]
    for i in range(len(names) - 1, -1, -1):
        if out_children[i]:
            a, b = out_children[i]
            weight[i] = weight[a] + weight[b]
    nodes = [
        Node(i, names[i], weight[i], tuple(out_children[i]), parent[i])
        for i in range(len(names))
    ]
    return BinaryTree(nodes, out_origin, out_collapsed, tree, 0)
