"""PQ-tree over a fixed ground set of rows, reduced one column at a time.

The tree represents exactly the set of row orders under which every column
reduced so far has its ones consecutive.  P-nodes permute children freely,
Q-nodes only reverse.  Reduction applies the standard template set (leaf,
P1-P6, Q1-Q3) expressed recursively: a pertinent node classifies as empty,
full, or partial, where a partial node normalizes to an ordered list of
subtrees reading empty-side first, full-side last.

One reduction costs O(tree size) for the count pass plus work proportional to
the pertinent subtree, so a k-row, c-column matrix reduces in O(c*k) time.
"""

from __future__ import annotations

import sys


class _Fail(Exception):
    pass


_LEAF, _P, _Q = 0, 1, 2

_EMPTY, _FULL, _PARTIAL = 0, 1, 2


class _Node:
    __slots__ = ("kind", "children", "row")

    def __init__(self, kind: int, children: list["_Node"] | None = None, row: int = 0):
        self.kind = kind
        self.children = children if children is not None else []
        self.row = row


def _make_p(nodes: list[_Node]) -> _Node:
    return nodes[0] if len(nodes) == 1 else _Node(_P, nodes)


def _make_q(items: list[_Node]) -> _Node:
    if len(items) == 1:
        return items[0]
    if len(items) == 2:
        return _Node(_P, items)
    return _Node(_Q, items)


class PQTree:
    """Certificate engine: feed row subsets via reduce(), read a frontier out."""

    def __init__(self, m: int):
        if m < 0:
            raise ValueError("row count must be nonnegative")
        self.m = m
        if m == 0:
            self.root: _Node | None = None
        elif m == 1:
            self.root = _Node(_LEAF, row=1)
        else:
            self.root = _Node(_P, [_Node(_LEAF, row=r) for r in range(1, m + 1)])
        # classification recurses along the pertinent subtree, whose depth is
        # bounded by the leaf count
        limit = 3 * m + 200
        if sys.getrecursionlimit() < limit:
            sys.setrecursionlimit(limit)
        self._pert: dict[int, int] = {}
        self._leaves: dict[int, int] = {}

    def reduce(self, mask: int) -> bool:
        """Constrain the tree so rows set in mask stay consecutive.

        Returns False (leaving the tree unchanged) when no frontier of the
        current tree keeps them consecutive; the tree is then unusable for
        further reductions of the same matrix.
        """
        size = mask.bit_count()
        if size <= 1 or size >= self.m:
            return True
        self._count(mask)
        # descend to the deepest node containing every pertinent leaf
        path: list[_Node] = []
        node = self.root
        while True:
            down = None
            for ch in node.children:
                if self._pert.get(id(ch), 0) == size:
                    down = ch
                    break
            if down is None:
                break
            path.append(node)
            node = down
        if self._pert[id(node)] == self._leaves[id(node)]:
            return True
        try:
            self._apply_root(node)
        except _Fail:
            return False
        self._normalize(node, path)
        return True

    def frontier(self) -> tuple[int, ...]:
        """Leftmost admissible row order."""
        if self.root is None:
            return ()
        out: list[int] = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.kind == _LEAF:
                out.append(node.row)
            else:
                stack.extend(reversed(node.children))
        return tuple(out)

    # -- internals --------------------------------------------------------

    def _count(self, mask: int):
        """One post-order pass filling per-node leaf and pertinent-leaf counts."""
        pert: dict[int, int] = {}
        leaves: dict[int, int] = {}
        stack: list[tuple[_Node, bool]] = [(self.root, False)]
        while stack:
            node, seen = stack.pop()
            if node.kind == _LEAF:
                leaves[id(node)] = 1
                pert[id(node)] = (mask >> (node.row - 1)) & 1
                continue
            if not seen:
                stack.append((node, True))
                for ch in node.children:
                    stack.append((ch, False))
            else:
                leaves[id(node)] = sum(leaves[id(ch)] for ch in node.children)
                pert[id(node)] = sum(pert[id(ch)] for ch in node.children)
        self._pert = pert
        self._leaves = leaves

    def _label(self, node: _Node) -> int:
        c = self._pert[id(node)]
        if c == 0:
            return _EMPTY
        if c == self._leaves[id(node)]:
            return _FULL
        return _PARTIAL

    def _partial_items(self, node: _Node) -> list[_Node]:
        """Replacement child list for a non-root partial node, empties first."""
        if node.kind == _LEAF:
            raise _Fail
        if node.kind == _P:
            empty, full, partial = [], [], []
            for ch in node.children:
                lab = self._label(ch)
                if lab == _EMPTY:
                    empty.append(ch)
                elif lab == _FULL:
                    full.append(ch)
                else:
                    partial.append(ch)
            if len(partial) > 1:
                raise _Fail
            items: list[_Node] = []
            if empty:
                items.append(_make_p(empty))
            if partial:
                items.extend(self._partial_items(partial[0]))
            if full:
                items.append(_make_p(full))
            return items
        # Q-node: children must read empties, then at most one partial, then
        # fulls, in the stored order or its reversal
        for seq in (node.children, node.children[::-1]):
            items = self._scan_q(seq)
            if items is not None:
                return items
        raise _Fail

    def _scan_q(self, seq: list[_Node]) -> list[_Node] | None:
        items: list[_Node] = []
        in_full = False
        for ch in seq:
            lab = self._label(ch)
            if not in_full:
                if lab == _EMPTY:
                    items.append(ch)
                elif lab == _PARTIAL:
                    items.extend(self._partial_items(ch))
                    in_full = True
                else:
                    items.append(ch)
                    in_full = True
            else:
                if lab != _FULL:
                    return None
                items.append(ch)
        return items

    def _apply_root(self, node: _Node):
        """Templates at the pertinent root, where the block may sit mid-frontier."""
        if node.kind == _LEAF:
            return
        if node.kind == _P:
            empty, full, partial = [], [], []
            for ch in node.children:
                lab = self._label(ch)
                if lab == _EMPTY:
                    empty.append(ch)
                elif lab == _FULL:
                    full.append(ch)
                else:
                    partial.append(ch)
            if len(partial) == 0:
                if len(full) >= 2:
                    node.children = empty + [_Node(_P, full)]
                return
            if len(partial) == 1:
                items = self._partial_items(partial[0])
                if full:
                    items = items + [_make_p(full)]
                node.children = empty + [_make_q(items)]
                return
            if len(partial) == 2:
                left = self._partial_items(partial[0])
                right = self._partial_items(partial[1])
                items = left + ([_make_p(full)] if full else []) + right[::-1]
                node.children = empty + [_make_q(items)]
                return
            raise _Fail
        # Q root: children must read E* [partial] F* [partial] E*; the left
        # partial splices empty-side out, the right one full-side in
        new_children: list[_Node] = []
        state = 0
        for ch in node.children:
            lab = self._label(ch)
            if state == 0:
                if lab == _EMPTY:
                    new_children.append(ch)
                elif lab == _PARTIAL:
                    new_children.extend(self._partial_items(ch))
                    state = 1
                else:
                    new_children.append(ch)
                    state = 1
            elif state == 1:
                if lab == _FULL:
                    new_children.append(ch)
                elif lab == _PARTIAL:
                    new_children.extend(self._partial_items(ch)[::-1])
                    state = 2
                else:
                    new_children.append(ch)
                    state = 2
            else:
                if lab != _EMPTY:
                    raise _Fail
                new_children.append(ch)
        node.children = new_children

    def _normalize(self, node: _Node, path: list[_Node]):
        """Splice out a root-template node left with a single child."""
        if node.kind == _LEAF or len(node.children) != 1:
            return
        child = node.children[0]
        if path:
            parent = path[-1]
            parent.children[parent.children.index(node)] = child
        else:
            self.root = child
