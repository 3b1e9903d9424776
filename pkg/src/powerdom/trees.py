"""Small-tree utilities: centre-rooted canonical forms, Prüfer decoding and
enumeration of free trees up to isomorphism."""

from __future__ import annotations

import heapq
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import CapExceeded, NotATreeError
from .graph import Graph, is_tree

MAX_ENUM_ORDER = 12


def tree_centers(t: Graph) -> list[int]:
    if not is_tree(t):
        raise NotATreeError("centers are defined for trees only")
    if t.n <= 2:
        return list(range(t.n))
    deg = t.degrees()
    layer = [v for v in range(t.n) if deg[v] == 1]
    left = t.n
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for u in t.neighbors(v):
                deg[u] -= 1
                if deg[u] == 1:
                    nxt.append(u)
        layer = nxt
    return sorted(layer)


def _rooted_code(t: Graph, root: int) -> str:
    # AHU encoding, iterative to stay clear of the recursion limit
    order = [root]
    parent = {root: -1}
    for v in order:
        for u in t.neighbors(v):
            if u != parent[v]:
                parent[u] = v
                order.append(u)
    code: dict[int, str] = {}
    for v in reversed(order):
        kids = sorted(code[u] for u in t.neighbors(v) if u != parent[v])
        code[v] = "(" + "".join(kids) + ")"
    return code[root]


def canonical_form(t: Graph) -> str:
    """Isomorphism-invariant string for a tree (min over centre-rooted codes)."""
    return min(_rooted_code(t, c) for c in tree_centers(t))


def tree_from_code(code: str) -> Graph:
    """Rebuild a tree from a rooted parenthesis code, numbering vertices in preorder."""
    edges = []
    stack: list[int] = []
    n = 0
    for ch in code:
        if ch == "(":
            if stack:
                edges.append((stack[-1], n))
            stack.append(n)
            n += 1
        else:
            stack.pop()
    return Graph(n, edges)


def prufer_to_tree(seq: Sequence[int], n: int | None = None) -> Graph:
    n = len(seq) + 2 if n is None else n
    if len(seq) != n - 2:
        raise ValueError("Prüfer sequence must have length n - 2")
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return Graph(n, edges)


@lru_cache(maxsize=None)
def _codes(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("()",)
    seen = set()
    for code in _codes(n - 1):
        base = tree_from_code(code)
        for v in range(base.n):
            grown = Graph(n, base.edges() + [(v, n - 1)])
            seen.add(canonical_form(grown))
    return tuple(sorted(seen, key=lambda c: (_max_degree_of(c), c)))


def _max_degree_of(code: str) -> int:
    return tree_from_code(code).max_degree


def enumerate_trees(n: int) -> Iterator[Graph]:
    """Yield one tree per isomorphism class on ``n`` vertices.

    Trees on ``n`` vertices are grown from those on ``n - 1`` by attaching a
    leaf anywhere and deduplicating canonical forms.  Order is deterministic:
    by maximum degree, then canonical code (so the path comes first).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > MAX_ENUM_ORDER:
        raise CapExceeded(f"tree enumeration capped at n={MAX_ENUM_ORDER}", required=n)
    for code in _codes(n):
        yield tree_from_code(code)
