"""Simple undirected graphs on vertices ``0..n-1`` with bitset adjacency rows.

Vertex sets are passed around in two forms: as iterables of vertex indices at
the public surface and as Python ``int`` bitmasks (bit ``v`` set iff ``v`` is in
the set) inside the closure and search kernels.  :func:`mask_of` and
:func:`bits` convert between the two.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import CapExceeded, GraphFormatError

DEFAULT_VERTEX_CAP = 4096


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class Graph:
    """Immutable simple graph.

    ``adj[v]`` is the neighbour bitmask of ``v``.  Construction checks that the
    rows are symmetric and irreflexive; every constructor path in the package
    goes through :meth:`from_masks`, so the check is never skipped.
    """

    __slots__ = ("n", "adj", "labels", "_nbrs")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), labels: Sequence[str] | None = None):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        self._init(n, tuple(rows), labels)

    def _init(self, n: int, adj: tuple[int, ...], labels: Sequence[str] | None) -> None:
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            if row & ~full:
                raise ValueError(f"row {v} references a vertex outside 0..{n - 1}")
            for u in bits(row):
                if not adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise ValueError("one label per vertex required")
            if len(set(labels)) != n:
                raise ValueError("labels must be distinct")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", adj)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_nbrs", tuple(tuple(bits(r)) for r in adj))

    @classmethod
    def from_masks(cls, adj: Sequence[int], labels: Sequence[str] | None = None) -> "Graph":
        g = cls.__new__(cls)
        g._init(len(adj), tuple(adj), labels)
        return g

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj and self.labels == other.labels

    def __hash__(self):
        return hash((self.n, self.adj, self.labels))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"

    def __reduce__(self):
        return (Graph.from_masks, (self.adj, self.labels))

    # -- basic queries -------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def num_edges(self) -> int:
        return sum(len(nb) for nb in self._nbrs) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self._nbrs[u] if u < v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._nbrs[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def degrees(self) -> list[int]:
        return [len(nb) for nb in self._nbrs]

    @property
    def max_degree(self) -> int:
        return max((len(nb) for nb in self._nbrs), default=0)

    def closed_mask(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def closed_neighborhood(self, mask: int) -> int:
        """N[S] for the vertex set ``mask``."""
        out = mask
        for v in bits(mask):
            out |= self.adj[v]
        return out

    def leaves(self) -> list[int]:
        return [v for v in range(self.n) if len(self._nbrs[v]) == 1]

    def name(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def vertex(self, token: str | int) -> int:
        """Resolve a label or a decimal index to a vertex index."""
        if isinstance(token, int):
            v = token
        elif self.labels is not None and token in self.labels:
            return self.labels.index(token)
        else:
            try:
                v = int(token)
            except ValueError:
                raise KeyError(f"unknown vertex {token!r}") from None
        if not 0 <= v < self.n:
            raise KeyError(f"vertex {v} out of range")
        return v

    def check_vertices(self, vertices: Iterable[int]) -> int:
        m = 0
        for v in vertices:
            if not isinstance(v, int) or not 0 <= v < self.n:
                raise ValueError(f"vertex {v!r} out of range 0..{self.n - 1}")
            m |= 1 << v
        return m

    def relabel(self, labels: Sequence[str] | None) -> "Graph":
        return Graph.from_masks(self.adj, labels)

    # -- serialisation ---------------------------------------------------

    def to_json_obj(self) -> dict:
        obj: dict = {"n": self.n, "edges": [list(e) for e in self.edges()]}
        if self.labels is not None:
            obj["labels"] = list(self.labels)
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    def to_edge_list(self) -> str:
        lines = [f"n {self.n}"]
        if self.labels is not None:
            lines.append("labels " + " ".join(self.labels))
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"

    def to_graph6(self) -> str:
        return write_graph6(self)


# -- parsing -------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse whitespace-separated ``u v`` pairs, one per line.

    ``#`` starts a comment.  Optional directives: ``n <count>`` fixes the vertex
    count (isolated trailing vertices), ``labels <name0> <name1> ...`` names
    the vertices.  Duplicate edges are merged.
    """
    n_header = None
    labels = None
    edges = set()
    top = -1
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "n":
            if len(tok) != 2:
                raise GraphFormatError("header must be 'n <count>'", lineno)
            try:
                n_header = int(tok[1])
            except ValueError:
                raise GraphFormatError(f"non-integer vertex count {tok[1]!r}", lineno) from None
            if n_header < 0:
                raise GraphFormatError("negative vertex count", lineno)
            continue
        if tok[0] == "labels":
            labels = tok[1:]
            continue
        if len(tok) != 2:
            raise GraphFormatError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(tok[0]), int(tok[1])
        except ValueError:
            raise GraphFormatError(f"non-integer token in {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise GraphFormatError("negative vertex index", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        edges.add((min(u, v), max(u, v)))
        top = max(top, u, v)
    n = top + 1 if n_header is None else n_header
    if top >= n:
        raise GraphFormatError(f"vertex {top} exceeds header count {n}")
    if labels is not None and len(labels) != n:
        raise GraphFormatError(f"{len(labels)} labels for {n} vertices")
    return Graph(n, sorted(edges), labels)


def _g6_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def write_graph6(g: Graph) -> str:
    out = bytearray(_g6_size(g.n))
    acc = nbits = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return out.decode("ascii")


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphFormatError("empty graph6 string")
    data = s.encode("ascii", errors="replace")
    for pos, c in enumerate(data):
        if not 63 <= c <= 126:
            raise GraphFormatError(f"byte {c} outside graph6 range", pos, "byte")
    if data[0] != 126:
        n, body = data[0] - 63, data[1:]
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise GraphFormatError("truncated 8-byte size header")
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        body = data[8:]
    else:
        if len(data) < 4:
            raise GraphFormatError("truncated 4-byte size header")
        n = 0
        for c in data[1:4]:
            n = (n << 6) | (c - 63)
        body = data[4:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise GraphFormatError(f"expected {need} data bytes for n={n}, got {len(body)}")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            c = body[k // 6] - 63
            if c >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if need and nbits % 6:
        pad = 6 - nbits % 6
        if (body[-1] - 63) & ((1 << pad) - 1):
            raise GraphFormatError("padding bits set", len(data) - 1, "byte")
    return Graph.from_masks(rows)


def graph_from_json_obj(obj: dict) -> Graph:
    if "graph" in obj and isinstance(obj["graph"], dict):
        obj = obj["graph"]
    try:
        n = int(obj["n"])
        edges = [(int(u), int(v)) for u, v in obj.get("edges", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"bad graph JSON: {exc}") from None
    try:
        return Graph(n, edges, obj.get("labels"))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def parse_graph_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    return graph_from_json_obj(obj)


# -- constructions ---------------------------------------------------------


@dataclass(frozen=True)
class ProductLabeling:
    """Row-major indexing of ``V(G) x V(H)``: ``(g, h) -> g * n_h + h``."""

    n_g: int
    n_h: int

    def index(self, g: int, h: int) -> int:
        if not (0 <= g < self.n_g and 0 <= h < self.n_h):
            raise ValueError(f"({g}, {h}) outside {self.n_g}x{self.n_h}")
        return g * self.n_h + h

    def coords(self, v: int) -> tuple[int, int]:
        if not 0 <= v < self.n_g * self.n_h:
            raise ValueError(f"product vertex {v} out of range")
        return divmod(v, self.n_h)

    def product_mask(self, g_mask: int, h_mask: int) -> int:
        m = 0
        for g in bits(g_mask):
            m |= h_mask << (g * self.n_h)
        return m


def cartesian_product(g: Graph, h: Graph, cap: int = DEFAULT_VERTEX_CAP) -> tuple[Graph, ProductLabeling]:
    if g.n == 0 or h.n == 0:
        raise ValueError("both factors must be nonempty")
    size = g.n * h.n
    if size > cap:
        raise CapExceeded(f"product has {size} vertices, cap is {cap}", required=size)
    lab = ProductLabeling(g.n, h.n)
    rows = []
    for a in range(g.n):
        base = a * h.n
        for b in range(h.n):
            row = h.adj[b] << base
            for a2 in g.neighbors(a):
                row |= 1 << (a2 * h.n + b)
            rows.append(row)
    labels = None
    if g.labels is not None or h.labels is not None:
        labels = [f"({g.name(a)},{h.name(b)})" for a in range(g.n) for b in range(h.n)]
    return Graph.from_masks(rows, labels), lab


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Return ``G[S]`` and the map from new indices to old ones (increasing)."""
    keep = sorted(set(vertices))
    g.check_vertices(keep)
    pos = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        rows.append(mask_of(pos[u] for u in g.neighbors(v) if u in pos))
    labels = [g.labels[v] for v in keep] if g.labels is not None else None
    return Graph.from_masks(rows, labels), keep


def remove_vertices(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    drop = g.check_vertices(vertices)
    return induced_subgraph(g, [v for v in range(g.n) if not drop >> v & 1])


def disjoint_union(*graphs: Graph) -> Graph:
    rows: list[int] = []
    offset = 0
    for gr in graphs:
        rows.extend(r << offset for r in gr.adj)
        offset += gr.n
    return Graph.from_masks(rows)


def component_masks(g: Graph, within: int | None = None) -> list[int]:
    """Connected components of ``G[within]`` as bitmasks, ordered by least vertex."""
    remaining = g.full_mask if within is None else within
    out = []
    while remaining:
        seed = remaining & -remaining
        comp = frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            nxt &= remaining & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        remaining &= ~comp
    return out


def components(g: Graph) -> list[frozenset[int]]:
    return [frozenset(bits(c)) for c in component_masks(g)]


def is_connected(g: Graph) -> bool:
    return g.n == 0 or len(component_masks(g)) == 1


def distance(g: Graph, u: int, v: int) -> int | None:
    """BFS hop count from ``u`` to ``v``; ``None`` if unreachable."""
    g.check_vertices((u, v))
    if u == v:
        return 0
    seen = {u}
    queue = deque([(u, 0)])
    while queue:
        x, d = queue.popleft()
        for y in g.neighbors(x):
            if y == v:
                return d + 1
            if y not in seen:
                seen.add(y)
                queue.append((y, d + 1))
    return None


def tree_path(g: Graph, u: int, v: int) -> list[int]:
    """Vertices of a shortest ``u``-``v`` path (the unique path in a tree)."""
    g.check_vertices((u, v))
    parent = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in g.neighbors(x):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    if v not in parent:
        raise ValueError(f"no path between {u} and {v}")
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    return path[::-1]


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.num_edges == g.n - 1 and is_connected(g)


def is_spider(g: Graph) -> bool:
    """A tree with at most one vertex of degree >= 3 (paths and stars included)."""
    return is_tree(g) and sum(1 for d in g.degrees() if d >= 3) <= 1
