"""Named graphs and parameterised families, each with the partition (and
where available the blocking sets or cut-set) that certifies its claims."""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .graph import Graph, is_connected
from .partition import VertexPartition

FAMILY_TAGS = (
    "figure1", "figure2", "gms", "necklace", "familyF", "section4",
    "spider", "path", "star", "doublestar", "complete_bipartite",
)


class FamilyInstance(NamedTuple):
    graph: Graph
    partition: VertexPartition | None
    u_sets: tuple[frozenset[int], ...] | None = None
    cut: tuple[int, ...] | None = None
    cut_parts: tuple[tuple[int, ...], ...] | None = None


def _labelled(labels: Sequence[str], edges: Sequence[tuple[str, str]]) -> Graph:
    idx = {name: i for i, name in enumerate(labels)}
    return Graph(len(labels), [(idx[a], idx[b]) for a, b in edges], labels)


def _parts(g: Graph, groups: Sequence[Sequence[str]]) -> VertexPartition:
    return VertexPartition.of(g.n, [[g.vertex(x) for x in grp] for grp in groups])


FIGURE1_EDGES = (
    ("w1", "w2"), ("w2", "w3"), ("w3", "v1"), ("v1", "v3"), ("w4", "w5"), ("w5", "w6"),
    ("w6", "u1"), ("u1", "u3"), ("v4", "v1"), ("v2", "v1"), ("u4", "u1"), ("u2", "u1"),
    ("w5", "w3"), ("w6", "w2"),
)

# edges whose deletion leaves a spanning tree (the 4-cycle w2 w3 w5 w6)
FIGURE1_CYCLE = (("w2", "w3"), ("w3", "w5"), ("w5", "w6"), ("w2", "w6"))


def gen_figure1() -> FamilyInstance:
    labels = [f"u{i}" for i in range(1, 5)] + [f"v{i}" for i in range(1, 5)] + [f"w{i}" for i in range(1, 7)]
    g = _labelled(labels, FIGURE1_EDGES)
    part = _parts(g, [labels[0:4], labels[4:8], labels[8:14]])
    return FamilyInstance(g, part)


def figure1_spanning_trees() -> list[Graph]:
    g = gen_figure1().graph
    out = []
    for a, b in FIGURE1_CYCLE:
        drop = {g.vertex(a), g.vertex(b)}
        out.append(Graph(g.n, [e for e in g.edges() if set(e) != drop], g.labels))
    return out


FIGURE2_EDGES = (
    ("l1", "v1"), ("l2", "v1"), ("l3", "v1"), ("v1", "u1"), ("u1", "u2"), ("u2", "z"),
    ("z", "u3"), ("u3", "u4"), ("u4", "v2"), ("l4", "v2"), ("l5", "v2"), ("l6", "v2"),
    ("z", "u5"), ("u5", "u6"), ("u6", "v3"), ("l7", "v3"), ("l8", "v3"), ("l9", "v3"),
    ("u2", "u5"), ("u2", "u3"), ("u1", "z"),
)


def gen_figure2() -> FamilyInstance:
    labels = [f"l{i}" for i in range(1, 10)] + ["v1", "v2", "v3"] + [f"u{i}" for i in range(1, 7)] + ["z"]
    g = _labelled(labels, FIGURE2_EDGES)
    part = _parts(g, [
        ["l1", "l2", "l3", "v1"],
        ["u1", "u2", "z", "u3", "u4", "u5", "u6"],
        ["v2", "l4", "l5", "l6"],
        ["v3", "l7", "l8", "l9"],
    ])
    return FamilyInstance(g, part)


def gen_gms(m: int, s: int) -> FamilyInstance:
    """m copies of a once-subdivided K_{1,s+2} joined through s hub vertices.

    Copy ``i`` has centre ``v{i}``, subdivision vertices ``y{i}_{j}`` and
    leaves ``x{i}_{j}`` (legs ``j = 1..s+2``); hub ``d{j}`` sees ``x{i}_{j}``
    and ``y{i}_{j}`` in every copy.  The cut-set is the hubs.
    """
    if m < 2 or s < 1:
        raise ValueError("gen_gms needs m >= 2 and s >= 1")
    labels: list[str] = []
    edges: list[tuple[str, str]] = []
    for i in range(1, m + 1):
        labels.append(f"v{i}")
        for j in range(1, s + 3):
            labels += [f"y{i}_{j}", f"x{i}_{j}"]
            edges += [(f"v{i}", f"y{i}_{j}"), (f"y{i}_{j}", f"x{i}_{j}")]
    for j in range(1, s + 1):
        labels.append(f"d{j}")
        for i in range(1, m + 1):
            edges += [(f"d{j}", f"x{i}_{j}"), (f"d{j}", f"y{i}_{j}")]
    g = _labelled(labels, edges)
    groups, u_groups = [], []
    for j in range(1, s + 1):
        groups.append([f"d{j}"] + [f"{c}{i}_{j}" for i in range(1, m + 1) for c in "xy"])
        u_groups.append([f"d{j}"] + [f"x{i}_{j}" for i in range(1, m + 1)])
    for i in range(1, m + 1):
        tail = [f"{c}{i}_{j}" for j in (s + 1, s + 2) for c in "xy"]
        groups.append([f"v{i}"] + tail)
        u_groups.append(tail)
    part = _parts(g, groups)
    u_sets = tuple(frozenset(g.vertex(x) for x in grp) for grp in u_groups)
    cut = tuple(g.vertex(f"d{j}") for j in range(1, s + 1))
    return FamilyInstance(g, part, u_sets, cut)


def gen_necklace(k: int) -> FamilyInstance:
    """k diamonds in a ring; diamond ``i`` is ``a{i} b{i} c{i} e{i}`` with
    ``a``/``e`` the degree-2 tips, and ``e{i}`` matched to ``a{i+1}``."""
    if k < 3:
        raise ValueError("necklace needs k >= 3")
    labels, edges = [], []
    for i in range(k):
        a, b, c, e = (f"{t}{i + 1}" for t in "abce")
        labels += [a, b, c, e]
        edges += [(a, b), (a, c), (b, c), (b, e), (c, e)]
        edges.append((e, f"a{(i + 1) % k + 1}"))
    g = _labelled(labels, edges)
    part = VertexPartition.of(g.n, [range(4 * i, 4 * i + 4) for i in range(k)])
    u_sets = tuple(frozenset((4 * i + 1, 4 * i + 2)) for i in range(k))
    return FamilyInstance(g, part, u_sets)


def gen_family_F(h: Graph, pendant_edge_flags: Sequence[bool] | None = None) -> FamilyInstance:
    """Attach two pendant vertices to every vertex of the connected graph ``h``,
    optionally joining the two pendants of vertex ``i`` when ``flags[i]``."""
    if h.n < 1 or not is_connected(h):
        raise ValueError("family F needs a nonempty connected base graph")
    flags = [False] * h.n if pendant_edge_flags is None else list(pendant_edge_flags)
    if len(flags) != h.n:
        raise ValueError("one pendant-edge flag per base vertex")
    n = h.n
    edges = list(h.edges())
    for i in range(n):
        p1, p2 = n + 2 * i, n + 2 * i + 1
        edges += [(i, p1), (i, p2)]
        if flags[i]:
            edges.append((p1, p2))
    base = [h.name(i) for i in range(n)]
    labels = base + [f"{b}_{k}" for b in base for k in (1, 2)]
    g = Graph(3 * n, edges, labels)
    part = VertexPartition.of(g.n, [(i, n + 2 * i, n + 2 * i + 1) for i in range(n)]) if n >= 1 else None
    u_sets = tuple(frozenset((n + 2 * i, n + 2 * i + 1)) for i in range(n))
    return FamilyInstance(g, part, u_sets)


def gen_section4_example(n: int) -> FamilyInstance:
    """Two double stars (centres joined, n leaves each) plus two non-adjacent
    vertices ``x1``, ``x2`` adjacent to all of both double stars."""
    if n < 3:
        raise ValueError("section-4 example needs n >= 3")
    labels, edges = [], []
    for i in (1, 2):
        for side in "ab":
            centre = f"h{i}{side}"
            labels.append(centre)
            for j in range(1, n + 1):
                labels.append(f"h{i}{side}{j}")
                edges.append((centre, f"h{i}{side}{j}"))
        edges.append((f"h{i}a", f"h{i}b"))
    body = list(labels)
    labels += ["x1", "x2"]
    for x in ("x1", "x2"):
        edges += [(x, v) for v in body]
    g = _labelled(labels, edges)
    x1, x2 = g.vertex("x1"), g.vertex("x2")
    return FamilyInstance(g, None, None, (x1, x2), ((x1,), (x2,)))


# -- corpus constructors ---------------------------------------------------------


def gen_path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def gen_complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def gen_star(n: int) -> Graph:
    """K_{1,n}: centre 0 and leaves 1..n."""
    if n < 1:
        raise ValueError("star needs n >= 1 leaves")
    return Graph(n + 1, [(0, i) for i in range(1, n + 1)])


def gen_spider(legs: Sequence[int]) -> Graph:
    """Centre 0 with one path of the given length per leg."""
    if not legs or any(x < 1 for x in legs):
        raise ValueError("spider needs at least one leg, all of length >= 1")
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(nxt, edges)


def gen_doublestar(p: int, q: int) -> Graph:
    """Adjacent centres 0 and 1; leaves 2..p+1 on 0 and p+2..p+q+1 on 1."""
    if p < 1 or q < 1:
        raise ValueError("double star needs p, q >= 1")
    edges = [(0, 1)] + [(0, 2 + i) for i in range(p)] + [(1, 2 + p + i) for i in range(q)]
    return Graph(p + q + 2, edges)


def gen_complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("complete bipartite needs a, b >= 1")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def random_graph(n: int, p: float, rng, connected: bool = False) -> Graph:
    """Seeded G(n, p); with ``connected`` a random spanning tree is laid first."""
    edges = set()
    if connected and n > 1:
        order = list(range(n))
        rng.shuffle(order)
        for i in range(1, n):
            u, v = order[i], order[rng.randrange(i)]
            edges.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return Graph(n, sorted(edges))


def random_tree(n: int, rng) -> Graph:
    return random_graph(n, 0.0, rng, connected=True)
