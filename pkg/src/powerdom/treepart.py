"""Connected tree partitions with sp(T) parts in which every part holds two
leaves whose connecting path passes the leaf-path condition: no two
consecutive path vertices are power dominated from outside the part."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import NotATreeError, PowerDomError
from .graph import Graph, bits, component_masks, is_tree, mask_of, popcount, tree_path
from .observe import power_dominate
from .partition import VertexPartition
from .solve import spider_cover_number


@dataclass(frozen=True)
class Condition1Report:
    part: int
    leaves: tuple[int, int]
    path: tuple[int, ...]
    pd_status: tuple[bool, ...]
    verdict: bool

    def to_json_obj(self) -> dict:
        return {
            "part": self.part,
            "leaves": list(self.leaves),
            "path": list(self.path),
            "pd_status": list(self.pd_status),
            "verdict": self.verdict,
        }


def condition1_holds(path_status: tuple[bool, ...]) -> bool:
    """Every power dominated path vertex has only non-dominated path neighbours."""
    for i, dominated in enumerate(path_status):
        if not dominated:
            continue
        if i > 0 and path_status[i - 1]:
            return False
        if i + 1 < len(path_status) and path_status[i + 1]:
            return False
    return True


def check_condition1(t: Graph, part: Iterable[int], w: int, x: int, part_index: int = 0) -> Condition1Report:
    """Evaluate the leaf-path condition for leaves ``w``, ``x`` of ``T`` inside ``part``.

    "Power dominated" is the final status under the starting set ``V(T) - part``.
    """
    if not is_tree(t):
        raise NotATreeError("the leaf-path condition is defined on trees")
    part = frozenset(part)
    t.check_vertices(part)
    if w == x:
        raise ValueError("the two leaves must be distinct")
    for leaf in (w, x):
        if t.degree(leaf) != 1:
            raise ValueError(f"vertex {leaf} is not a leaf of T")
        if leaf not in part:
            raise ValueError(f"leaf {leaf} is not in the part")
    state = power_dominate(t, (v for v in range(t.n) if v not in part))
    path = tuple(tree_path(t, w, x))
    status = tuple(state.is_observed(v) for v in path)
    return Condition1Report(part_index, (w, x), path, status, condition1_holds(status))


def _part_report(t: Graph, part_mask: int, idx: int, leaves_of_t: int) -> Condition1Report | None:
    cand = list(bits(part_mask & leaves_of_t))
    for w, x in combinations(cand, 2):
        rep = check_condition1(t, bits(part_mask), w, x, idx)
        if rep.verdict:
            return rep
    return None


def _contractible(t: Graph, u: int, v: int) -> bool:
    return t.degree(u) == 2 and t.degree(v) == 2


class Condition1SearchError(PowerDomError):
    pass


def tree_condition1_partition(t: Graph) -> tuple[VertexPartition, list[Condition1Report]]:
    """A partition of ``V(T)`` into sp(T) connected parts, each carrying a
    leaf pair passing the leaf-path condition, with the verifying reports.

    Parts are the components left after deleting ``sp(T) - 1`` edges.  Cuts
    through an edge joining two degree-2 vertices are tried last: such a pair
    can always be kept together (contract it, solve, expand).  Each part must
    contain two leaves of ``T`` before any closure is computed.
    """
    if not is_tree(t):
        raise NotATreeError("input must be a tree")
    if t.n < 2:
        raise ValueError("tree must have at least two vertices")
    sp = spider_cover_number(t).value
    leaves_of_t = mask_of(t.leaves())
    edges = t.edges()
    preferred = [e for e in edges if not _contractible(t, *e)]
    rest = [e for e in edges if _contractible(t, *e)]

    def attempts():
        yield from combinations(preferred, sp - 1)
        if rest:
            for cut in combinations(preferred + rest, sp - 1):
                if any(e in rest for e in cut):
                    yield cut

    for cut in attempts():
        rows = list(t.adj)
        for u, v in cut:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        parts = component_masks(Graph.from_masks(rows))
        if any(popcount(p & leaves_of_t) < 2 for p in parts):
            continue
        parts.sort(key=lambda m: m & -m)
        reports = []
        for idx, p in enumerate(parts):
            rep = _part_report(t, p, idx, leaves_of_t)
            if rep is None:
                break
            reports.append(rep)
        else:
            return VertexPartition.from_masks(t.n, parts), reports
    raise Condition1SearchError(f"no leaf-path partition with {sp} parts found")


def verify_condition1_partition(t: Graph, partition: VertexPartition, reports) -> bool:
    """Recheck a claimed leaf-path partition from scratch."""
    if partition.k != len(reports):
        return False
    for idx, (part, rep) in enumerate(zip(partition.parts, reports)):
        if len(component_masks(t, within=mask_of(part))) != 1:
            return False
        w, x = rep.leaves if isinstance(rep, Condition1Report) else rep["leaves"]
        try:
            fresh = check_condition1(t, part, w, x, idx)
        except ValueError:
            return False
        if not fresh.verdict:
            return False
        if isinstance(rep, Condition1Report) and fresh != rep:
            return False
    return True
