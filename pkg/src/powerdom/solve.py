"""Exact minimum-set solvers: power domination, zero forcing, domination and
spider cover numbers, each returned with a checkable witness.

All three set invariants are monotone (a superset of a solution is a
solution), so the search only has to scan one subset size at a time: if no
``k``-subset works then no smaller subset works either.  The search starts at
a proven lower bound (every connected component needs a vertex of its own,
optionally a caller-supplied hint that is itself verified) and walks upward.
"""

from __future__ import annotations

import heapq
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Callable, Sequence

from .errors import NotATreeError, PowerDomError
from .graph import Graph, bits, component_masks, is_tree, mask_of
from .observe import force_closure

GAMMA_P = "gamma_P"
ZERO_FORCING = "Z"
DOMINATION = "gamma"
SPIDER = "sp"


def _env_budget_ms() -> float | None:
    raw = os.environ.get("POWERDOM_BUDGET_MS")
    if not raw:
        return None
    try:
        return float(raw)
    except ValueError:
        return None


@dataclass
class SearchBudget:
    """Resource limits for exhaustive searches.

    ``max_subsets`` bounds the number of candidate sets tested; a depth whose
    subset count would push past it is not started.  ``time_ms`` is a wall
    clock limit, read from ``POWERDOM_BUDGET_MS`` when not given.
    """

    max_subsets: int = 20_000_000
    time_ms: float | None = field(default_factory=_env_budget_ms)
    workers: int = 1

    def __post_init__(self):
        if self.max_subsets <= 0:
            raise ValueError("max_subsets must be positive")
        if self.time_ms is not None and self.time_ms <= 0:
            raise ValueError("time_ms must be positive")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")


class ConsistencyError(PowerDomError):
    """Two independent computations of the same quantity disagree."""


@dataclass(frozen=True)
class SearchWitness:
    """An extremal value with its witness.

    ``value`` is ``None`` when the search was inconclusive; ``lower`` and
    ``upper`` then bracket the true value (``upper`` may be ``None``).
    ``exhaustive`` means no candidate of size ``value - 1`` satisfies the
    predicate and this was established by the search itself.
    """

    invariant: str
    value: int | None
    witness: tuple
    exhaustive: bool
    elapsed: float
    lower: int
    upper: int | None
    tested: int = 0
    note: str = ""

    @property
    def inconclusive(self) -> bool:
        return self.value is None

    def to_json_obj(self, g: Graph | None = None, timing: bool = True) -> dict:
        obj = {
            "invariant": self.invariant,
            "value": self.value,
            "witness": _jsonable(self.witness),
            "exhaustive": self.exhaustive,
            "lower": self.lower,
            "upper": self.upper,
        }
        if timing:
            obj["elapsed_ms"] = round(self.elapsed * 1000, 3)
        if self.note:
            obj["note"] = self.note
        if g is not None and g.labels is not None:
            obj["witness_labels"] = _jsonable(self.witness, g.name)
        return obj


def _jsonable(w, name=None):
    if isinstance(w, (tuple, list, frozenset)):
        items = sorted(w) if isinstance(w, frozenset) else w
        return [_jsonable(x, name) for x in items]
    return name(w) if name else w


class _Clock:
    def __init__(self, budget: SearchBudget):
        self.t0 = time.perf_counter()
        self.deadline = None if budget.time_ms is None else self.t0 + budget.time_ms / 1000

    def expired(self) -> bool:
        return self.deadline is not None and time.perf_counter() > self.deadline

    def elapsed(self) -> float:
        return time.perf_counter() - self.t0


# -- predicates on precomputed "start" masks --------------------------------
#
# A candidate set S is mapped to a start mask by OR-ing one precomputed row per
# member (N[v] for pd and domination, {v} for zero forcing); the predicate then
# only sees that start mask.


def _rows(g: Graph, invariant: str) -> list[int]:
    if invariant in (GAMMA_P, DOMINATION):
        return [g.closed_mask(v) for v in range(g.n)]
    return [1 << v for v in range(g.n)]


def _accept(g: Graph, invariant: str, start: int) -> bool:
    full = g.full_mask
    if start == full:
        return True
    if invariant == DOMINATION:
        return False
    return force_closure(g, start) == full


def dominance_candidates(g: Graph) -> list[int]:
    """Vertices not dominated in the closed-neighbourhood order.

    ``v`` is dropped when some ``u`` has ``N[v] ⊆ N[u]`` (strictly, or equal
    with ``u < v``).  Swapping such a ``v`` for ``u`` never shrinks ``N[S]``
    and closures are monotone, so an optimal set exists among the survivors.
    """
    closed = [g.closed_mask(v) for v in range(g.n)]
    keep = []
    for v in range(g.n):
        dominated = False
        for u in bits(g.adj[v]):
            if closed[v] & ~closed[u] == 0 and (closed[v] != closed[u] or u < v):
                dominated = True
                break
        if not dominated:
            keep.append(v)
    return keep


def _scan_slice(g: Graph, invariant: str, cand: Sequence[int], k: int, first: int | None,
                comps: Sequence[int], deadline: float | None) -> tuple[int | None, int, bool]:
    """Scan ``k``-subsets of ``cand`` in lex order; optionally fix the first index.

    Returns (first accepted mask or None, subsets tested, timed out).
    """
    rows = _rows(g, invariant)
    prep = [rows[v] for v in cand]
    vbits = [1 << v for v in cand]
    tested = 0
    if first is None:
        combos = combinations(range(len(cand)), k)
        head_row = head_bit = 0
    else:
        combos = combinations(range(first + 1, len(cand)), k - 1)
        head_row, head_bit = prep[first], vbits[first]
    for combo in combos:
        mask = head_bit
        start = head_row
        for i in combo:
            mask |= vbits[i]
            start |= prep[i]
        if comps and any(not mask & c for c in comps):
            continue
        tested += 1
        if _accept(g, invariant, start):
            return mask, tested, False
        if deadline is not None and not tested & 4095 and time.perf_counter() > deadline:
            return None, tested, True
    return None, tested, False


def _scan_depth(g, invariant, cand, k, comps, budget: SearchBudget, clock: _Clock):
    if budget.workers <= 1 or k < 2 or len(cand) < 2 * budget.workers:
        return _scan_slice(g, invariant, cand, k, None, comps, clock.deadline)
    firsts = list(range(len(cand) - k + 1))
    with ProcessPoolExecutor(max_workers=budget.workers) as pool:
        results = list(pool.map(_scan_slice, *zip(*[
            (g, invariant, tuple(cand), k, f, tuple(comps), clock.deadline) for f in firsts
        ])))
    tested = sum(r[1] for r in results)
    timed_out = any(r[2] for r in results)
    hits = [r[0] for r in results if r[0] is not None]
    # slices are ordered by first element, so the first hit is the lex minimum
    return (hits[0] if hits else None), tested, timed_out and not hits


def minimum_set(g: Graph, invariant: str, budget: SearchBudget | None = None, prune: bool = False,
                lower_hint: int | None = None) -> SearchWitness:
    """Smallest set satisfying the ``invariant`` predicate, lexicographically least.

    ``lower_hint`` is a claimed lower bound; it is verified (no set of size
    ``hint - 1`` may succeed) before it is used, and discarded if wrong.
    """
    budget = budget or SearchBudget()
    clock = _Clock(budget)
    if g.n == 0:
        return SearchWitness(invariant, 0, (), True, clock.elapsed(), 0, 0)
    comps = component_masks(g)
    base = len(comps)
    comp_filter = comps if len(comps) > 1 else []
    if prune and invariant in (GAMMA_P, DOMINATION):
        cand = dominance_candidates(g)
    else:
        cand = list(range(g.n))
    tested = 0

    def inconclusive(k, why):
        return SearchWitness(invariant, None, (), False, clock.elapsed(), k, None, tested,
                             f"inconclusive at depth {k}: {why}")

    def depth(k):
        nonlocal tested
        need = comb(len(cand), k)
        if tested + need > budget.max_subsets:
            return "budget", None
        hit, t, timed_out = _scan_depth(g, invariant, cand, k, comp_filter, budget, clock)
        tested += t
        if timed_out:
            return "time", None
        return "ok", hit

    k = base
    if lower_hint is not None and lower_hint > base:
        status, hit = depth(lower_hint - 1)
        if status != "ok":
            return inconclusive(base, f"could not verify hint ({status})")
        if hit is None:
            k = lower_hint
        else:
            # hint was wrong: walk down to the least size that still works
            best, k = hit, lower_hint - 2
            while k >= base:
                status, hit = depth(k)
                if status != "ok":
                    return inconclusive(base, status)
                if hit is None:
                    break
                best, k = hit, k - 1
            value = popcount_of(best)
            return SearchWitness(invariant, value, tuple(bits(best)), True, clock.elapsed(),
                                 value, value, tested, "lower hint rejected")
    while k <= len(cand):
        if clock.expired():
            return inconclusive(k, "time budget")
        status, hit = depth(k)
        if status == "budget":
            return inconclusive(k, f"C({len(cand)},{k}) exceeds subset budget")
        if status == "time":
            return inconclusive(k, "time budget")
        if hit is not None:
            return SearchWitness(invariant, k, tuple(bits(hit)), True, clock.elapsed(), k, k, tested)
        k += 1
    raise ConsistencyError(f"no {invariant} set found among candidates")  # V(G) always qualifies


def popcount_of(mask: int) -> int:
    return bin(mask).count("1")


def power_domination_number(g: Graph, budget: SearchBudget | None = None, prune: bool = False,
                            lower_hint: int | None = None) -> SearchWitness:
    return minimum_set(g, GAMMA_P, budget, prune, lower_hint)


WAVEFRONT_MIN_N = 17


def zero_forcing_number(g: Graph, budget: SearchBudget | None = None,
                        lower_hint: int | None = None, method: str = "auto") -> SearchWitness:
    """Z(G) by subset scan (lex-least witness) or by the closed-set wavefront.

    ``auto`` scans small graphs and switches to the wavefront from
    ``WAVEFRONT_MIN_N`` vertices on, where zero forcing sets get too large
    for subset enumeration.
    """
    if method == "auto":
        method = "wavefront" if g.n >= WAVEFRONT_MIN_N else "scan"
    if method == "scan":
        return minimum_set(g, ZERO_FORCING, budget, False, lower_hint)
    if method == "wavefront":
        return zero_forcing_wavefront(g, budget)
    raise ValueError(f"unknown method {method!r}")


def zero_forcing_wavefront(g: Graph, budget: SearchBudget | None = None) -> SearchWitness:
    """Cheapest path from the empty set to V(G) over closed sets.

    A move picks a vertex ``v``, adds whatever of ``N[v]`` is missing except
    one neighbour, and lets ``v`` force that neighbour; its cost is the
    number of vertices added.  Dijkstra order means the first time V(G) is
    popped its cost is Z(G), and an interrupted search still proves the
    smallest cost left on the heap as a lower bound.  ``max_subsets`` caps
    the number of closed sets stored.
    """
    budget = budget or SearchBudget()
    clock = _Clock(budget)
    full = g.full_mask
    closed = [g.closed_mask(v) for v in range(g.n)]
    start = force_closure(g, 0)
    best = {start: 0}
    parent: dict[int, tuple[int, int]] = {}
    heap = [(0, start)]
    popped = 0
    while heap:
        cost, s = heapq.heappop(heap)
        if best[s] < cost:
            continue
        if s == full:
            witness = _wavefront_witness(g, s, parent)
            if force_closure(g, witness) != full or popcount_of(witness) != cost:
                raise ConsistencyError("wavefront witness does not reproduce its cost")
            return SearchWitness(ZERO_FORCING, cost, tuple(bits(witness)), True, clock.elapsed(),
                                 cost, cost, len(best), "closed-set wavefront")
        popped += 1
        if len(best) > budget.max_subsets or (not popped & 255 and clock.expired()):
            return SearchWitness(ZERO_FORCING, None, (), False, clock.elapsed(), cost, None,
                                 len(best), "inconclusive: wavefront budget")
        for v in range(g.n):
            missing = closed[v] & ~s
            if not missing:
                continue
            step = max(popcount_of(missing) - 1, 1 if not s >> v & 1 else 0)
            t = force_closure(g, s | closed[v])
            if cost + step < best.get(t, g.n + 1):
                best[t] = cost + step
                parent[t] = (s, v)
                heapq.heappush(heap, (cost + step, t))
    raise ConsistencyError("wavefront never reached V(G)")


def _wavefront_witness(g: Graph, s: int, parent) -> int:
    """Replay the moves into the set of vertices that were actually added."""
    chosen = 0
    while s in parent:
        prev, v = parent[s]
        missing = g.closed_mask(v) & ~prev
        if missing & ~(1 << v):
            # the highest missing neighbour is the one v forces
            forced = 1 << (missing & ~(1 << v)).bit_length() - 1
            chosen |= missing & ~forced
        else:
            chosen |= missing
        s = prev
    return chosen


def domination_number(g: Graph, budget: SearchBudget | None = None, prune: bool = False) -> SearchWitness:
    return minimum_set(g, DOMINATION, budget, prune)


def refute_below(g: Graph, invariant: str, k: int, budget: SearchBudget | None = None) -> bool | None:
    """True iff no set of size ``k - 1`` (hence none smaller) satisfies ``invariant``.

    Returns ``None`` when the budget does not allow the scan.
    """
    budget = budget or SearchBudget()
    if k <= 1:
        return True
    comps = component_masks(g)
    if k - 1 < len(comps):
        return True
    if k - 1 >= g.n:
        return False
    if comb(g.n, k - 1) > budget.max_subsets:
        return None
    hit, _, timed_out = _scan_slice(g, invariant, list(range(g.n)), k - 1, None,
                                    comps if len(comps) > 1 else [], _Clock(budget).deadline)
    if timed_out:
        return None
    return hit is None


# -- spider covers -------------------------------------------------------------

SPIDER_ORACLE_MAX_N = 14


def _spider_parts(t: Graph, cut: Sequence[tuple[int, int]]) -> list[int] | None:
    rows = list(t.adj)
    for u, v in cut:
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
    sub = Graph.from_masks(rows)
    parts = component_masks(sub)
    for p in parts:
        branch = 0
        for v in bits(p):
            if popcount_of(rows[v]) >= 3:
                branch += 1
                if branch > 1:
                    return None
    return parts


def spider_partition_search(t: Graph, start: int = 1) -> tuple[int, list[int]] | None:
    """Least number of parts (>= ``start``) in a partition of a tree into spiders.

    Parts of a tree partition into subtrees correspond to deleted edge sets;
    subtrees of spiders are spiders, so the property is monotone in the cut.
    """
    edges = t.edges()
    for c in range(start - 1, t.n):
        for cut in combinations(edges, c):
            parts = _spider_parts(t, cut)
            if parts is not None:
                return c + 1, parts
    return None


def spider_cover_number(t: Graph, budget: SearchBudget | None = None) -> SearchWitness:
    """sp(T) by direct search over spider partitions, cross-checked with gamma_P(T).

    Up to ``SPIDER_ORACLE_MAX_N`` vertices the partition search runs from one
    part upward and is independent of the power domination solver; above it
    the search starts from ``gamma_P(T)`` and verifies one size below.
    """
    if not is_tree(t):
        raise NotATreeError("spider cover number is defined for trees only")
    clock = _Clock(budget or SearchBudget())
    pd = power_domination_number(t, budget)
    if t.n <= SPIDER_ORACLE_MAX_N or pd.value is None:
        if t.n > SPIDER_ORACLE_MAX_N:
            return SearchWitness(SPIDER, None, (), False, clock.elapsed(), pd.lower, None,
                                 note="gamma_P inconclusive and tree too large for direct search")
        found = spider_partition_search(t)
    else:
        if pd.value > 1 and spider_partition_search_exact(t, pd.value - 1):
            raise ConsistencyError("spider partition smaller than gamma_P(T) exists")
        found = spider_partition_search(t, start=pd.value)
    assert found is not None
    value, parts = found
    if pd.value is not None and pd.value != value:
        raise ConsistencyError(f"sp(T) = {value} but gamma_P(T) = {pd.value}")
    witness = tuple(tuple(bits(p)) for p in sorted(parts, key=lambda p: p & -p))
    return SearchWitness(SPIDER, value, witness, True, clock.elapsed(), value, value)


def spider_partition_search_exact(t: Graph, k: int) -> bool:
    """True iff a spider partition with exactly ``k`` parts exists."""
    for cut in combinations(t.edges(), k - 1):
        if _spider_parts(t, cut) is not None:
            return True
    return False


def validate_witness(g: Graph, invariant: str, witness) -> bool:
    """Check a witness against its defining predicate (no optimality claim)."""
    if invariant == SPIDER:
        from .graph import induced_subgraph, is_spider

        seen = 0
        for part in witness:
            m = mask_of(part)
            if not part or m & seen:
                return False
            seen |= m
            if not is_spider(induced_subgraph(g, part)[0]):
                return False
        return seen == g.full_mask
    rows = _rows(g, invariant)
    start = 0
    for v in witness:
        start |= rows[v]
    return _accept(g, invariant, start)


__all__ = [
    "SearchBudget",
    "SearchWitness",
    "ConsistencyError",
    "GAMMA_P",
    "ZERO_FORCING",
    "DOMINATION",
    "SPIDER",
    "minimum_set",
    "power_domination_number",
    "zero_forcing_number",
    "domination_number",
    "spider_cover_number",
    "spider_partition_search",
    "refute_below",
    "dominance_candidates",
    "validate_witness",
]
