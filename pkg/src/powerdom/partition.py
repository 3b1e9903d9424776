"""Failed power dominating / zero forcing partitions and the numbers ℓ_G, z_G.

A set ``B`` is *blocking* (for a mode) when ``V - B`` fails to observe the
whole graph.  A failed partition is a partition into blocking parts, so the
largest failed partition has as many parts as the largest family of pairwise
disjoint blocking sets: leftover vertices can be merged into any part,
because enlarging a blocking set keeps it blocking.

Minimal blocking sets are enumerated through forts.  A fort is a nonempty
set ``F`` such that no vertex outside ``F`` has exactly one neighbour in
``F``; propagation can never enter a fort from outside.  ``V - B`` fails to
zero force iff ``B`` contains a fort, and fails to power dominate iff ``B``
contains ``N[F]`` for some fort ``F``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import CapExceeded, PartitionError
from .graph import Graph, ProductLabeling, bits, cartesian_product, mask_of, popcount
from .observe import PD, ZF, ObservationState, closure_for, observe
from .solve import (
    GAMMA_P,
    ZERO_FORCING,
    SearchBudget,
    SearchWitness,
    power_domination_number,
    zero_forcing_number,
)

FULL_ENUMERATION_CAP = 18


@dataclass(frozen=True)
class VertexPartition:
    """Disjoint nonempty vertex sets covering ``0..n-1``, in the given order."""

    n: int
    parts: tuple[frozenset[int], ...]

    def __post_init__(self):
        seen: dict[int, int] = {}
        for i, part in enumerate(self.parts):
            if not part:
                raise PartitionError(f"part {i} is empty", (i,))
            for v in part:
                if not 0 <= v < self.n:
                    raise PartitionError(f"part {i} contains out-of-range vertex {v}", (i,))
                if v in seen:
                    raise PartitionError(f"vertex {v} lies in parts {seen[v]} and {i}", (seen[v], i))
                seen[v] = i
        missing = [v for v in range(self.n) if v not in seen]
        if missing:
            raise PartitionError(f"vertices {missing} are in no part")

    @classmethod
    def of(cls, n: int, parts: Iterable[Iterable[int]]) -> "VertexPartition":
        return cls(n, tuple(frozenset(p) for p in parts))

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "VertexPartition":
        return cls(n, tuple(frozenset(bits(m)) for m in masks))

    @property
    def k(self) -> int:
        return len(self.parts)

    def masks(self) -> list[int]:
        return [mask_of(p) for p in self.parts]

    def canonical(self) -> "VertexPartition":
        return VertexPartition(self.n, tuple(sorted(self.parts, key=min)))

    def part_of(self, v: int) -> int:
        for i, p in enumerate(self.parts):
            if v in p:
                return i
        raise KeyError(v)

    def to_json_obj(self) -> dict:
        return {"parts": [sorted(p) for p in self.parts]}


@dataclass(frozen=True)
class FailedPartitionCertificate:
    """A failed partition with, per part, the vertices of that part never
    observed from its complement (``witnesses``) and the full unobserved set."""

    graph: Graph
    partition: VertexPartition
    mode: str
    witnesses: tuple[frozenset[int], ...]
    unobserved: tuple[frozenset[int], ...]

    failed = True

    def revalidate(self) -> bool:
        fresh = is_failed_partition(self.graph, self.partition, self.mode)
        return (
            isinstance(fresh, FailedPartitionCertificate)
            and fresh.witnesses == self.witnesses
            and fresh.unobserved == self.unobserved
        )

    def to_json_obj(self) -> dict:
        obj = self.partition.to_json_obj()
        obj["witnesses"] = [sorted(w) for w in self.witnesses]
        obj["mode"] = self.mode
        return obj


@dataclass(frozen=True)
class PartitionRefutation:
    """Part ``index`` is not blocking: its complement observes everything."""

    partition: VertexPartition
    mode: str
    index: int
    trace: ObservationState

    failed = False


def _as_partition(g: Graph, parts) -> VertexPartition:
    if isinstance(parts, VertexPartition):
        if parts.n != g.n:
            raise PartitionError("partition and graph sizes differ")
        return parts
    return VertexPartition.of(g.n, parts)


def is_failed_partition(g: Graph, parts, mode: str = PD):
    """Certificate if every part's complement fails to observe ``G``; else a refutation."""
    part = _as_partition(g, parts)
    if part.k < 2:
        raise PartitionError("a failed partition needs at least two parts")
    witnesses, unobserved = [], []
    for i, p in enumerate(part.parts):
        comp = [v for v in range(g.n) if v not in p]
        state = observe(g, comp, mode)
        missing = frozenset(bits(state.unobserved))
        if not missing:
            return PartitionRefutation(part, mode, i, state)
        witnesses.append(missing & p)
        unobserved.append(missing)
    return FailedPartitionCertificate(g, part, mode, tuple(witnesses), tuple(unobserved))


def is_failed_pd_partition(g: Graph, parts):
    return is_failed_partition(g, parts, PD)


def is_failed_zf_partition(g: Graph, parts):
    return is_failed_partition(g, parts, ZF)


def is_blocking(g: Graph, b_mask: int, mode: str = PD) -> bool:
    full = g.full_mask
    return closure_for(mode)(g, full & ~b_mask) != full


# -- minimal blocking sets -----------------------------------------------------


class _Budget:
    def __init__(self, max_nodes: int | None, time_ms: float | None):
        self.nodes = 0
        self.max_nodes = max_nodes
        self.deadline = None if time_ms is None else time.perf_counter() + time_ms / 1000
        self.exhausted = False

    def tick(self) -> bool:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            self.exhausted = True
        elif self.deadline is not None and not self.nodes & 1023 and time.perf_counter() > self.deadline:
            self.exhausted = True
        return self.exhausted


def _fort_hulls(g: Graph, mode: str, max_size: int, budget: _Budget) -> list[int]:
    """Blocking sets ``hull(F)`` over forts ``F`` with ``|hull(F)| <= max_size``.

    ``hull`` is ``N[.]`` for pd and the identity for zf.  Every minimal
    blocking set of size ``<= max_size`` is in the result; non-minimal ones may
    be too.  Forts are grown from a seed (their least vertex) by repairing a
    vertex with exactly one neighbour inside: either it joins, or one of its
    other neighbours does.  Branch ``i`` forbids options ``< i`` so no fort is
    produced twice from the same seed.
    """
    adj = g.adj
    found: list[int] = []

    if mode == PD:
        def hull(f):
            return g.closed_neighborhood(f)
    else:
        def hull(f):
            return f

    def covered(h):
        for b in found:
            if h & b == b:
                return True
        return False

    def grow(f: int, h: int, forbidden: int, outside: int):
        if budget.tick():
            return
        # outside = vertices adjacent to f but not in f
        violator = -1
        for u in bits(outside):
            inside = adj[u] & f
            if not inside & (inside - 1):
                violator = u
                break
        if violator < 0:
            found.append(h)
            return
        u = violator
        options = [u] + [w for w in bits(adj[u] & ~f)]
        blocked = forbidden
        for w in options:
            if blocked >> w & 1:
                continue
            nf = f | (1 << w)
            nh = h | hull(1 << w)
            if popcount(nh) <= max_size and not covered(nh):
                grow(nf, nh, blocked, (outside | adj[w]) & ~nf)
            blocked |= 1 << w
            if budget.exhausted:
                return

    for seed in range(g.n):
        f = 1 << seed
        h = hull(f)
        if popcount(h) > max_size or covered(h):
            continue
        grow(f, h, f - 1, adj[seed])
        if budget.exhausted:
            break
    return found


def _minimalize(masks: Iterable[int]) -> list[int]:
    uniq = sorted(set(masks), key=lambda m: (popcount(m), m))
    out: list[int] = []
    for m in uniq:
        if not any(m & b == b for b in out):
            out.append(m)
    return out


def minimal_blocking_masks(g: Graph, mode: str = PD, max_size: int | None = None,
                           cap: int = FULL_ENUMERATION_CAP, max_nodes: int | None = None,
                           time_ms: float | None = None) -> tuple[list[int], bool]:
    """All inclusion-minimal blocking sets of size ``<= max_size`` as masks.

    Returns ``(masks, complete)``; ``complete`` is False when the node or time
    budget cut the enumeration short.  Full enumeration (``max_size=None``)
    refuses graphs above ``cap`` vertices.
    """
    closure_for(mode)
    if max_size is None:
        if g.n > cap:
            raise CapExceeded(f"full blocking-set enumeration capped at n={cap}", required=g.n)
        max_size = g.n
    budget = _Budget(max_nodes, time_ms)
    masks = _minimalize(_fort_hulls(g, mode, max_size, budget))
    full = g.full_mask
    close = closure_for(mode)
    for b in masks:
        # certify: B blocks, and removing any single vertex makes it non-blocking
        if close(g, full & ~b) == full:
            raise AssertionError(f"fort hull {sorted(bits(b))} is not blocking")
        for v in bits(b):
            if close(g, full & ~(b & ~(1 << v))) != full:
                raise AssertionError(f"blocking set {sorted(bits(b))} is not minimal")
    return masks, not budget.exhausted


def minimal_blocking_sets(g: Graph, mode: str = PD, max_size: int | None = None,
                          cap: int = FULL_ENUMERATION_CAP) -> list[frozenset[int]]:
    masks, _ = minimal_blocking_masks(g, mode, max_size, cap)
    return [frozenset(bits(m)) for m in masks]


def brute_force_minimal_blocking(g: Graph, mode: str = PD) -> list[int]:
    """Reference: test every subset.  Exponential; for small graphs only."""
    full = g.full_mask
    close = closure_for(mode)
    blocking = [b for b in range(1, full + 1) if close(g, full & ~b) != full]
    return _minimalize(blocking)


# -- packing -------------------------------------------------------------------


def max_disjoint_packing(sets: Sequence[int], target: int | None = None,
                         max_nodes: int | None = None) -> tuple[list[int], bool]:
    """Largest family of pairwise disjoint masks from ``sets``.

    Branches on the least vertex still covered by some usable set: either one
    of the sets through it is taken, or the vertex is discarded.  Stops early
    once ``target`` sets are packed.  Returns ``(best, complete)``.
    """
    sets = sorted(set(sets), key=lambda m: (popcount(m), m))
    best: list[int] = []
    nodes = 0
    aborted = False

    def rec(avail: int, chosen: list[int]):
        nonlocal best, nodes, aborted
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            aborted = True
            return
        usable = [s for s in sets if s & avail == s]
        if len(chosen) > len(best):
            best = list(chosen)
        if not usable or (target is not None and len(best) >= target):
            return
        span = 0
        for s in usable:
            span |= s
        if len(chosen) + popcount(span) // popcount(usable[0]) <= len(best):
            return
        low = span & -span
        for s in usable:
            if s & low:
                chosen.append(s)
                rec(avail & ~s, chosen)
                chosen.pop()
                if aborted or (target is not None and len(best) >= target):
                    return
        rec(avail & ~low, chosen)

    full = 0
    for s in sets:
        full |= s
    rec(full, [])
    return best, not aborted


def _packing_partition(n: int, packing: Sequence[int]) -> VertexPartition:
    parts = sorted(packing, key=lambda m: m & -m)
    leftover = ((1 << n) - 1)
    for m in parts:
        leftover &= ~m
    parts[0] |= leftover
    return VertexPartition.from_masks(n, parts).canonical()


def compute_ell(g: Graph, mode: str = PD, cap: int = FULL_ENUMERATION_CAP,
                budget: SearchBudget | None = None, max_nodes: int = 2_000_000) -> SearchWitness:
    """ℓ_G (mode ``pd``) or z_G (mode ``zf``) with an optimal failed partition.

    Up to ``cap`` vertices all minimal blocking sets are enumerated and packed
    exactly.  Above it, blocking sets are enumerated by increasing size bound
    until the packing reaches the upper bound γ_P(G) (resp. Z(G)); if the
    budget runs out first the result is the interval ``[lower, upper]``.
    """
    budget = budget or SearchBudget()
    t0 = time.perf_counter()
    name = "ell" if mode == PD else "z_ell"
    closure_for(mode)
    if g.n == 0:
        return SearchWitness(name, 1, (), True, 0.0, 1, 1)

    def result(packing, exact, upper, exhaustive, note=""):
        p = len(packing)
        if p >= 2:
            part = _packing_partition(g.n, packing)
            witness = tuple(tuple(sorted(x)) for x in part.parts)
        else:
            p = 1
            witness = (tuple(range(g.n)),)
        value = p if exact else None
        return SearchWitness(name, value, witness, exhaustive, time.perf_counter() - t0,
                             p, p if exact else upper, note=note)

    solver = power_domination_number if mode == PD else zero_forcing_number
    up = solver(g, budget)
    # any witness is an upper bound, even when optimality was not reached
    upper = up.value if up.value is not None else None

    if g.n <= cap:
        masks, complete = minimal_blocking_masks(g, mode, cap=cap, max_nodes=max_nodes,
                                                 time_ms=budget.time_ms)
        packing, packed = max_disjoint_packing(masks, target=upper)
        if complete and packed:
            return result(packing, True, upper, True)
        if upper is not None and len(packing) == upper:
            return result(packing, True, upper, False, "packing meets upper bound")
        return result(packing, False, upper, False, "enumeration budget exhausted")

    packing: list[int] = []
    for size in range(1, g.n + 1):
        masks, complete = minimal_blocking_masks(g, mode, max_size=size, max_nodes=max_nodes,
                                                 time_ms=budget.time_ms)
        packing, packed = max_disjoint_packing(masks, target=upper)
        if upper is not None and len(packing) >= upper:
            return result(packing, True, upper, False, f"packing of blocking sets of size <= {size} meets upper bound")
        if not complete or not packed:
            return result(packing, False, upper, False, f"budget exhausted at size bound {size}")
    return result(packing, True, upper, True)


def ell_by_partitions(g: Graph, mode: str = PD, max_n: int = 10) -> tuple[int, VertexPartition | None]:
    """Reference ℓ_G / z_G: try every set partition (Bell(n) of them)."""
    if g.n > max_n:
        raise CapExceeded(f"partition enumeration capped at n={max_n}", required=g.n)
    full = g.full_mask
    close = closure_for(mode)
    blocking = {b for b in range(1, full + 1) if close(g, full & ~b) != full}
    best_k, best = 1, None

    def rec(v: int, parts: list[int]):
        nonlocal best_k, best
        if v == g.n:
            if len(parts) >= 2 and len(parts) > best_k and all(p in blocking for p in parts):
                best_k, best = len(parts), VertexPartition.from_masks(g.n, parts)
            return
        bit = 1 << v
        for i in range(len(parts)):
            parts[i] |= bit
            rec(v + 1, parts)
            parts[i] &= ~bit
        parts.append(bit)
        rec(v + 1, parts)
        parts.pop()

    rec(0, [])
    return best_k, best


# -- neighbourhood certificates ---------------------------------------------------


def check_obs5(g: Graph, parts, u_sets: Sequence[Iterable[int]]) -> bool:
    """Partition with sets ``U_i ⊆ Π_i`` such that ``N[U_i] ⊆ Π_i`` and every
    other vertex of ``Π_i`` with a neighbour in ``U_i`` has at least two.

    When this holds, every ``U_i`` is a fort whose closed neighbourhood lies
    inside ``Π_i``, so the partition is a failed power dominating partition.
    """
    part = _as_partition(g, parts)
    if part.k < 2:
        raise PartitionError("need at least two parts")
    if len(u_sets) != part.k:
        raise PartitionError(f"{len(u_sets)} U-sets for {part.k} parts")
    for i, (p, u) in enumerate(zip(part.parts, u_sets)):
        u = frozenset(u)
        if not u:
            raise PartitionError(f"U_{i} is empty", (i,))
        if not u <= p:
            raise PartitionError(f"U_{i} is not contained in part {i}", (i,))
    for p, u in zip(part.parts, u_sets):
        pm, um = mask_of(p), mask_of(u)
        if g.closed_neighborhood(um) & ~pm:
            return False
        for x in bits(pm & ~um):
            hits = popcount(g.adj[x] & um)
            if hits == 1:
                return False
    return True


# -- products --------------------------------------------------------------------


@dataclass(frozen=True)
class ProductPartition:
    graph: Graph
    labeling: ProductLabeling
    partition: VertexPartition
    certificate: FailedPartitionCertificate


def product_failed_partition(g: Graph, pi, h: Graph, sigma, mode: str = PD,
                             cap: int | None = None) -> ProductPartition:
    """The partition ``{Π_i × Σ_j}`` of ``G □ H`` with its verified certificate.

    Both inputs are certified first.  The product certificate must exist and
    each of its witnesses must contain ``U_i × V_j``.
    """
    cg = is_failed_partition(g, pi, mode)
    if not cg.failed:
        raise PartitionError(f"first factor partition is not failed (part {cg.index} observes all)", (cg.index,))
    ch = is_failed_partition(h, sigma, mode)
    if not ch.failed:
        raise PartitionError(f"second factor partition is not failed (part {ch.index} observes all)", (ch.index,))
    kwargs = {} if cap is None else {"cap": cap}
    prod, lab = cartesian_product(g, h, **kwargs)
    parts, cores = [], []
    for pi_i, u_i in zip(cg.partition.parts, cg.witnesses):
        for sg_j, v_j in zip(ch.partition.parts, ch.witnesses):
            parts.append(lab.product_mask(mask_of(pi_i), mask_of(sg_j)))
            cores.append(lab.product_mask(mask_of(u_i), mask_of(v_j)))
    partition = VertexPartition.from_masks(prod.n, parts)
    cert = is_failed_partition(prod, partition, mode)
    if not cert.failed:
        raise AssertionError(f"product partition part {cert.index} is observed from its complement")
    for core, w in zip(cores, cert.witnesses):
        if core & ~mask_of(w):
            raise AssertionError("product witness does not contain U_i x V_j")
    return ProductPartition(prod, lab, partition, cert)


__all__ = [
    "VertexPartition",
    "FailedPartitionCertificate",
    "PartitionRefutation",
    "ProductPartition",
    "is_failed_partition",
    "is_failed_pd_partition",
    "is_failed_zf_partition",
    "is_blocking",
    "minimal_blocking_sets",
    "minimal_blocking_masks",
    "brute_force_minimal_blocking",
    "max_disjoint_packing",
    "compute_ell",
    "ell_by_partitions",
    "check_obs5",
    "product_failed_partition",
    "FULL_ENUMERATION_CAP",
]
