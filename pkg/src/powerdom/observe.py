"""The observation process: domination step, propagation closure, per-vertex
rounds.

Two implementations of the propagation closure live here.  :func:`propagate`
runs simultaneous rounds and records, for every vertex, the round in which it
was first observed.  :func:`force_closure` is a worklist kernel that only
returns the final observed mask; the exhaustive searches call it millions of
times.  The final set does not depend on the order in which forces are
applied, and the test suite checks that the two agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, bits, mask_of


@dataclass(frozen=True)
class ObservationState:
    n: int
    observed: int
    rounds: tuple[int | None, ...]

    def __post_init__(self):
        if len(self.rounds) != self.n:
            raise ValueError("one round entry per vertex")
        for v, r in enumerate(self.rounds):
            if (r is not None) != bool(self.observed >> v & 1):
                raise ValueError(f"round must be defined exactly on observed vertices (vertex {v})")

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(bits(self.observed))

    @property
    def unobserved(self) -> int:
        return ((1 << self.n) - 1) & ~self.observed

    @property
    def complete(self) -> bool:
        return self.observed == (1 << self.n) - 1

    def is_observed(self, v: int) -> bool:
        return bool(self.observed >> v & 1)

    @property
    def last_round(self) -> int:
        return max((r for r in self.rounds if r is not None), default=-1)

    def to_json_obj(self) -> dict:
        return {
            "observed": sorted(self.vertices),
            "rounds": {str(v): r for v, r in enumerate(self.rounds) if r is not None},
        }


def _start_state(g: Graph, mask: int) -> ObservationState:
    return ObservationState(g.n, mask, tuple(0 if mask >> v & 1 else None for v in range(g.n)))


def domination_step(g: Graph, s: Iterable[int]) -> ObservationState:
    """Observe ``N[S]``; all of it at round 0."""
    return _start_state(g, g.closed_neighborhood(g.check_vertices(s)))


def propagate(g: Graph, state: ObservationState) -> ObservationState:
    """Apply the propagation rule in simultaneous rounds until nothing changes.

    In round ``t`` every vertex that is the only unobserved neighbour of a
    vertex observed by the end of round ``t - 1`` becomes observed.
    """
    if state.n != g.n:
        raise ValueError("state and graph sizes differ")
    obs = state.observed
    rounds = list(state.rounds)
    t = max(state.last_round, 0)
    while True:
        forced = 0
        for v in bits(obs):
            un = g.adj[v] & ~obs
            if un and not un & (un - 1):
                forced |= un
        if not forced:
            break
        t += 1
        for w in bits(forced):
            rounds[w] = t
        obs |= forced
    return ObservationState(g.n, obs, tuple(rounds))


def power_dominate(g: Graph, s: Iterable[int]) -> ObservationState:
    return propagate(g, domination_step(g, s))


def zero_force(g: Graph, s: Iterable[int]) -> ObservationState:
    return propagate(g, _start_state(g, g.check_vertices(s)))


def is_power_dominating_set(g: Graph, s: Iterable[int]) -> bool:
    if g.n == 0:
        return True
    return power_dominate(g, s).complete


def is_zero_forcing_set(g: Graph, s: Iterable[int]) -> bool:
    if g.n == 0:
        return True
    return zero_force(g, s).complete


def is_dominating_set(g: Graph, s: Iterable[int]) -> bool:
    return g.closed_neighborhood(g.check_vertices(s)) == g.full_mask


# -- mask kernels ------------------------------------------------------------


def force_closure(g: Graph, obs: int) -> int:
    """Propagation-only closure of the observed mask ``obs`` (worklist order)."""
    adj = g.adj
    nbrs = g._nbrs
    stack = list(bits(obs))
    while stack:
        v = stack.pop()
        un = adj[v] & ~obs
        if un and not un & (un - 1):
            obs |= un
            w = un.bit_length() - 1
            stack.append(w)
            for u in nbrs[w]:
                if obs >> u & 1 and u != v:
                    stack.append(u)
    return obs


def pd_closure(g: Graph, s_mask: int) -> int:
    """Mask of vertices power dominated by the set ``s_mask``."""
    return force_closure(g, g.closed_neighborhood(s_mask))


def sequential_closure(g: Graph, obs: int, order_key=None) -> int:
    """One force at a time; ``order_key`` picks which available force fires next.

    Reference implementation used to check order independence.
    """
    while True:
        moves = []
        for v in bits(obs):
            un = g.adj[v] & ~obs
            if un and not un & (un - 1):
                moves.append(un)
        if not moves:
            return obs
        obs |= min(moves, key=order_key) if order_key else moves[0]


PD = "pd"
ZF = "zf"


def closure_for(mode: str):
    """Return ``f(graph, start_mask) -> observed_mask`` for ``mode`` in {pd, zf}."""
    if mode == PD:
        return pd_closure
    if mode == ZF:
        return force_closure
    raise ValueError(f"unknown mode {mode!r}; expected 'pd' or 'zf'")


def observe(g: Graph, s: Iterable[int], mode: str) -> ObservationState:
    if mode == PD:
        return power_dominate(g, s)
    if mode == ZF:
        return zero_force(g, s)
    raise ValueError(f"unknown mode {mode!r}; expected 'pd' or 'zf'")


__all__ = [
    "ObservationState",
    "domination_step",
    "propagate",
    "power_dominate",
    "zero_force",
    "is_power_dominating_set",
    "is_zero_forcing_set",
    "is_dominating_set",
    "force_closure",
    "pd_closure",
    "sequential_closure",
    "closure_for",
    "observe",
    "mask_of",
]
