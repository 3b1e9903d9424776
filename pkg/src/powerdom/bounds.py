"""Evaluate the cut-set, degree and product bounds on concrete graphs.

Every function returns a :class:`BoundReport`: the bound values, the exact
quantity where it could be computed, and one ``holds`` flag per inequality.
A bound that could not be computed within budget is reported as ``None`` and
inequalities involving it are left out of ``holds``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil
from typing import Iterable, Sequence

from .errors import PowerDomError
from .graph import Graph, bits, cartesian_product, component_masks, induced_subgraph, is_connected, is_tree, mask_of
from .observe import is_power_dominating_set
from .partition import PD, ZF, compute_ell, product_failed_partition
from .solve import (
    GAMMA_P,
    ZERO_FORCING,
    SearchBudget,
    power_domination_number,
    refute_below,
    zero_forcing_number,
)


class CutSetError(PowerDomError, ValueError):
    pass


@dataclass(frozen=True)
class BoundEntry:
    name: str
    theorem: str
    value: int | None


@dataclass
class BoundReport:
    title: str
    bounds: list[BoundEntry] = field(default_factory=list)
    exact: dict[str, int] | None = None
    holds: dict[str, bool] = field(default_factory=dict)
    slack: dict[str, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.holds.values())

    def value(self, name: str) -> int | None:
        for b in self.bounds:
            if b.name == name:
                return b.value
        raise KeyError(name)

    def add(self, name: str, theorem: str, value: int | None) -> int | None:
        self.bounds.append(BoundEntry(name, theorem, value))
        return value

    def check(self, label: str, lhs: int | None, rhs: int | None) -> None:
        """Record ``lhs <= rhs`` unless either side is unknown."""
        if lhs is not None and rhs is not None:
            self.holds[label] = lhs <= rhs
            self.slack[label] = rhs - lhs

    def to_json_obj(self) -> dict:
        obj = {
            "title": self.title,
            "bounds": [{"name": b.name, "theorem": b.theorem, "value": b.value} for b in self.bounds],
            "exact": self.exact,
            "holds": self.holds,
            "slack": self.slack,
        }
        if self.notes:
            obj["notes"] = self.notes
        obj.update(self.extra)
        return obj


def _gp(g: Graph, budget, hint=None):
    return power_domination_number(g, budget, lower_hint=hint)


def cut_components(g: Graph, cut: Iterable[int], groups: Sequence[Sequence[int]] | None = None) -> list[int]:
    """Components of ``G - C`` as masks, optionally merged into blocks.

    ``groups`` lists component indices per block; every component must be used
    exactly once.  Raises :class:`CutSetError` unless at least two blocks result.
    """
    c_mask = g.check_vertices(cut)
    if not c_mask:
        raise CutSetError("cut-set must be nonempty")
    comps = component_masks(g, within=g.full_mask & ~c_mask)
    if len(comps) < 2:
        raise CutSetError(f"removing {sorted(bits(c_mask))} leaves {len(comps)} component(s); not a cut-set")
    if groups is None:
        return comps
    used = sorted(i for grp in groups for i in grp)
    if used != list(range(len(comps))):
        raise CutSetError(f"groups must use each of the {len(comps)} component indices exactly once")
    blocks = []
    for grp in groups:
        m = 0
        for i in grp:
            m |= comps[i]
        blocks.append(m)
    if len(blocks) < 2:
        raise CutSetError("grouping leaves fewer than two blocks")
    return blocks


def cutset_bounds(g: Graph, cut: Iterable[int], groups: Sequence[Sequence[int]] | None = None,
                  budget: SearchBudget | None = None, exact: bool = True) -> BoundReport:
    """Lower and upper cut-set bounds on γ_P(G) from the pieces of ``G - C``."""
    cut = sorted(set(cut))
    blocks = cut_components(g, cut, groups)
    c_mask = mask_of(cut)
    m, s = len(blocks), len(cut)
    rep = BoundReport("cut-set sandwich")
    rep.extra["cut"] = cut
    rep.extra["components"] = [sorted(bits(b)) for b in blocks]

    gp_h, gp_k, construction = [], [], set(cut)
    for b in blocks:
        h, hmap = induced_subgraph(g, bits(b))
        k, _ = induced_subgraph(g, bits(b | c_mask))
        wh = _gp(h, budget)
        wk = _gp(k, budget)
        gp_h.append(wh.value)
        gp_k.append(wk.value)
        if wh.value is not None:
            construction.update(hmap[v] for v in wh.witness)
    lower = upper = None
    if None not in gp_k:
        lower = sum(gp_k) - (m - 1) * s
    if None not in gp_h:
        upper = sum(gp_h) + s
        pds = is_power_dominating_set(g, construction)
        rep.holds["upper construction is a power dominating set"] = pds
        rep.extra["upper_construction"] = sorted(construction)
    rep.extra["gamma_P_H"] = gp_h
    rep.extra["gamma_P_K"] = gp_k
    rep.add("lower", "cut-set lower bound: sum gamma_P(K_i) - (m-1)|C|", lower)
    rep.add("upper", "cut-set upper bound: sum gamma_P(H_i) + |C|", upper)
    rep.check("lower <= upper", lower, upper)
    if exact:
        w = _gp(g, budget, hint=lower if lower and lower > 1 else None)
        if w.value is None:
            rep.notes.append("exact: unknown (budget)")
        else:
            rep.exact = {"gamma_P": w.value}
            rep.check("lower <= gamma_P", lower, w.value)
            rep.check("gamma_P <= upper", w.value, upper)
    return rep


def generalized_upper(g: Graph, cut: Iterable[int], cut_parts: Sequence[Iterable[int]],
                      budget: SearchBudget | None = None, exact: bool = True) -> BoundReport:
    """Upper bound ``sum gamma_P(G[V(H_i) ∪ C_i]) + |C|`` for chosen ``C_i ⊆ C``.

    The union of ``C`` and a minimum power dominating set of each piece is
    checked to power dominate ``G`` before the bound is reported.
    """
    cut = sorted(set(cut))
    blocks = cut_components(g, cut)
    c_mask = mask_of(cut)
    cut_parts = [sorted(set(p)) for p in cut_parts]
    if len(cut_parts) != len(blocks):
        raise CutSetError(f"need one C_i per component ({len(blocks)}), got {len(cut_parts)}")
    for i, p in enumerate(cut_parts):
        if mask_of(p) & ~c_mask:
            raise CutSetError(f"C_{i} is not a subset of the cut-set")
    rep = BoundReport("generalized cut-set upper bound")
    rep.extra["cut"] = cut
    rep.extra["cut_parts"] = cut_parts
    s = len(cut)
    pieces, construction = [], set(cut)
    gp_h = []
    for b, ci in zip(blocks, cut_parts):
        sub, smap = induced_subgraph(g, list(bits(b)) + ci)
        w = _gp(sub, budget)
        pieces.append(w.value)
        if w.value is not None:
            construction.update(smap[v] for v in w.witness)
        gp_h.append(_gp(induced_subgraph(g, bits(b))[0], budget).value)
    value = None if None in pieces else sum(pieces) + s
    thm8 = None if None in gp_h else sum(gp_h) + s
    rep.extra["gamma_P_L"] = pieces
    rep.add("generalized_upper", "generalized cut-set upper bound: sum gamma_P(L_i) + |C|", value)
    rep.add("cutset_upper", "cut-set upper bound: sum gamma_P(H_i) + |C|", thm8)
    if value is not None:
        rep.holds["construction is a power dominating set"] = is_power_dominating_set(g, construction)
        rep.extra["construction"] = sorted(construction)
    if exact:
        w = _gp(g, budget)
        if w.value is None:
            rep.notes.append("exact: unknown (budget)")
        else:
            rep.exact = {"gamma_P": w.value}
            rep.check("gamma_P <= generalized_upper", w.value, value)
            rep.check("gamma_P <= cutset_upper", w.value, thm8)
    return rep


def check_theorem1(g: Graph, budget: SearchBudget | None = None) -> BoundReport:
    """``ceil(Z(G) / Δ(G)) <= γ_P(G)`` for graphs with an edge."""
    if g.num_edges == 0:
        raise ValueError("bound needs a graph with at least one edge")
    rep = BoundReport("zero forcing over max degree")
    z = zero_forcing_number(g, budget).value
    delta = g.max_degree
    gp = _gp(g, budget).value
    bound = None if z is None else ceil(z / delta)
    rep.add("Z", "zero forcing number", z)
    rep.add("max_degree", "maximum degree", delta)
    rep.add("ceil(Z/Delta)", "zero forcing degree bound", bound)
    if gp is not None:
        rep.exact = {"gamma_P": gp}
    rep.check("ceil(Z/Delta) <= gamma_P", bound, gp)
    if bound is not None and gp is not None and bound == gp:
        rep.notes.append("tight")
    return rep


def check_product_bounds(g: Graph, h: Graph, budget: SearchBudget | None = None,
                         cap: int | None = None) -> BoundReport:
    """Factor bound, failed-partition product bound and (for trees) the
    Vizing-like bound on γ_P(G □ H)."""
    rep = BoundReport("product bounds")
    gp_g = rep.add("gamma_P(G)", "factor", _gp(g, budget).value)
    gp_h = rep.add("gamma_P(H)", "factor", _gp(h, budget).value)
    el_g = compute_ell(g, PD, budget=budget)
    el_h = compute_ell(h, PD, budget=budget)
    lg = rep.add("ell_G", "failed partition number", el_g.value)
    lh = rep.add("ell_H", "failed partition number", el_h.value)
    prod, _ = cartesian_product(g, h, **({} if cap is None else {"cap": cap}))
    ll = None
    if el_g.lower is not None and el_h.lower is not None:
        # lower ends of the intervals already give a valid product bound
        ll = el_g.lower * el_h.lower
    rep.add("ell_G*ell_H", "failed partition product bound", ll)
    both_connected = is_connected(g) and is_connected(h)
    factor_bound = max(gp_g, gp_h) if both_connected and None not in (gp_g, gp_h) else None
    trees = is_tree(g) and is_tree(h)
    viz = gp_g * gp_h if trees and None not in (gp_g, gp_h) else None
    rep.add("max factor", "factor lower bound (connected factors)", factor_bound)
    rep.add("gamma_P(T1)*gamma_P(T2)", "tree Vizing-like bound", viz)
    hint = max(x for x in (ll, factor_bound, viz, 1) if x is not None)
    w = _gp(prod, budget, hint=hint if hint > 1 else None)
    gp_prod = rep.add("gamma_P(GxH)", "exact", w.value)
    if w.value is not None:
        rep.exact = {"gamma_P": w.value}
    rep.check("ell_G*ell_H <= gamma_P(GxH)", ll, gp_prod)
    rep.check("max(gamma_P(G),gamma_P(H)) <= gamma_P(GxH)", factor_bound, gp_prod)
    rep.check("gamma_P(T1)*gamma_P(T2) <= gamma_P(GxH)", viz, gp_prod)
    if gp_prod is None and ll is not None:
        # fall back to a direct refutation of the product bound
        ok = refute_below(prod, GAMMA_P, max(ll, viz or 0), budget)
        if ok is not None:
            rep.holds["no power dominating set below the product bound"] = ok
    if None not in (lg, gp_g) and lg < gp_g or None not in (lh, gp_h) and lh < gp_h:
        rep.notes.append("ell < gamma_P for a factor: the failed-partition bound is not the Vizing-like bound here")
    if not both_connected:
        rep.notes.append("factor lower bound skipped: a factor is disconnected")
    return rep


def check_theorem6(g: Graph, h: Graph, budget: SearchBudget | None = None,
                   cap: int | None = None) -> BoundReport:
    """``ell_G ell_H <= z_G z_H <= Z(G □ H)``, with the zero-forcing product
    partition verified when both failed zero forcing numbers are at least 2."""
    rep = BoundReport("zero forcing product bounds")
    el_g, el_h = compute_ell(g, PD, budget=budget), compute_ell(h, PD, budget=budget)
    zl_g, zl_h = compute_ell(g, ZF, budget=budget), compute_ell(h, ZF, budget=budget)
    for name, w in (("ell_G", el_g), ("ell_H", el_h), ("z_G", zl_g), ("z_H", zl_h)):
        rep.add(name, "failed partition number", w.value)
    ll = el_g.value * el_h.value if None not in (el_g.value, el_h.value) else None
    zz = zl_g.value * zl_h.value if None not in (zl_g.value, zl_h.value) else None
    rep.add("ell_G*ell_H", "product", ll)
    rep.add("z_G*z_H", "product", zz)
    prod, _ = cartesian_product(g, h, **({} if cap is None else {"cap": cap}))
    w = zero_forcing_number(prod, budget, lower_hint=zz if zz and zz > 1 else None)
    rep.add("Z(GxH)", "exact", w.value)
    if w.value is not None:
        rep.exact = {"Z": w.value}
    rep.check("ell_G*ell_H <= z_G*z_H", ll, zz)
    rep.check("z_G*z_H <= Z(GxH)", zz, w.value)
    if zz is not None and w.value is None:
        ok = refute_below(prod, ZERO_FORCING, zz, budget)
        if ok is not None:
            rep.holds["no zero forcing set below z_G*z_H"] = ok
    if zl_g.value and zl_h.value and zl_g.value >= 2 and zl_h.value >= 2:
        pp = product_failed_partition(g, zl_g.witness, h, zl_h.witness, ZF, cap=cap)
        rep.holds["product zero forcing partition is failed"] = pp.certificate.failed and pp.partition.k == zz
    return rep


def vizing_tree_check(t1: Graph, t2: Graph, budget: SearchBudget | None = None) -> tuple[int, bool | None]:
    """Refute every power dominating set of ``T1 □ T2`` smaller than
    ``γ_P(T1) γ_P(T2)``; returns (the product bound, refuted?)."""
    a = power_domination_number(t1, budget).value
    b = power_domination_number(t2, budget).value
    prod, _ = cartesian_product(t1, t2)
    bound = a * b
    return bound, refute_below(prod, GAMMA_P, bound, budget)
