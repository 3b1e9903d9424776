import random

import pytest

from powerdom.bounds import (
    CutSetError,
    check_product_bounds,
    check_theorem1,
    check_theorem6,
    cut_components,
    cutset_bounds,
    generalized_upper,
    vizing_tree_check,
)
from powerdom.families import (
    gen_complete_bipartite,
    gen_doublestar,
    gen_figure1,
    gen_gms,
    gen_necklace,
    gen_path,
    gen_section4_example,
    gen_star,
    random_graph,
)
from powerdom.graph import Graph, bits, component_masks, induced_subgraph
from powerdom.solve import power_domination_number

from conftest import random_corpus


def separates(g, cut_mask):
    return len(component_masks(g, within=g.full_mask & ~cut_mask)) >= 2


def random_minimal_separator(g, rng):
    """N(a) for a vertex with a non-neighbour, then drop vertices greedily
    while the remainder stays disconnected."""
    cands = [a for a in range(g.n) if g.degree(a) < g.n - 1]
    if not cands:
        return None
    a = rng.choice(cands)
    cut = g.adj[a]
    if not cut:
        return None
    order = list(bits(cut))
    rng.shuffle(order)
    for v in order:
        if separates(g, cut & ~(1 << v)) and cut & ~(1 << v):
            cut &= ~(1 << v)
    return sorted(bits(cut))


# -- cut-set sandwich ----------------------------------------------------------------------


def test_gms_sandwich_is_tight():
    inst = gen_gms(2, 1)
    rep = cutset_bounds(inst.graph, inst.cut)
    assert rep.value("lower") == rep.value("upper") == rep.exact["gamma_P"] == 3
    assert rep.ok and rep.slack["lower <= gamma_P"] == 0


def test_two_hub_bounds():
    inst = gen_section4_example(3)
    rep = cutset_bounds(inst.graph, inst.cut)
    assert rep.value("upper") == 6
    gen = generalized_upper(inst.graph, inst.cut, inst.cut_parts)
    assert gen.value("generalized_upper") == 4 and gen.value("cutset_upper") == 6
    assert gen.extra["gamma_P_L"] == [1, 1]
    assert gen.holds["construction is a power dominating set"] and gen.ok


def test_path_cut_example():
    rep = cutset_bounds(gen_path(5), [2])
    assert rep.value("lower") == 1 == rep.exact["gamma_P"]
    assert rep.value("upper") == 3 and rep.ok


def test_cut_validation():
    with pytest.raises(CutSetError):
        cutset_bounds(gen_path(5), [0])
    with pytest.raises(CutSetError):
        cutset_bounds(gen_path(5), [])
    with pytest.raises(CutSetError):
        cut_components(gen_path(5), [2], groups=[[0, 1]])
    with pytest.raises(CutSetError):
        cut_components(gen_path(5), [2], groups=[[0], [0]])
    with pytest.raises(CutSetError):
        generalized_upper(gen_path(5), [2], [[2]])
    with pytest.raises(CutSetError):
        generalized_upper(gen_path(5), [2], [[2], [1]])


def test_grouped_components():
    star = gen_star(4)
    blocks = cut_components(star, [0], groups=[[0, 1], [2, 3]])
    assert len(blocks) == 2
    rep = cutset_bounds(star, [0], groups=[[0, 1], [2, 3]])
    assert rep.ok and rep.value("upper") == 2 + 2 + 1


def test_sandwich_on_random_separators():
    rng = random.Random(31)
    done = 0
    while done < 150:
        g = random_graph(rng.randint(4, 14), rng.uniform(0.15, 0.5), rng, connected=True)
        cut = random_minimal_separator(g, rng)
        if cut is None:
            continue
        rep = cutset_bounds(g, cut)
        assert rep.ok, rep.to_json_obj()
        assert rep.value("lower") <= rep.exact["gamma_P"] <= rep.value("upper")
        done += 1


def test_family_natural_cuts():
    for m, s in ((2, 1), (3, 1), (2, 2)):
        inst = gen_gms(m, s)
        rep = cutset_bounds(inst.graph, inst.cut)
        assert rep.ok and rep.value("lower") == rep.value("upper") == m + s
    inst = gen_section4_example(3)
    assert cutset_bounds(inst.graph, inst.cut).ok


def test_generalized_degenerate_choices():
    rng = random.Random(32)
    done = 0
    while done < 60:
        g = random_graph(rng.randint(5, 12), rng.uniform(0.2, 0.5), rng, connected=True)
        cut = random_minimal_separator(g, rng)
        if cut is None:
            continue
        base = cutset_bounds(g, cut)
        m = len(base.extra["components"])
        empty = generalized_upper(g, cut, [[]] * m)
        assert empty.value("generalized_upper") == base.value("upper")
        full = generalized_upper(g, cut, [cut] * m)
        assert full.value("generalized_upper") == sum(base.extra["gamma_P_K"]) + len(cut)
        assert empty.ok and full.ok
        done += 1


# -- degree bound ---------------------------------------------------------------------------------


def test_degree_bound_examples():
    for g in (gen_path(6), gen_complete_bipartite(3, 3)):
        rep = check_theorem1(g)
        assert rep.ok and "tight" in rep.notes
    rep = check_theorem1(gen_figure1().graph)
    assert rep.ok and rep.value("ceil(Z/Delta)") <= 3
    with pytest.raises(ValueError):
        check_theorem1(Graph(3))


def test_degree_bound_on_corpus():
    for g in random_corpus(33, 200, 2, 10):
        if g.num_edges:
            assert check_theorem1(g).ok


# -- products ------------------------------------------------------------------------------------------


def test_product_examples():
    rep = check_product_bounds(gen_path(3), gen_path(6))
    assert rep.value("gamma_P(GxH)") == 1 and rep.ok
    assert rep.slack["max(gamma_P(G),gamma_P(H)) <= gamma_P(GxH)"] == 0
    k33 = gen_complete_bipartite(3, 3)
    rep = check_product_bounds(k33, k33)
    assert rep.value("ell_G*ell_H") == 1 and rep.ok
    assert any("ell" in n for n in rep.notes)


def test_doublestar_product():
    ds = gen_doublestar(2, 2)
    rep = check_product_bounds(ds, ds)
    assert rep.value("ell_G*ell_H") == 4 and rep.value("gamma_P(GxH)") == 4 and rep.ok
    assert vizing_tree_check(ds, ds) == (4, True)


def test_zero_forcing_products():
    rep = check_theorem6(gen_path(3), gen_path(3))
    assert rep.value("Z(GxH)") == 3 and rep.ok
    k2 = gen_path(2)
    rep = check_theorem6(k2, k2)
    assert rep.value("Z(GxH)") == 2 and rep.ok
    ds = gen_doublestar(2, 2)
    rep = check_theorem6(ds, ds)
    assert rep.value("z_G*z_H") == 4 and rep.value("Z(GxH)") == 10
    assert rep.holds["product zero forcing partition is failed"] and rep.ok


def test_max_factor_bound_on_connected_pairs():
    rng = random.Random(34)
    checked = 0
    while checked < 40:
        g = random_graph(rng.randint(2, 7), rng.uniform(0.3, 0.7), rng, connected=True)
        h = random_graph(rng.randint(2, 7), rng.uniform(0.3, 0.7), rng, connected=True)
        if g.n * h.n > 42:
            continue
        rep = check_product_bounds(g, h)
        assert rep.ok, rep.to_json_obj()
        checked += 1


def test_report_json_shape():
    rep = cutset_bounds(gen_path(5), [2])
    obj = rep.to_json_obj()
    assert {b["name"] for b in obj["bounds"]} == {"lower", "upper"}
    assert obj["exact"] == {"gamma_P": 1}
    assert all(isinstance(v, bool) for v in obj["holds"].values())


def test_necklace_cut_is_rejected_when_connected():
    g = gen_necklace(3).graph
    with pytest.raises(CutSetError):
        cutset_bounds(g, [0])
