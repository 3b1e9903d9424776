from pathlib import Path

import networkx as nx
import pytest

from powerdom.families import (
    FIGURE1_EDGES,
    FIGURE2_EDGES,
    gen_complete_bipartite,
    gen_family_F,
    gen_figure1,
    gen_figure2,
    gen_gms,
    gen_necklace,
    gen_path,
    gen_section4_example,
    gen_spider,
    gen_star,
)
from powerdom.graph import Graph, bits, components, induced_subgraph, is_connected, remove_vertices
from powerdom.observe import power_dominate
from powerdom.partition import check_obs5, compute_ell, is_failed_pd_partition
from powerdom.solve import domination_number, power_domination_number

from conftest import to_nx

DATA = Path(__file__).parent / "data"


def golden_edges(name):
    rows = [ln.split() for ln in (DATA / name).read_text().splitlines() if ln and not ln.startswith("#")]
    return {frozenset(r) for r in rows}


@pytest.mark.parametrize("name,edges", [("figure1.edges", FIGURE1_EDGES), ("figure2.edges", FIGURE2_EDGES)])
def test_golden_edge_lists_are_frozen(name, edges):
    assert {frozenset(e) for e in edges} == golden_edges(name)


def test_bundled_graph_values():
    f1 = gen_figure1()
    assert f1.graph.n == 14 and f1.graph.num_edges == 14
    assert power_domination_number(f1.graph).value == 3
    f2 = gen_figure2()
    assert f2.graph.n == 19
    assert power_domination_number(f2.graph).value == 4
    assert compute_ell(f2.graph).value == 4
    assert is_failed_pd_partition(f2.graph, f2.partition).failed


def test_gms_instance():
    inst = gen_gms(2, 1)
    g = inst.graph
    assert g.n == 15 and len(inst.cut) == 1
    assert power_domination_number(g).value == 3
    assert check_obs5(g, inst.partition, inst.u_sets)
    assert inst.partition.parts[0] == frozenset(bits(g.closed_neighborhood(1 << inst.cut[0])))


@pytest.mark.parametrize("m,s", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_gms_structure(m, s):
    inst = gen_gms(m, s)
    g = inst.graph
    assert g.n == m * (2 * (s + 2) + 1) + s and len(inst.cut) == s
    rest, keep = remove_vertices(g, inst.cut)
    comps = components(rest)
    assert len(comps) == m
    spider = to_nx(gen_spider([2] * (s + 2)))
    for c in comps:
        sub, _ = induced_subgraph(rest, c)
        assert nx.is_isomorphic(to_nx(sub), spider)
    assert check_obs5(g, inst.partition, inst.u_sets)
    assert inst.partition.k == m + s


def test_gms_bridge_components_power_domination():
    # each copy together with the hubs needs s + 1 vertices
    inst = gen_gms(2, 1)
    g = inst.graph
    rest, keep = remove_vertices(g, inst.cut)
    for c in components(rest):
        verts = sorted({keep[v] for v in c} | set(inst.cut))
        sub, _ = induced_subgraph(g, verts)
        assert power_domination_number(sub).value == 2


@pytest.mark.parametrize("k", [3, 4, 5])
def test_necklace(k):
    inst = gen_necklace(k)
    g = inst.graph
    assert g.n == 4 * k and is_connected(g) and set(g.degrees()) == {3}
    assert check_obs5(g, inst.partition, inst.u_sets)
    assert is_failed_pd_partition(g, inst.partition).failed


def test_necklace_three_values():
    g = gen_necklace(3).graph
    assert power_domination_number(g).value == domination_number(g).value == compute_ell(g).value == 3


def test_family_f_over_path():
    inst = gen_family_F(gen_path(3))
    g = inst.graph
    assert g.n == 9
    assert is_failed_pd_partition(g, inst.partition).failed
    assert compute_ell(g).value == power_domination_number(g).value == domination_number(g).value == 3
    for i, part in enumerate(inst.partition.parts):
        st = power_dominate(g, [v for v in range(g.n) if v not in part])
        assert not any(st.is_observed(p) for p in part if p != i)


def test_family_f_flags_and_single_vertex():
    k12 = gen_family_F(Graph(1)).graph
    assert sorted(k12.degrees()) == [1, 1, 2]
    k3 = gen_family_F(Graph(1), [True]).graph
    assert k3.degrees() == [2, 2, 2]
    assert power_domination_number(k12).value == power_domination_number(k3).value == 1
    flagged = gen_family_F(gen_path(4), [True, False, True, False])
    assert flagged.graph.num_edges == 3 + 8 + 2
    assert is_failed_pd_partition(flagged.graph, flagged.partition).failed


def test_two_hub_example():
    inst = gen_section4_example(3)
    g = inst.graph
    x1, x2 = inst.cut
    assert g.n == 4 * 4 + 2 and not g.has_edge(x1, x2)
    rest, keep = remove_vertices(g, inst.cut)
    comps = components(rest)
    assert len(comps) == 2
    for c in comps:
        h, _ = induced_subgraph(rest, c)
        assert power_domination_number(h).value == 2
        for ci in inst.cut_parts:
            sub, _ = induced_subgraph(g, sorted({keep[v] for v in c} | set(ci)))
            assert power_domination_number(sub).value == 1


def test_corpus_constructors():
    assert gen_complete_bipartite(3, 3).num_edges == 9
    assert nx.is_isomorphic(to_nx(gen_spider([1, 1, 1])), to_nx(gen_star(3)))


def test_generators_are_deterministic():
    for make in (lambda: gen_gms(3, 2), lambda: gen_necklace(4), lambda: gen_section4_example(4),
                 lambda: gen_family_F(gen_path(3), [True, False, True]), gen_figure1, gen_figure2):
        a, b = make(), make()
        assert a.graph.to_json() == b.graph.to_json()
        if a.partition is not None:
            assert a.partition.to_json_obj() == b.partition.to_json_obj()


@pytest.mark.parametrize("call", [
    lambda: gen_gms(1, 1), lambda: gen_gms(2, 0), lambda: gen_necklace(2),
    lambda: gen_section4_example(2), lambda: gen_family_F(Graph(2)),
    lambda: gen_family_F(gen_path(2), [True]), lambda: gen_spider([]),
    lambda: gen_spider([2, 0]), lambda: gen_star(0), lambda: gen_complete_bipartite(0, 3),
])
def test_bad_parameters(call):
    with pytest.raises(ValueError):
        call()
