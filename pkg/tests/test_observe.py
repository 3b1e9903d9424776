import random

import pytest
from hypothesis import given, settings, strategies as st

from powerdom.families import gen_cycle, gen_doublestar, gen_figure1, gen_figure2, gen_path, gen_star
from powerdom.graph import Graph, bits, cartesian_product, mask_of
from powerdom.observe import (
    ObservationState,
    domination_step,
    force_closure,
    is_dominating_set,
    is_power_dominating_set,
    is_zero_forcing_set,
    power_dominate,
    propagate,
    sequential_closure,
    zero_force,
)

from conftest import graphs, random_corpus


def naive_rounds(g: Graph, start: set[int]) -> dict[int, int]:
    """Simultaneous-round propagation on plain Python sets."""
    rounds = {v: 0 for v in start}
    t = 0
    while True:
        t += 1
        new = set()
        for v in list(rounds):
            un = [u for u in g.neighbors(v) if u not in rounds]
            if len(un) == 1:
                new.add(un[0])
        if not new:
            return rounds
        for u in new:
            rounds[u] = t


def closed_nbhd(g, s):
    out = set(s)
    for v in s:
        out.update(g.neighbors(v))
    return out


# -- examples --------------------------------------------------------------------------


def test_domination_step_examples():
    star = gen_star(5)
    st0 = domination_step(star, [0])
    assert st0.vertices == frozenset(range(6)) and set(st0.rounds) == {0}
    ds = gen_doublestar(2, 2)  # a=0, b=1, leaves 2,3 on a and 4,5 on b
    assert domination_step(ds, [0]).vertices == {0, 1, 2, 3}
    assert domination_step(ds, []).vertices == frozenset()


def test_propagate_examples():
    p6 = gen_path(6)
    final = propagate(p6, domination_step(p6, [0]))
    assert final.complete and final.rounds[5] == 4 and final.rounds[1] == 0
    ds = gen_doublestar(2, 2)
    start = domination_step(ds, [0])
    assert propagate(ds, start) == start
    full = domination_step(ds, range(6))
    assert propagate(ds, full) == full


def test_power_dominate_labelled_examples():
    g = gen_figure1().graph
    s = [g.vertex(x) for x in ("v1", "u1", "w1")]
    assert power_dominate(g, s).complete
    f2 = gen_figure2().graph
    pi2 = {f2.vertex(x) for x in ("u1", "u2", "z", "u3", "u4", "u5", "u6")}
    state = power_dominate(f2, [v for v in range(f2.n) if v not in pi2])
    assert not state.is_observed(f2.vertex("z"))
    assert power_dominate(g, range(g.n)).complete


def test_predicates():
    p, lab = cartesian_product(gen_path(3), gen_path(6))
    assert any(is_power_dominating_set(p, [v]) for v in range(p.n))
    assert is_power_dominating_set(p, [lab.index(1, 0)])
    ds = gen_doublestar(2, 2)
    assert not is_power_dominating_set(ds, [0])
    assert not is_power_dominating_set(Graph(1), [])
    assert is_power_dominating_set(Graph(0), [])
    assert is_zero_forcing_set(gen_path(7), [0])
    assert not is_zero_forcing_set(gen_cycle(4), [0])
    assert is_zero_forcing_set(ds, [2, 3, 0, 4])
    assert is_dominating_set(gen_star(5), [0]) and not is_dominating_set(gen_path(6), [0, 5])


def test_state_validation_and_json():
    st0 = power_dominate(gen_path(4), [1])
    assert st0.to_json_obj() == {"observed": [0, 1, 2, 3], "rounds": {"0": 0, "1": 0, "2": 0, "3": 1}}
    with pytest.raises(ValueError):
        ObservationState(2, 0b01, (None, 0))


# -- properties ---------------------------------------------------------------------------


def test_rounds_match_naive_simulation():
    r = random.Random(5)
    for g in random_corpus(1, 300, 1, 12):
        s = {v for v in range(g.n) if r.random() < 0.25}
        ours = power_dominate(g, s)
        ref = naive_rounds(g, closed_nbhd(g, s))
        assert {v: ours.rounds[v] for v in ours.vertices} == ref
        zf = zero_force(g, s)
        assert {v: zf.rounds[v] for v in zf.vertices} == naive_rounds(g, set(s))


def test_round_invariant_forcing_witness():
    # every vertex observed in round t >= 1 was the sole unobserved neighbour
    # of a vertex observed by round t - 1
    r = random.Random(9)
    for g in random_corpus(2, 200, 2, 12):
        s = [v for v in range(g.n) if r.random() < 0.3]
        state = power_dominate(g, s)
        for v in state.vertices:
            t = state.rounds[v]
            if t == 0:
                continue
            before = {u for u in state.vertices if state.rounds[u] <= t - 1}
            assert any(
                w in before and {x for x in g.neighbors(w) if x not in before} == {v}
                for w in g.neighbors(v)
            )


@settings(max_examples=300, deadline=None)
@given(graphs(max_n=10), st.data())
def test_monotone_and_contains_closed_neighbourhood(g, data):
    s = data.draw(st.sets(st.integers(0, g.n - 1)))
    extra = data.draw(st.sets(st.integers(0, g.n - 1)))
    small = power_dominate(g, s).vertices
    big = power_dominate(g, s | extra).vertices
    assert small <= big
    assert closed_nbhd(g, s) <= small


@settings(max_examples=300, deadline=None)
@given(graphs(max_n=10), st.data())
def test_idempotent_and_order_independent(g, data):
    s = data.draw(st.sets(st.integers(0, g.n - 1)))
    once = power_dominate(g, s)
    assert propagate(g, once) == once
    seed = data.draw(st.integers(0, 10**6))
    r = random.Random(seed)
    start = mask_of(closed_nbhd(g, s))
    assert sequential_closure(g, start, order_key=lambda m: r.random()) == mask_of(once.vertices)
    assert force_closure(g, start) == mask_of(once.vertices)


def test_pds_detected_from_primitive_steps():
    for g in random_corpus(3, 200, 1, 9):
        for s in ([], list(range(g.n)), list(range(0, g.n, 2))):
            composed = propagate(g, domination_step(g, s)).complete
            assert composed == is_power_dominating_set(g, s)
