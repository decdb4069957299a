from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from stabflow.clifford import Clifford, Effect, Z2
from stabflow.generate import random_diagram, random_rewrites
from stabflow.graph import Diagram
from stabflow.rewrite import (LC, Pivot, RewriteError, ZDelete, ZInsert, apply_step, apply_trace, bend_inputs,
                              inverse_trace, lc_rewrite, pivot_rewrite, relabel, step_for, unbend_inputs, z_delete,
                              z_insert)
from stabflow.semantics import evaluate
from stabflow.tensor import proportional

seeds = st.integers(0, 2**32 - 1)


def same_map(a: Diagram, b: Diagram) -> bool:
    return proportional(evaluate(a), evaluate(b))


def diagram(seed, n=None) -> Diagram:
    rng = np.random.default_rng(seed)
    return random_diagram(int(rng.integers(1, 7)) if n is None else n, rng)


@given(seeds)
def test_lc_is_sound(seed):
    d = diagram(seed)
    for u in sorted(d.vertices - set(d.inputs)):
        assert same_map(d, lc_rewrite(d, u))


@given(seeds)
def test_pivot_is_sound_and_symmetric(seed):
    d = diagram(seed)
    for u, v in sorted(d.graph.edges):
        if u in d.inputs or v in d.inputs:
            continue
        a, b = pivot_rewrite(d, u, v), pivot_rewrite(d, v, u)
        assert a.graph == b.graph
        assert same_map(d, a) and same_map(a, b)
        assert pivot_rewrite(a, u, v) == d


@given(seeds)
def test_lc_four_times_is_identity(seed):
    d = diagram(seed)
    for u in sorted(d.vertices - set(d.inputs)):
        e = d
        for _ in range(4):
            e = lc_rewrite(e, u)
        assert e == d


@given(seeds, st.booleans())
def test_z_insert_and_delete(seed, minus):
    d = diagram(seed)
    rng = np.random.default_rng(seed)
    ws = [v for v in sorted(d.vertices) if rng.random() < 0.5]
    e, x = z_insert(d, ws, -1 if minus else 1)
    assert e.graph.labels[x] == "Z" and e.neighbours(x) == frozenset(ws)
    assert same_map(d, e)
    assert z_delete(e, x) == d


def test_y_vertex_becomes_z_after_lc():
    d = Diagram.build([0, 1], [(0, 1)], outputs=[1], effects={0: Effect("Y", 1)})
    assert lc_rewrite(d, 0).effects[0].basis == "Z"


def test_x_vertex_becomes_z_after_pivot():
    d = Diagram.build([0, 1, 2], [(0, 1), (1, 2)], outputs=[2], effects={0: Effect("X", 1), 1: Effect("X", -1)})
    out = pivot_rewrite(d, 0, 1)
    assert out.effects[0].basis == "Z"
    assert same_map(d, out)


def test_isolated_z_plus_deletion():
    d = Diagram.build([0, 1], [], outputs=[1], effects={0: Effect("Z", 1)})
    out = z_delete(d, 0)
    assert out.vertices == {1}
    assert same_map(d, out)


def test_z_minus_deletion_puts_half_turn_on_neighbour():
    d = Diagram.build([0, 1], [(0, 1)], outputs=[1], effects={0: Effect("Z", -1)})
    out = z_delete(d, 0)
    assert out.output_cliffords[1] == Z2
    assert same_map(d, out)


def test_preconditions():
    d = Diagram.build([0, 1, 2], [(0, 1), (1, 2)], inputs=[0], outputs=[2],
                      effects={0: Effect("X", 1), 1: Effect("Y", 1)})
    with pytest.raises(RewriteError):
        lc_rewrite(d, 0)
    with pytest.raises(RewriteError):
        pivot_rewrite(d, 0, 1)
    with pytest.raises(RewriteError):
        pivot_rewrite(d, 0, 2)
    with pytest.raises(RewriteError):
        z_delete(d, 1)
    with pytest.raises(RewriteError):
        lc_rewrite(d, 7)
    with pytest.raises(RewriteError):
        z_insert(d, [9])
    with pytest.raises(RewriteError):
        apply_step(d, ZDelete(1, (0, 2), 1))


@given(seeds, st.integers(0, 10))
def test_traces_invert_exactly(seed, k):
    d = diagram(seed)
    e, steps = random_rewrites(d, k, seed)
    assert apply_trace(d, steps) == e
    assert apply_trace(e, inverse_trace(steps)) == d
    assert same_map(d, e)


@given(seeds)
def test_bend_unbend(seed):
    d = diagram(seed)
    bent, records = bend_inputs(d)
    assert bent.inputs == ()
    assert same_map(d, bent)
    assert unbend_inputs(bent, records) == d


def test_relabel_round_trip():
    d = diagram(5, n=5)
    m = {v: 10 + v for v in d.vertices}
    e = relabel(d, m)
    assert relabel(e, {b: a for a, b in m.items()}) == d
    assert same_map(d, e)


def test_step_for_records_deletion_data():
    d = Diagram.build([0, 1, 2], [(0, 1), (0, 2)], outputs=[1, 2], effects={0: Effect("Z", -1)})
    assert step_for(d, "zdelete", 0) == ZDelete(0, (1, 2), -1)
    assert step_for(d, "zinsert", [1], 1) == ZInsert(3, (1,), 1)
    assert step_for(d, "lc", 1) == LC(1)
    assert step_for(d, "pivot", 0, 1) == Pivot(0, 1)


def test_input_cliffords_survive_rewrites():
    c = Clifford.from_word([("Z", 1), ("X", 1)])
    d = Diagram.build([0, 1, 2], [(0, 1), (1, 2)], inputs=[0], outputs=[2],
                      effects={0: Effect("X", 1), 1: Effect("Y", 1)}, input_cliffords={0: c})
    out = lc_rewrite(d, 1)
    assert out.input_cliffords[0] == c
    assert same_map(d, out)
