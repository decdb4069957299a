from __future__ import annotations

from hypothesis import given
from hypothesis import strategies as st

from stabflow.graph import LabelledOpenGraph, local_complement, odd_neighbourhood, pivot, pivot_via_local_complements


def plain(n: int, edges) -> LabelledOpenGraph:
    return LabelledOpenGraph.from_edges(range(n), edges, (), range(n), {})


@st.composite
def graphs(draw, max_n: int = 8, need_edge: bool = False):
    n = draw(st.integers(2 if need_edge else 1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    if need_edge and not edges:
        edges = [pairs[draw(st.integers(0, len(pairs) - 1))]]
    return plain(n, edges)


def test_odd_neighbourhood_examples():
    tri = plain(3, [(0, 1), (1, 2), (0, 2)])
    assert odd_neighbourhood(tri, {0}) == {1, 2}
    assert odd_neighbourhood(tri, set()) == frozenset()
    path = plain(3, [(0, 1), (1, 2)])
    assert odd_neighbourhood(path, {0, 2}) == frozenset()


@given(graphs(), st.data())
def test_odd_neighbourhood_is_linear(g, data):
    vs = sorted(g.vertices)
    a = frozenset(data.draw(st.lists(st.sampled_from(vs), unique=True)))
    b = frozenset(data.draw(st.lists(st.sampled_from(vs), unique=True)))
    assert odd_neighbourhood(g, a ^ b) == odd_neighbourhood(g, a) ^ odd_neighbourhood(g, b)
    brute = {v for v in vs if len(g.neighbours(v) & a) % 2}
    assert odd_neighbourhood(g, a) == brute


def test_local_complement_star_becomes_triangle():
    star = plain(4, [(0, 1), (0, 2), (0, 3)])
    out = local_complement(star, 0)
    assert out.edges == {(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)}


def test_local_complement_isolated_vertex():
    g = plain(3, [(1, 2)])
    assert local_complement(g, 0) == g


@given(graphs(), st.data())
def test_four_local_complements_are_identity_and_two_already_are(g, data):
    u = data.draw(st.sampled_from(sorted(g.vertices)))
    once = local_complement(g, u)
    assert local_complement(once, u) == g
    h = g
    for _ in range(4):
        h = local_complement(h, u)
    assert h == g
    assert once.vertices == g.vertices and once.inputs == g.inputs and once.labels == g.labels


@given(graphs(need_edge=True), st.data())
def test_pivot_identities(g, data):
    u, v = data.draw(st.sampled_from(sorted(g.edges)))
    p = pivot(g, u, v)
    assert p == pivot(g, v, u)
    assert pivot(p, u, v) == g
    assert p == pivot_via_local_complements(g, u, v)
    assert p == local_complement(local_complement(local_complement(g, u), v), u)
