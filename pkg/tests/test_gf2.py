from __future__ import annotations

from itertools import combinations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stabflow.gf2 import (AffineSpace, BitMatrix, EnumerationLimitError, InconsistentSystemError,
                          InvalidFreeSetError, canonical_free_vars, dependency_table, enumerate_points,
                          pack_bits, rref, unpack_index)


def example_space() -> AffineSpace:
    # x1 + x3 = 1, x1 + x2 + x4 = 0
    return AffineSpace(4, [[1, 0, 1, 0], [1, 1, 0, 1]], [1, 0])


def brute_points(space: AffineSpace) -> set[tuple[int, ...]]:
    return {x for x in product((0, 1), repeat=space.n) if space.contains(x)}


def scan_free_vars(points: set[tuple[int, ...]], n: int) -> tuple[int, ...]:
    """Ascending scan straight off the point set: x_j is dependent iff x_1..x_{j-1} fix it."""
    free = []
    for j in range(n):
        seen: dict[tuple[int, ...], int] = {}
        determined = True
        for x in points:
            prefix = x[:j]
            if seen.setdefault(prefix, x[j]) != x[j]:
                determined = False
                break
        if not determined:
            free.append(j + 1)
    return tuple(free)


@st.composite
def consistent_systems(draw, max_n: int = 8):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(0, n + 1))
    rows = [draw(st.lists(st.integers(0, 1), min_size=n, max_size=n)) for _ in range(m)]
    x0 = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    rhs = [sum(a * b for a, b in zip(r, x0)) % 2 for r in rows]
    return AffineSpace(n, rows or None, rhs or None)


def test_rref_example_system():
    res = rref(BitMatrix.from_lists([[1, 0, 1, 0], [1, 1, 0, 1]]), [1, 0])
    assert res.pivots == (1, 2)
    assert res.matrix.to_lists() == [[1, 0, 1, 0], [0, 1, 1, 1]]
    assert res.rhs == (1, 1)


def test_rref_empty_system():
    res = rref(BitMatrix.zeros(0, 3), [])
    assert res.pivots == ()
    assert AffineSpace(3).dim == 3


def test_rref_inconsistent():
    with pytest.raises(InconsistentSystemError):
        rref(BitMatrix.from_lists([[1], [1]]), [0, 1])


@given(consistent_systems())
def test_rref_is_idempotent(space):
    once = rref(space.constraints, space.rhs)
    twice = rref(once.matrix, once.rhs)
    assert once == twice


def test_example_canonical_free_vars():
    assert canonical_free_vars(example_space()) == (1, 2)


def test_trivial_free_vars():
    assert canonical_free_vars(AffineSpace.full(5)) == (1, 2, 3, 4, 5)
    assert canonical_free_vars(AffineSpace.point((1, 0, 1))) == ()


def test_dependency_tables_example():
    space = example_space()
    assert dependency_table(space, [1, 2]).rows == {3: (1, frozenset({1})), 4: (0, frozenset({1, 2}))}
    assert dependency_table(space, [2, 3]).rows == {1: (1, frozenset({3})), 4: (1, frozenset({2, 3}))}
    assert dependency_table(space, [3, 4]).rows == {1: (1, frozenset({3})), 2: (1, frozenset({3, 4}))}


def test_dependency_table_rejects_non_parameterizing_set():
    # x1 and x3 are tied together, so {x1, x3} cannot both be free
    with pytest.raises(InvalidFreeSetError):
        dependency_table(example_space(), [1, 3])
    with pytest.raises(InvalidFreeSetError):
        dependency_table(example_space(), [1])


def test_enumerate_points():
    pts = enumerate_points(example_space())
    assert sorted(pts) == [(0, 0, 1, 0), (0, 1, 1, 1), (1, 0, 0, 1), (1, 1, 0, 0)]
    assert enumerate_points(AffineSpace.point((1, 0))) == [(1, 0)]
    assert sorted(enumerate_points(AffineSpace.full(2))) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    with pytest.raises(EnumerationLimitError):
        enumerate_points(AffineSpace.full(6), limit=5)


@given(consistent_systems(max_n=10))
def test_canonical_free_vars_matches_point_scan(space):
    pts = brute_points(space)
    assert canonical_free_vars(space) == scan_free_vars(pts, space.n)


@given(consistent_systems(max_n=9))
def test_canonical_free_set_is_the_unique_earlier_only_one(space):
    canon = canonical_free_vars(space)
    good = []
    for free in combinations(range(1, space.n + 1), space.dim):
        try:
            table = dependency_table(space, free)
        except InvalidFreeSetError:
            continue
        if table.depends_only_on_earlier():
            good.append(free)
    assert good == [canon]


@given(consistent_systems())
def test_every_valid_free_set_parameterizes_all_points(space):
    pts = brute_points(space)
    assert len(pts) == 2 ** space.dim
    for free in combinations(range(1, space.n + 1), space.dim):
        try:
            table = dependency_table(space, free)
        except InvalidFreeSetError:
            # then some two points agree on the free coordinates
            proj = {tuple(x[k - 1] for k in free) for x in pts}
            assert len(proj) < len(pts)
            continue
        assert set(table.points()) == pts


@given(consistent_systems())
def test_from_points_round_trip(space):
    pts = brute_points(space)
    assert AffineSpace.from_points(pts, space.n) == space


@given(st.integers(0, 2**9 - 1))
def test_pack_unpack(idx):
    assert pack_bits(unpack_index(idx, 9)) == idx
    assert unpack_index(0b100, 3) == (1, 0, 0)
