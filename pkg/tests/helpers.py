"""Shared random generators for the test suite."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from stabflow.stabilizer import PhasePolyDiagram, PhasePolynomial


def random_phase_poly(n: int, rng: np.random.Generator, density: float = 0.5) -> PhasePolyDiagram:
    colours = tuple("green" if rng.random() < 0.5 else "red" for _ in range(n))
    phases = tuple(int(rng.integers(4)) if c == "green" else 2 * int(rng.integers(2)) for c in colours)
    plain, had = set(), set()
    for a, b in combinations(range(1, n + 1), 2):
        if rng.random() >= density:
            continue
        kinds = {colours[a - 1], colours[b - 1]}
        if kinds == {"green"}:
            had.add((a, b))
        elif kinds == {"green", "red"}:
            plain.add((a, b))
    return PhasePolyDiagram(colours, phases, frozenset(plain), frozenset(had))


def random_poly(free: tuple[int, ...], rng: np.random.Generator) -> PhasePolynomial:
    lin = {j: int(rng.integers(4)) for j in free}
    quad = frozenset(p for p in combinations(free, 2) if rng.random() < 0.5)
    return PhasePolynomial(free, lin, quad)


def all_polys(free: tuple[int, ...]):
    """Every phase polynomial over ``free`` (4^|F| * 2^(|F| choose 2) of them)."""
    pairs = list(combinations(free, 2))
    for lin_code in range(4 ** len(free)):
        lin = {j: (lin_code >> (2 * i)) & 3 for i, j in enumerate(free)}
        for quad_code in range(1 << len(pairs)):
            quad = frozenset(p for i, p in enumerate(pairs) if quad_code >> i & 1)
            yield PhasePolynomial(free, lin, quad)
