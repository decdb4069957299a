"""Seeded random diagrams and labelled open graphs.

All randomness comes from ``numpy.random.default_rng(seed)`` (the PCG64 bit
generator), so a seed reproduces the same corpus on every platform.
"""

from __future__ import annotations

import numpy as np

from .clifford import Clifford, Effect
from .graph import LABELS, Diagram, LabelledOpenGraph


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _random_edges(rng: np.random.Generator, vertices: list[int], density: float) -> list[tuple[int, int]]:
    return [(u, v) for i, u in enumerate(vertices) for v in vertices[i + 1:] if rng.random() < density]


def random_open_graph(n: int, seed=None, *, labels=LABELS, density: float = 0.5,
                      p_input: float = 0.3, p_output: float = 0.4) -> LabelledOpenGraph:
    rng = _rng(seed)
    vs = list(range(n))
    inputs = [v for v in vs if rng.random() < p_input]
    outputs = [v for v in vs if rng.random() < p_output]
    lab = {v: str(labels[rng.integers(len(labels))]) for v in vs if v not in outputs}
    return LabelledOpenGraph.from_edges(vs, _random_edges(rng, vs, density), inputs, outputs, lab)


def random_diagram(n: int, seed=None, *, density: float = 0.5, p_input: float = 0.3,
                   p_output: float = 0.4, cliffords: bool = True) -> Diagram:
    """Random stabilizer MBQC+LC diagram on ``n`` vertices (ids ``0..n-1``)."""
    rng = _rng(seed)
    vs = list(range(n))
    inputs = [v for v in vs if rng.random() < p_input]
    outputs = [v for v in vs if rng.random() < p_output]
    effects = {v: Effect("XYZ"[rng.integers(3)], 1 - 2 * int(rng.integers(2))) for v in vs if v not in outputs}
    def pick() -> Clifford:
        return Clifford(int(rng.integers(24))) if cliffords else Clifford.identity()
    outs = {v: pick() for v in outputs}
    ins = {v: pick() for v in inputs}
    return Diagram.build(vs, _random_edges(rng, vs, density), inputs=inputs, outputs=outputs,
                         effects=effects, output_cliffords=outs, input_cliffords=ins)


def random_flowed_diagram(n: int, seed=None, *, max_tries: int = 10_000, **kwargs) -> Diagram:
    """Rejection-sample :func:`random_diagram` until a Pauli flow exists."""
    from .flow import find_flow

    rng = _rng(seed)
    for _ in range(max_tries):
        d = random_diagram(n, rng, **kwargs)
        if find_flow(d.graph) is not None:
            return d
    raise RuntimeError(f"no flowed diagram found in {max_tries} tries")


def random_rewrites(d: Diagram, k: int, seed=None, *, p_insert: float = 0.25):
    """Apply ``k`` random flow-preserving rewrites; return ``(diagram, steps)``."""
    from .rewrite import LC, Pivot, ZInsert, apply_step, step_for

    rng = _rng(seed)
    steps = []
    for _ in range(k):
        inputs = set(d.inputs)
        options = []
        free = sorted(d.vertices - inputs)
        options += [LC(v) for v in free]
        options += [Pivot(u, v) for u, v in sorted(d.graph.edges) if u not in inputs and v not in inputs]
        options += [step_for(d, "zdelete", v) for v in free if v in d.effects and d.effects[v].basis == "Z"]
        if not options or rng.random() < p_insert:
            ws = [v for v in sorted(d.vertices) if rng.random() < 0.5]
            step = ZInsert(max(d.vertices, default=-1) + 1, tuple(ws), 1 - 2 * int(rng.integers(2)))
        else:
            step = options[int(rng.integers(len(options)))]
        d = apply_step(d, step)
        steps.append(step)
    return d, steps
