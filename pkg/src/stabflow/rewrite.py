"""Flow-preserving rewrites on MBQC+LC diagrams, with invertible trace steps.

Decoration updates are right-multiplications of a vertex's decoration by a
fixed Clifford: for a measured vertex the effect ``<m|`` becomes ``<m| G``,
for an output vertex the wire Clifford ``C`` becomes ``C G`` (``G`` sits
next to the spider).  The constants below were fixed by exhaustive
comparison against the tensor oracle; ``tests/test_rewrite_tables.py``
re-derives them.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from .clifford import Clifford, Effect, H, X1, Z2, Z3
from .graph import Diagram, LabelledOpenGraph, local_complement

# local complementation about u
LC_SELF = X1
LC_NEIGHBOUR = Z3
# Z-deletion / insertion of a "-" vertex
Z_MINUS_NEIGHBOUR = Z2


class RewriteError(ValueError):
    """A rewrite precondition does not hold."""


def _act(d: Diagram, updates: Mapping[int, Clifford], graph: LabelledOpenGraph) -> Diagram:
    """Right-multiply the decorations of the given vertices; relabel ``graph`` to match."""
    effects = dict(d.effects)
    outs = dict(d.output_cliffords)
    for v, g in updates.items():
        if v in effects:
            effects[v] = effects[v].then(g)
        else:
            outs[v] = outs[v] @ g
    labels = {v: e.basis for v, e in effects.items()}
    return Diagram(LabelledOpenGraph(graph.adj, graph.inputs, graph.outputs, labels),
                   effects, outs, d.input_cliffords)


def lc_rewrite(d: Diagram, u: int) -> Diagram:
    """Local complementation about ``u``.

    ``u`` must not be an input: its quarter turn cannot be moved onto an
    input wire without leaving MBQC+LC form.
    """
    if u not in d.vertices:
        raise RewriteError(f"unknown vertex {u}")
    if u in d.inputs:
        raise RewriteError(f"cannot complement about input vertex {u}")
    updates = {u: LC_SELF}
    for w in d.neighbours(u):
        updates[w] = LC_NEIGHBOUR
    return _act(d, updates, local_complement(d.graph, u))


def pivot_rewrite(d: Diagram, u: int, v: int) -> Diagram:
    """Pivot about the edge ``(u, v)``; equal to LC about u, v, u."""
    if u not in d.vertices or v not in d.vertices:
        raise RewriteError(f"unknown vertex in ({u}, {v})")
    if not d.graph.has_edge(u, v):
        raise RewriteError(f"({u}, {v}) is not an edge")
    if u in d.inputs or v in d.inputs:
        raise RewriteError("cannot pivot about an edge touching an input")
    return lc_rewrite(lc_rewrite(lc_rewrite(d, u), v), u)


def _check_deletable(d: Diagram, u: int) -> Effect:
    if u not in d.vertices:
        raise RewriteError(f"unknown vertex {u}")
    if u in d.inputs:
        raise RewriteError(f"vertex {u} is an input")
    e = d.effects.get(u)
    if e is None or e.basis != "Z":
        raise RewriteError(f"vertex {u} is not Z-measured")
    return e


def z_delete(d: Diagram, u: int) -> Diagram:
    """Remove a Z-measured non-input vertex.

    A ``-`` outcome applies a Z half-turn to every former neighbour.
    """
    e = _check_deletable(d, u)
    ns = d.neighbours(u)
    updates = {w: Z_MINUS_NEIGHBOUR for w in ns} if e.sign < 0 else {}
    adj = {v: set(w) - {u} for v, w in d.graph.adj.items() if v != u}
    effects = {v: x for v, x in d.effects.items() if v != u}
    g = LabelledOpenGraph(adj, d.inputs, d.outputs, {v: x.basis for v, x in effects.items()})
    return _act(d.replace(graph=g, effects=effects), updates, g)


def fresh_vertex(d: Diagram) -> int:
    return max(d.vertices, default=-1) + 1


def z_insert(d: Diagram, neighbours: Iterable[int], sign: int = 1, vertex: int | None = None) -> tuple[Diagram, int]:
    """Add a fresh Z-measured vertex joined to exactly ``neighbours``.

    Returns the new diagram and the new vertex id (``max id + 1`` unless
    ``vertex`` is given, which trace replay uses).
    """
    ws = frozenset(neighbours)
    unknown = ws - d.vertices
    if unknown:
        raise RewriteError(f"unknown vertices {sorted(unknown)}")
    if sign not in (1, -1):
        raise RewriteError("sign must be +1 or -1")
    x = fresh_vertex(d) if vertex is None else vertex
    if x in d.vertices:
        raise RewriteError(f"vertex id {x} already in use")
    adj = {v: set(w) for v, w in d.graph.adj.items()}
    adj[x] = set(ws)
    for w in ws:
        adj[w].add(x)
    effects = dict(d.effects)
    effects[x] = Effect("Z", sign)
    g = LabelledOpenGraph(adj, d.inputs, d.outputs, {v: e.basis for v, e in effects.items()})
    updates = {w: Z_MINUS_NEIGHBOUR for w in ws} if sign < 0 else {}
    return _act(d.replace(graph=g, effects=effects), updates, g), x


# -- map-state duality and relabelling -------------------------------------

def bend_inputs(d: Diagram) -> tuple[Diagram, tuple[tuple[int, int, Clifford], ...]]:
    """Turn every input wire into an output on a new vertex.

    Input ``v`` with wire Clifford ``C`` gains a neighbour ``v'`` whose output
    Clifford is ``C^T H``; the new outputs precede the old ones.  Returns the
    diagram and the ``(v, v', C)`` records needed to undo it.
    """
    nxt = fresh_vertex(d)
    records = []
    adj = {v: set(w) for v, w in d.graph.adj.items()}
    outs = dict(d.output_cliffords)
    for v in d.inputs:
        c = d.input_cliffords[v]
        adj[nxt] = {v}
        adj[v].add(nxt)
        outs[nxt] = c.transpose() @ H
        records.append((v, nxt, c))
        nxt += 1
    new_outputs = tuple(r[1] for r in records) + d.outputs
    g = LabelledOpenGraph(adj, (), new_outputs, d.graph.labels)
    return Diagram(g, d.effects, outs, {}), tuple(records)


def unbend_inputs(d: Diagram, records: Iterable[tuple[int, int, Clifford]]) -> Diagram:
    records = tuple(records)
    if d.inputs:
        raise RewriteError("diagram already has inputs")
    k = len(records)
    if d.outputs[:k] != tuple(r[1] for r in records):
        raise RewriteError("bent wires are not the leading outputs")
    adj = {v: set(w) for v, w in d.graph.adj.items()}
    outs = dict(d.output_cliffords)
    for v, vb, c in records:
        if adj[vb] != {v}:
            raise RewriteError(f"bent vertex {vb} must have exactly the neighbour {v}")
        if outs[vb] != c.transpose() @ H:
            raise RewriteError(f"bent vertex {vb} carries the wrong Clifford")
        del adj[vb]
        adj[v].discard(vb)
        del outs[vb]
    g = LabelledOpenGraph(adj, tuple(r[0] for r in records), d.outputs[k:], d.graph.labels)
    return Diagram(g, d.effects, outs, {v: c for v, _, c in records})


def relabel(d: Diagram, mapping: Mapping[int, int]) -> Diagram:
    if set(mapping) != set(d.vertices) or len(set(mapping.values())) != len(mapping):
        raise RewriteError("relabelling must be a bijection on the vertex set")
    m = dict(mapping)
    adj = {m[v]: {m[w] for w in ns} for v, ns in d.graph.adj.items()}
    effects = {m[v]: e for v, e in d.effects.items()}
    g = LabelledOpenGraph(adj, tuple(m[v] for v in d.inputs), tuple(m[v] for v in d.outputs),
                          {v: e.basis for v, e in effects.items()})
    return Diagram(g, effects, {m[v]: c for v, c in d.output_cliffords.items()},
                   {m[v]: c for v, c in d.input_cliffords.items()})


# -- trace steps -------------------------------------------------------------

@dataclass(frozen=True)
class LC:
    vertex: int
    kind = "lc"


@dataclass(frozen=True)
class Pivot:
    u: int
    v: int
    kind = "pivot"


@dataclass(frozen=True)
class ZDelete:
    vertex: int
    neighbours: tuple[int, ...]
    sign: int
    kind = "zdelete"


@dataclass(frozen=True)
class ZInsert:
    vertex: int
    neighbours: tuple[int, ...]
    sign: int
    kind = "zinsert"


@dataclass(frozen=True)
class Bend:
    """Map-state duality: records ``(input, new vertex, input Clifford)``."""

    records: tuple[tuple[int, int, Clifford], ...]
    kind = "bend"


@dataclass(frozen=True)
class Unbend:
    records: tuple[tuple[int, int, Clifford], ...]
    kind = "unbend"


@dataclass(frozen=True)
class Relabel:
    mapping: tuple[tuple[int, int], ...]
    kind = "relabel"


RewriteStep = LC | Pivot | ZDelete | ZInsert | Bend | Unbend | Relabel
FLOW_REWRITES = (LC, Pivot, ZDelete, ZInsert)


def is_annotation(step: RewriteStep) -> bool:
    """True for decoration-level steps that do not touch the open graph's flow."""
    return isinstance(step, (Bend, Unbend, Relabel))


def apply_step(d: Diagram, step: RewriteStep) -> Diagram:
    if isinstance(step, LC):
        return lc_rewrite(d, step.vertex)
    if isinstance(step, Pivot):
        return pivot_rewrite(d, step.u, step.v)
    if isinstance(step, ZDelete):
        e = _check_deletable(d, step.vertex)
        if tuple(sorted(d.neighbours(step.vertex))) != tuple(sorted(step.neighbours)) or e.sign != step.sign:
            raise RewriteError(f"recorded deletion of {step.vertex} does not match the diagram")
        return z_delete(d, step.vertex)
    if isinstance(step, ZInsert):
        return z_insert(d, step.neighbours, step.sign, vertex=step.vertex)[0]
    if isinstance(step, Bend):
        out, records = bend_inputs(d)
        if records != step.records:
            raise RewriteError("recorded bend does not match the diagram")
        return out
    if isinstance(step, Unbend):
        return unbend_inputs(d, step.records)
    if isinstance(step, Relabel):
        return relabel(d, dict(step.mapping))
    raise TypeError(f"unknown step {step!r}")


def apply_trace(d: Diagram, steps: Iterable[RewriteStep]) -> Diagram:
    for s in steps:
        d = apply_step(d, s)
    return d


def inverse(step: RewriteStep) -> list[RewriteStep]:
    """Steps undoing ``step`` exactly (decorations included)."""
    if isinstance(step, LC):
        return [step, step, step]
    if isinstance(step, Pivot):
        return [step]
    if isinstance(step, ZDelete):
        return [ZInsert(step.vertex, step.neighbours, step.sign)]
    if isinstance(step, ZInsert):
        return [ZDelete(step.vertex, step.neighbours, step.sign)]
    if isinstance(step, Bend):
        return [Unbend(step.records)]
    if isinstance(step, Unbend):
        return [Bend(step.records)]
    if isinstance(step, Relabel):
        return [Relabel(tuple(sorted((b, a) for a, b in step.mapping)))]
    raise TypeError(f"unknown step {step!r}")


def inverse_trace(steps: Iterable[RewriteStep]) -> list[RewriteStep]:
    out: list[RewriteStep] = []
    for s in reversed(list(steps)):
        out.extend(inverse(s))
    return out


def step_for(d: Diagram, kind: str, *args) -> RewriteStep:
    """Build the trace step for applying ``kind`` to ``d`` (records deletion data)."""
    if kind == "lc":
        return LC(*args)
    if kind == "pivot":
        return Pivot(*args)
    if kind == "zdelete":
        (u,) = args
        e = _check_deletable(d, u)
        return ZDelete(u, tuple(sorted(d.neighbours(u))), e.sign)
    if kind == "zinsert":
        ws, sign = args
        return ZInsert(fresh_vertex(d), tuple(sorted(ws)), sign)
    raise ValueError(kind)
