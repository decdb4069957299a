"""Labelled open graphs and MBQC+LC form diagrams.

A :class:`LabelledOpenGraph` is the combinatorial part only (graph, inputs,
outputs, measurement labels) and is what the flow code reads.  A
:class:`Diagram` adds the concrete stabilizer decorations: a Pauli effect on
every measured vertex and a local Clifford on every input and output wire.
Graph edges are Hadamard edges (CZ entanglers).
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

from .clifford import Clifford, Effect

LABELS = ("X", "Y", "Z", "XY", "XZ", "YZ")
PAULI_LABELS = ("X", "Y", "Z")


class UnknownVertexError(KeyError):
    pass


def _freeze_adj(adj: Mapping[int, Iterable[int]]) -> Mapping[int, frozenset[int]]:
    return MappingProxyType({v: frozenset(ns) for v, ns in sorted(adj.items())})


@dataclass(frozen=True, eq=False)
class LabelledOpenGraph:
    adj: Mapping[int, frozenset[int]]
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    labels: Mapping[int, str]

    def __post_init__(self):
        object.__setattr__(self, "adj", _freeze_adj(self.adj))
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "labels", MappingProxyType(dict(sorted(self.labels.items()))))
        verts = set(self.adj)
        for v, ns in self.adj.items():
            if v in ns:
                raise ValueError(f"self-loop at {v}")
            for w in ns:
                if w not in verts or v not in self.adj[w]:
                    raise ValueError(f"adjacency not symmetric at edge ({v}, {w})")
        for name, group in (("input", self.inputs), ("output", self.outputs)):
            if len(set(group)) != len(group):
                raise ValueError(f"repeated {name}")
            if not set(group) <= verts:
                raise ValueError(f"unknown {name} vertex")
        measured = verts - set(self.outputs)
        if set(self.labels) != measured:
            raise ValueError("labels must be defined exactly on non-output vertices")
        bad = {v: lab for v, lab in self.labels.items() if lab not in LABELS}
        if bad:
            raise ValueError(f"unknown labels {bad}")

    @classmethod
    def from_edges(cls, vertices: Iterable[int], edges: Iterable[tuple[int, int]],
                   inputs: Iterable[int], outputs: Iterable[int], labels: Mapping[int, str]) -> LabelledOpenGraph:
        adj: dict[int, set[int]] = {v: set() for v in vertices}
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(adj, tuple(inputs), tuple(outputs), labels)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.adj)

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u, ns in self.adj.items() for v in ns if u < v)

    @property
    def measured(self) -> frozenset[int]:
        return frozenset(self.labels)

    def neighbours(self, v: int) -> frozenset[int]:
        try:
            return self.adj[v]
        except KeyError:
            raise UnknownVertexError(v) from None

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbours(u)

    def with_adj(self, adj: Mapping[int, Iterable[int]], labels: Mapping[int, str] | None = None) -> LabelledOpenGraph:
        return LabelledOpenGraph(adj, self.inputs, self.outputs, self.labels if labels is None else labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabelledOpenGraph):
            return NotImplemented
        return (dict(self.adj) == dict(other.adj) and self.inputs == other.inputs
                and self.outputs == other.outputs and dict(self.labels) == dict(other.labels))

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.edges)), tuple(sorted(self.adj)), self.inputs, self.outputs))


def odd_neighbourhood(g: LabelledOpenGraph, subset: Iterable[int]) -> frozenset[int]:
    """Vertices with an odd number of neighbours in ``subset``."""
    odd: set[int] = set()
    for s in subset:
        odd.symmetric_difference_update(g.neighbours(s))
    return frozenset(odd)


def _toggle(adj: dict[int, set[int]], a: int, b: int) -> None:
    if b in adj[a]:
        adj[a].discard(b)
        adj[b].discard(a)
    else:
        adj[a].add(b)
        adj[b].add(a)


def local_complement(g: LabelledOpenGraph, u: int) -> LabelledOpenGraph:
    """``G * u``: toggle every edge between two distinct neighbours of ``u``."""
    ns = sorted(g.neighbours(u))
    adj = {v: set(w) for v, w in g.adj.items()}
    for i, b in enumerate(ns):
        for c in ns[i + 1:]:
            _toggle(adj, b, c)
    return g.with_adj(adj)


def pivot(g: LabelledOpenGraph, u: int, v: int) -> LabelledOpenGraph:
    """``G ^ uv`` via the three-class characterization, then swapping ``u`` and ``v``."""
    if not g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")
    nu, nv = g.neighbours(u), g.neighbours(v)
    only_u = sorted(nu - nv - {v})
    only_v = sorted(nv - nu - {u})
    common = sorted(nu & nv)
    adj = {w: set(ns) for w, ns in g.adj.items()}
    for a_set, b_set in ((only_u, only_v), (only_u, common), (only_v, common)):
        for a in a_set:
            for b in b_set:
                _toggle(adj, a, b)
    # exchange the roles of u and v (their mutual edge stays)
    adj[u] = (adj[u] - nu) | (nv - {u}) | {v}
    adj[v] = (adj[v] - nv) | (nu - {v}) | {u}
    for w in only_u:
        adj[w].discard(u)
        adj[w].add(v)
    for w in only_v:
        adj[w].discard(v)
        adj[w].add(u)
    return g.with_adj(adj)


def pivot_via_local_complements(g: LabelledOpenGraph, u: int, v: int) -> LabelledOpenGraph:
    if not g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")
    return local_complement(local_complement(local_complement(g, u), v), u)


@dataclass(frozen=True, eq=False)
class Diagram:
    """Stabilizer MBQC+LC form diagram.

    ``effects`` holds the Pauli effect of every measured vertex; its bases
    define the graph labels.  ``output_cliffords`` / ``input_cliffords`` map
    each output / input vertex to the local Clifford on that wire (identity
    entries may be omitted).  Input Cliffords act on the incoming wire before
    it enters the vertex.
    """

    graph: LabelledOpenGraph
    effects: Mapping[int, Effect]
    output_cliffords: Mapping[int, Clifford] = field(default_factory=dict)
    input_cliffords: Mapping[int, Clifford] = field(default_factory=dict)

    def __post_init__(self):
        g = self.graph
        effects = dict(sorted(self.effects.items()))
        if set(effects) != set(g.labels):
            raise ValueError("effects must be given exactly for the measured vertices")
        for v, e in effects.items():
            if g.labels[v] != e.basis:
                raise ValueError(f"label of {v} is {g.labels[v]} but effect basis is {e.basis}")
        outs = {v: self.output_cliffords.get(v, Clifford.identity()) for v in g.outputs}
        ins = {v: self.input_cliffords.get(v, Clifford.identity()) for v in g.inputs}
        if set(self.output_cliffords) - set(g.outputs):
            raise ValueError("output Clifford on a non-output vertex")
        if set(self.input_cliffords) - set(g.inputs):
            raise ValueError("input Clifford on a non-input vertex")
        object.__setattr__(self, "effects", MappingProxyType(effects))
        object.__setattr__(self, "output_cliffords", MappingProxyType(dict(sorted(outs.items()))))
        object.__setattr__(self, "input_cliffords", MappingProxyType(dict(sorted(ins.items()))))

    @classmethod
    def build(cls, vertices: Iterable[int], edges: Iterable[tuple[int, int]], *,
              inputs: Iterable[int] = (), outputs: Iterable[int] = (),
              effects: Mapping[int, Effect] | None = None,
              output_cliffords: Mapping[int, Clifford] | None = None,
              input_cliffords: Mapping[int, Clifford] | None = None) -> Diagram:
        effects = dict(effects or {})
        labels = {v: e.basis for v, e in effects.items()}
        g = LabelledOpenGraph.from_edges(vertices, edges, inputs, outputs, labels)
        return cls(g, effects, output_cliffords or {}, input_cliffords or {})

    @property
    def vertices(self) -> frozenset[int]:
        return self.graph.vertices

    @property
    def inputs(self) -> tuple[int, ...]:
        return self.graph.inputs

    @property
    def outputs(self) -> tuple[int, ...]:
        return self.graph.outputs

    @property
    def n_wires(self) -> int:
        return len(self.inputs) + len(self.outputs)

    def neighbours(self, v: int) -> frozenset[int]:
        return self.graph.neighbours(v)

    def replace(self, graph: LabelledOpenGraph | None = None, effects: Mapping[int, Effect] | None = None,
                output_cliffords: Mapping[int, Clifford] | None = None,
                input_cliffords: Mapping[int, Clifford] | None = None) -> Diagram:
        return Diagram(
            self.graph if graph is None else graph,
            self.effects if effects is None else effects,
            self.output_cliffords if output_cliffords is None else output_cliffords,
            self.input_cliffords if input_cliffords is None else input_cliffords,
        )

    def interior(self) -> frozenset[int]:
        return self.vertices - set(self.inputs) - set(self.outputs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Diagram):
            return NotImplemented
        return (self.graph == other.graph and dict(self.effects) == dict(other.effects)
                and dict(self.output_cliffords) == dict(other.output_cliffords)
                and dict(self.input_cliffords) == dict(other.input_cliffords))

    def __hash__(self) -> int:
        return hash(self.graph)

    def __repr__(self) -> str:
        return (f"Diagram(vertices={sorted(self.vertices)}, edges={sorted(self.graph.edges)}, "
                f"inputs={self.inputs}, outputs={self.outputs})")
