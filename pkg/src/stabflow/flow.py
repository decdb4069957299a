"""Pauli flow: verification, a layered GF(2) finder, and a brute-force oracle.

A flow is a correction-set map ``p`` on the measured vertices together with a
strict partial order.  The order is stored as a set of forced pairs
``(u, v)`` meaning ``u`` precedes ``v``; the transitive closure is computed
on first use and cached.

Condition 3 is read with ``v != u`` by default.  Read literally (``v = u``
allowed) it clashes with condition 9 for every Y-measured vertex, since the
order is irreflexive; ``literal_condition3=True`` applies that reading so the
discrepancy can be observed.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product
from types import MappingProxyType

from .gf2 import BitMatrix, InconsistentSystemError, rref
from .graph import LabelledOpenGraph, odd_neighbourhood

N_CONDITIONS = 9


class MalformedFlowError(ValueError):
    """The flow does not have the right shape for the graph."""


class OracleLimitError(ValueError):
    pass


@dataclass(frozen=True)
class FlowViolation:
    u: int
    condition: int
    witness: int

    def __str__(self) -> str:
        return f"violation u={self.u} condition={self.condition} witness={self.witness}"


@dataclass(frozen=True, eq=False)
class PauliFlow:
    p: Mapping[int, frozenset[int]]
    order: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "p", MappingProxyType({u: frozenset(s) for u, s in sorted(self.p.items())}))
        object.__setattr__(self, "order", frozenset((int(a), int(b)) for a, b in self.order))

    @cached_property
    def successors(self) -> Mapping[int, frozenset[int]]:
        """Transitive closure: ``successors[u]`` is every ``v`` with ``u < v``."""
        direct: dict[int, set[int]] = {}
        for a, b in self.order:
            direct.setdefault(a, set()).add(b)
            direct.setdefault(b, set())
        closure: dict[int, frozenset[int]] = {}
        state: dict[int, int] = {}

        def visit(v: int) -> frozenset[int]:
            if state.get(v) == 2:
                return closure[v]
            if state.get(v) == 1:
                raise MalformedFlowError(f"order has a cycle through {v}")
            state[v] = 1
            acc: set[int] = set()
            for w in direct[v]:
                acc.add(w)
                acc |= visit(w)
            state[v] = 2
            closure[v] = frozenset(acc)
            return closure[v]

        for v in sorted(direct):
            visit(v)
        return MappingProxyType(closure)

    def precedes(self, u: int, v: int) -> bool:
        return v in self.successors.get(u, ())

    def is_acyclic(self) -> bool:
        try:
            self.successors
        except MalformedFlowError:
            return False
        return True

    def to_json(self) -> dict:
        return {
            "p": {str(u): sorted(s) for u, s in self.p.items()},
            "order": sorted([a, b] for a, b in self.order),
        }

    @classmethod
    def from_json(cls, data: dict) -> PauliFlow:
        return cls({int(u): frozenset(s) for u, s in data["p"].items()},
                   frozenset(tuple(pair) for pair in data.get("order", [])))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliFlow):
            return NotImplemented
        return dict(self.p) == dict(other.p) and self.order == other.order

    def __hash__(self) -> int:
        return hash((tuple(self.p.items()), self.order))


def check_shape(g: LabelledOpenGraph, f: PauliFlow) -> None:
    if set(f.p) != set(g.measured):
        raise MalformedFlowError("correction sets must be given exactly for the non-output vertices")
    inputs = set(g.inputs)
    for u, s in f.p.items():
        if not s <= g.vertices:
            raise MalformedFlowError(f"p({u}) mentions unknown vertices")
        if s & inputs:
            raise MalformedFlowError(f"p({u}) contains an input")
    for a, b in f.order:
        if a not in g.vertices or b not in g.vertices:
            raise MalformedFlowError(f"order mentions unknown vertex in ({a}, {b})")
    if not f.is_acyclic():
        raise MalformedFlowError("order is not a strict partial order")


def _self_conditions(label: str, in_p: bool, in_odd: bool) -> list[int]:
    """Failed conditions among 4-9 for vertex ``u`` itself."""
    failed = []
    if label == "XY" and not (not in_p and in_odd):
        failed.append(4)
    if label == "XZ" and not (in_p and in_odd):
        failed.append(5)
    if label == "YZ" and not (in_p and not in_odd):
        failed.append(6)
    if label == "X" and not in_odd:
        failed.append(7)
    if label == "Z" and not in_p:
        failed.append(8)
    if label == "Y" and in_p == in_odd:
        failed.append(9)
    return failed


def violations(g: LabelledOpenGraph, f: PauliFlow, *, literal_condition3: bool = False) -> list[FlowViolation]:
    """Every violated ``(u, condition, witness)``, in reporting order."""
    check_shape(g, f)
    lab = g.labels
    out: list[FlowViolation] = []
    for u in sorted(g.measured):
        pu = f.p[u]
        odd = odd_neighbourhood(g, pu)
        found: list[FlowViolation] = []
        for v in sorted(pu):
            if v != u and lab.get(v) not in ("X", "Y") and not f.precedes(u, v):
                found.append(FlowViolation(u, 1, v))
        for v in sorted(odd):
            if v != u and lab.get(v) not in ("Y", "Z") and not f.precedes(u, v):
                found.append(FlowViolation(u, 2, v))
        for v in sorted(g.measured):
            if v == u and not literal_condition3:
                continue
            if lab[v] == "Y" and not f.precedes(u, v) and ((v in pu) != (v in odd)):
                found.append(FlowViolation(u, 3, v))
        found += [FlowViolation(u, c, u) for c in _self_conditions(lab[u], u in pu, u in odd)]
        out += sorted(found, key=lambda x: (x.condition, x.witness))
    return out


def verify_flow(g: LabelledOpenGraph, f: PauliFlow, *, literal_condition3: bool = False) -> FlowViolation | None:
    """``None`` if ``f`` is a Pauli flow for ``g``, else the first violation.

    Raises :class:`MalformedFlowError` when ``f`` does not fit ``g`` at all.
    """
    found = violations(g, f, literal_condition3=literal_condition3)
    return found[0] if found else None


def _correction_system(g: LabelledOpenGraph, u: int, done: set[int]):
    """Linear system for ``p(u)`` when the vertices in ``done`` are already corrected.

    Returns ``(candidates, rows, rhs)``: the unknowns are membership bits of
    the candidates in ``p(u)``.
    """
    lab = g.labels
    inputs = set(g.inputs)
    cands = []
    for v in sorted(g.vertices):
        if v in inputs:
            continue
        if v == u or v in done or lab.get(v) in ("X", "Y"):
            cands.append(v)
    col = {v: i for i, v in enumerate(cands)}

    def odd_row(w: int) -> int:
        row = 0
        for v in g.neighbours(w):
            if v in col:
                row |= 1 << col[v]
        return row

    def p_row(w: int) -> int:
        return 1 << col[w] if w in col else 0

    rows: list[int] = []
    rhs: list[int] = []
    for v in sorted(g.measured):
        if v == u or v in done:
            continue
        if lab[v] == "Y":
            rows.append(odd_row(v) ^ p_row(v))
            rhs.append(0)
        elif lab[v] != "Z":
            rows.append(odd_row(v))
            rhs.append(0)
    label = lab[u]
    need_p = {"XY": 0, "XZ": 1, "YZ": 1, "Z": 1}.get(label)
    need_odd = {"XY": 1, "XZ": 1, "YZ": 0, "X": 1}.get(label)
    if need_p is not None:
        rows.append(p_row(u))
        rhs.append(need_p)
    if need_odd is not None:
        rows.append(odd_row(u))
        rhs.append(need_odd)
    if label == "Y":
        rows.append(odd_row(u) ^ p_row(u))
        rhs.append(1)
    return cands, rows, rhs


def _solve(n_cols: int, rows: list[int], rhs: list[int]) -> int | None:
    """One solution (free variables zero) as a bitmask over columns, or ``None``."""
    matrix = BitMatrix(rows, n_cols)
    try:
        res = rref(matrix, rhs)
    except InconsistentSystemError:
        return None
    sol = 0
    for r, piv in enumerate(res.pivots):
        if res.rhs[r]:
            sol |= 1 << (piv - 1)
    return sol


def find_flow(g: LabelledOpenGraph) -> PauliFlow | None:
    """A Pauli flow for ``g`` or ``None``; deterministic.

    Works backwards from the outputs in maximal layers: a vertex joins the
    next layer when a correction set exists using only vertices already
    corrected, itself, and X/Y-measured vertices (subject to the conditions
    that constrain vertices not yet known to come later).
    """
    done = set(g.outputs)
    todo = set(g.measured)
    p: dict[int, frozenset[int]] = {}
    order: set[tuple[int, int]] = set()
    previous = set(g.outputs)
    while todo:
        layer: dict[int, frozenset[int]] = {}
        for u in sorted(todo):
            cands, rows, rhs = _correction_system(g, u, done)
            sol = _solve(len(cands), rows, rhs)
            if sol is not None:
                layer[u] = frozenset(v for i, v in enumerate(cands) if sol >> i & 1)
        if not layer:
            return None
        for u, s in layer.items():
            p[u] = s
            order.update((u, v) for v in previous)
        previous = set(layer)
        done |= previous
        todo -= previous
    flow = PauliFlow(p, frozenset(order))
    if verify_flow(g, flow) is not None:
        raise AssertionError("layered construction produced an invalid flow")
    return flow


def _forced_targets(g: LabelledOpenGraph, u: int, s: frozenset[int], literal_condition3: bool) -> frozenset[int] | None:
    """Vertices that must succeed ``u`` when ``p(u) = s``; ``None`` if a self condition fails."""
    odd = odd_neighbourhood(g, s)
    lab = g.labels
    if _self_conditions(lab[u], u in s, u in odd):
        return None
    forced = {v for v in s if v != u and lab.get(v) not in ("X", "Y")}
    forced |= {v for v in odd if v != u and lab.get(v) not in ("Y", "Z")}
    forced |= {v for v in g.measured if lab[v] == "Y" and (v != u or literal_condition3) and (v in s) != (v in odd)}
    return frozenset(forced)


def brute_force_flow_exists(g: LabelledOpenGraph, *, max_measured: int = 5, max_noninputs: int = 8,
                            literal_condition3: bool = False) -> bool:
    """Exhaustive existence check, independent of :func:`find_flow`.

    Every subset of ``V \\ I`` is tried as a correction set for every measured
    vertex; the forced successors from conditions 1-3 are kept only when
    inclusion-minimal (a superset of forced successors is never easier to
    order), and then all combinations are tested for acyclicity.
    """
    measured = sorted(g.measured)
    free = sorted(g.vertices - set(g.inputs))
    if len(measured) > max_measured or len(free) > max_noninputs:
        raise OracleLimitError(f"graph too large for the oracle ({len(measured)} measured, {len(free)} non-inputs)")
    options: list[list[frozenset[int]]] = []
    mset = set(measured)
    for u in measured:
        found: set[frozenset[int]] = set()
        for mask in range(1 << len(free)):
            s = frozenset(v for i, v in enumerate(free) if mask >> i & 1)
            forced = _forced_targets(g, u, s, literal_condition3)
            if forced is None:
                continue
            if u in forced:
                continue
            # successors that are outputs can never close a cycle
            found.add(forced & mset)
        minimal = [a for a in found if not any(b < a for b in found)]
        if not minimal:
            return False
        options.append(sorted(minimal, key=sorted))
    for choice in product(*options):
        edges = {u: t for u, t in zip(measured, choice)}
        if _acyclic(edges):
            return True
    return False


def _acyclic(edges: Mapping[int, Iterable[int]]) -> bool:
    indeg = {v: 0 for v in edges}
    for ts in edges.values():
        for t in ts:
            indeg[t] += 1
    stack = [v for v, d in indeg.items() if d == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for t in edges[v]:
            indeg[t] -= 1
            if indeg[t] == 0:
                stack.append(t)
    return seen == len(indeg)


def permutation_flow_exists(g: LabelledOpenGraph) -> bool:
    """Second oracle: some linear order of the measured vertices admits correction sets."""
    measured = sorted(g.measured)
    free = sorted(g.vertices - set(g.inputs))
    subsets = [frozenset(v for i, v in enumerate(free) if m >> i & 1) for m in range(1 << len(free))]
    forced = {u: [t for s in subsets if (t := _forced_targets(g, u, s, False)) is not None] for u in measured}
    mset = set(measured)
    for perm in permutations(measured):
        pos = {u: i for i, u in enumerate(perm)}
        if all(any(all(v not in mset or pos[v] > pos[u] for v in t) for t in forced[u]) for u in measured):
            return True
    return False


def z_insert_flow_update(f: PauliFlow, x: int, w: Iterable[int]) -> PauliFlow:
    """Flow after inserting Z-measured ``x`` joined to ``w``: ``p(x) = {x}``, ``x`` before ``w``."""
    if x in f.p:
        raise ValueError(f"vertex {x} already has a correction set")
    p = dict(f.p)
    p[x] = frozenset({x})
    return PauliFlow(p, f.order | {(x, v) for v in w})
