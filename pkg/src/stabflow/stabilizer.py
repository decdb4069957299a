"""Stabilizer states as (affine support, phase polynomial) pairs, and
phase-polynomial form diagrams.

Qubit ``j`` (1-based) is variable ``x_j``; ``x_1`` is the most significant
bit of an amplitude index.  A phase polynomial
``p(x) = sum r_j x_j + 2 sum s_jk x_j x_k`` is evaluated mod 4 and gives the
amplitude ``i**p(x)`` on the support.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from itertools import combinations
from types import MappingProxyType

import numpy as np

from .clifford import Clifford, H
from .gf2 import AffineSpace, canonical_free_vars, dependency_table, enumerate_points, pack_bits, unpack_index
from .graph import Diagram
from .semantics import evaluate as evaluate_mbqc
from .tensor import DEFAULT_WIRE_LIMIT, ExactState, SizeLimitError, ZXNetwork, evaluate_network

_UNITS = ((1, 0), (0, 1), (-1, 0), (0, -1))  # i**k as (re, im)


class NotStabilizerError(ValueError):
    pass


class MalformedDiagramError(ValueError):
    pass


@dataclass(frozen=True)
class PhasePolynomial:
    """``free`` (1-based, ascending), ``linear[j] = r_j`` in Z4, ``quadratic`` = pairs with ``s_jk = 1``."""

    free: tuple[int, ...]
    linear: Mapping[int, int]
    quadratic: frozenset[tuple[int, int]]

    def __post_init__(self):
        free = tuple(sorted(self.free))
        object.__setattr__(self, "free", free)
        lin = {j: int(self.linear.get(j, 0)) % 4 for j in free}
        if set(self.linear) - set(free):
            raise ValueError("linear coefficient on a non-free variable")
        object.__setattr__(self, "linear", MappingProxyType(lin))
        quad = frozenset((min(a, b), max(a, b)) for a, b in self.quadratic)
        for a, b in quad:
            if a == b or a not in free or b not in free:
                raise ValueError(f"bad quadratic term ({a}, {b})")
        object.__setattr__(self, "quadratic", quad)

    @classmethod
    def zero(cls, free: Iterable[int]) -> PhasePolynomial:
        return cls(tuple(free), {}, frozenset())

    def evaluate(self, x: tuple[int, ...]) -> int:
        """``p(x) mod 4`` for a full assignment ``x`` (``x[j-1]`` is ``x_j``)."""
        total = sum(r * x[j - 1] for j, r in self.linear.items())
        total += 2 * sum(x[a - 1] * x[b - 1] for a, b in self.quadratic)
        return total % 4

    def to_lq(self) -> tuple[dict[int, int], dict[int, int], frozenset[tuple[int, int]]]:
        """``(d, c, c2)``: ``i**l(x) * (-1)**q(x)`` form with ``l = sum d_j x_j`` and
        ``q = sum c_j x_j + sum c_jk x_j x_k`` (all mod 2)."""
        d = {j: r % 2 for j, r in self.linear.items()}
        c = {j: (r - d[j]) // 2 for j, r in self.linear.items()}
        c2 = set()
        for a, b in combinations(self.free, 2):
            if ((a, b) in self.quadratic) ^ (d[a] & d[b]):
                c2.add((a, b))
        return d, c, frozenset(c2)

    @classmethod
    def from_lq(cls, free: Iterable[int], d: Mapping[int, int], c: Mapping[int, int],
                c2: Iterable[tuple[int, int]]) -> PhasePolynomial:
        free = tuple(sorted(free))
        c2 = {(min(a, b), max(a, b)) for a, b in c2}
        lin = {j: (d.get(j, 0) % 2) + 2 * (c.get(j, 0) % 2) for j in free}
        quad = {(a, b) for a, b in combinations(free, 2)
                if ((a, b) in c2) ^ ((d.get(a, 0) & d.get(b, 0)) % 2 == 1)}
        return cls(free, lin, frozenset(quad))

    def __str__(self) -> str:
        terms = [f"{r}*x{j}" for j, r in self.linear.items() if r]
        terms += [f"2*x{a}*x{b}" for a, b in sorted(self.quadratic)]
        return " + ".join(terms) or "0"


def _lq_value(x, d, c, c2) -> tuple[int, int]:
    l_val = sum(dj * x[j - 1] for j, dj in d.items()) % 2
    q_val = (sum(cj * x[j - 1] for j, cj in c.items()) + sum(x[a - 1] * x[b - 1] for a, b in c2)) % 2
    return l_val, q_val


def lq_exponent(x, d, c, c2) -> int:
    """Exponent of ``i`` for ``i**l(x) * (-1)**q(x)``."""
    l_val, q_val = _lq_value(x, d, c, c2)
    return (l_val + 2 * q_val) % 4


# -- states <-> pairs -------------------------------------------------------

def state_from_pair(space: AffineSpace, free: Iterable[int], poly: PhasePolynomial) -> ExactState:
    free = tuple(sorted(free))
    if tuple(poly.free) != free:
        raise ValueError("polynomial is over a different free set")
    dependency_table(space, free)  # validates the free set
    n = space.n
    re = np.zeros(1 << n, dtype=np.int64)
    im = np.zeros(1 << n, dtype=np.int64)
    for x in enumerate_points(space, limit=space.n):
        k = pack_bits(x)
        re[k], im[k] = _UNITS[poly.evaluate(x)]
    return ExactState(n, re, im)


def _unit_ratio(a: tuple[int, int], b: tuple[int, int]) -> int | None:
    """k with ``a = i**k * b`` exactly, else None."""
    for k, (ur, ui) in enumerate(_UNITS):
        if (ur * b[0] - ui * b[1], ur * b[1] + ui * b[0]) == a:
            return k
    return None


def support_space(s: ExactState) -> AffineSpace:
    """Affine space equal to the support of ``s``; :class:`NotStabilizerError` otherwise."""
    if s.is_zero():
        raise NotStabilizerError("zero vector")
    pts = [unpack_index(k, s.n) for k in s.support()]
    space = AffineSpace.from_points(pts, s.n)
    if len(pts) != 1 << space.dim:
        raise NotStabilizerError("support is not an affine space")
    return space


def pair_from_state(s: ExactState, free: Iterable[int] | None = None) -> tuple[AffineSpace, PhasePolynomial]:
    """Support and the unique phase polynomial over ``free`` (canonical if omitted)."""
    space = support_space(s)
    free = canonical_free_vars(space) if free is None else tuple(sorted(free))
    table = dependency_table(space, free)
    amps = s.gaussian()

    def amp(assign: Mapping[int, int]) -> tuple[int, int]:
        return amps[pack_bits(table.point([assign.get(j, 0) for j in free]))]

    base = amp({})
    lin = {}
    for j in free:
        k = _unit_ratio(amp({j: 1}), base)
        if k is None:
            raise NotStabilizerError("amplitudes are not fourth roots of unity times a common scalar")
        lin[j] = k
    quad = set()
    for a, b in combinations(free, 2):
        k = _unit_ratio(amp({a: 1, b: 1}), base)
        if k is None:
            raise NotStabilizerError("amplitudes are not fourth roots of unity times a common scalar")
        diff = (k - lin[a] - lin[b]) % 4
        if diff == 2:
            quad.add((a, b))
        elif diff != 0:
            raise NotStabilizerError("pairwise phase is not quadratic")
    poly = PhasePolynomial(free, lin, frozenset(quad))
    for x in table.points():
        if _unit_ratio(amps[pack_bits(x)], base) != poly.evaluate(x):
            raise NotStabilizerError("amplitudes do not follow a quadratic phase polynomial")
    return space, poly


# -- phase-polynomial form diagrams ------------------------------------------

@dataclass(frozen=True)
class PhasePolyDiagram:
    """Green/red spiders ``1..n``, one output wire each.

    ``phases[j-1]`` is in quarter turns: any residue for green spiders, 0 or 2
    for red ones.  ``plain`` edges join green to red, ``hadamard`` edges join
    two greens.  Edges are stored as ascending pairs.
    """

    colours: tuple[str, ...]
    phases: tuple[int, ...]
    plain: frozenset[tuple[int, int]]
    hadamard: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "colours", tuple(self.colours))
        object.__setattr__(self, "phases", tuple(int(p) % 4 for p in self.phases))
        object.__setattr__(self, "plain", frozenset((min(a, b), max(a, b)) for a, b in self.plain))
        object.__setattr__(self, "hadamard", frozenset((min(a, b), max(a, b)) for a, b in self.hadamard))
        self.validate()

    @property
    def n(self) -> int:
        return len(self.colours)

    def validate(self) -> None:
        n = self.n
        if len(self.phases) != n:
            raise MalformedDiagramError("one phase per spider required")
        for j, (c, p) in enumerate(zip(self.colours, self.phases), 1):
            if c not in ("green", "red"):
                raise MalformedDiagramError(f"spider {j} has unknown colour {c!r}")
            if c == "red" and p not in (0, 2):
                raise MalformedDiagramError(f"red spider {j} has phase {p} quarter turns; must be 0 or pi")
        for a, b in self.plain:
            if not (1 <= a < b <= n):
                raise MalformedDiagramError(f"edge ({a}, {b}) out of range")
            if {self.colours[a - 1], self.colours[b - 1]} != {"green", "red"}:
                raise MalformedDiagramError(f"plain edge ({a}, {b}) must join a green and a red spider")
        for a, b in self.hadamard:
            if not (1 <= a < b <= n):
                raise MalformedDiagramError(f"edge ({a}, {b}) out of range")
            if self.colours[a - 1] != "green" or self.colours[b - 1] != "green":
                raise MalformedDiagramError(f"Hadamard edge ({a}, {b}) must join two green spiders")
        if self.plain & self.hadamard:
            raise MalformedDiagramError("parallel plain and Hadamard edges")

    @property
    def free(self) -> tuple[int, ...]:
        return tuple(j for j, c in enumerate(self.colours, 1) if c == "green")

    def neighbours(self, j: int) -> frozenset[int]:
        return frozenset(b if a == j else a for a, b in self.plain | self.hadamard if j in (a, b))

    def offending(self, order: tuple[int, ...] | None = None) -> int:
        """Number of red-green connections where the green spider comes later."""
        pos = _positions(self.n, order)
        return sum(1 for a, b in self.plain
                   for red, green in [(a, b) if self.colours[a - 1] == "red" else (b, a)]
                   if pos[green] > pos[red])

    def is_canonical(self, order: tuple[int, ...] | None = None) -> bool:
        return self.offending(order) == 0

    def network(self) -> ZXNetwork:
        net = ZXNetwork()
        ids = [net.add_spider("Z" if c == "green" else "X", p) for c, p in zip(self.colours, self.phases)]
        for a, b in sorted(self.plain):
            net.add_edge(ids[a - 1], ids[b - 1])
        for a, b in sorted(self.hadamard):
            net.add_edge(ids[a - 1], ids[b - 1], hadamard=True)
        for s in ids:
            net.add_boundary(s)
        return net

    def to_json(self) -> dict:
        return {
            "colours": list(self.colours),
            "phases": list(self.phases),
            "plain": sorted(list(e) for e in self.plain),
            "hadamard": sorted(list(e) for e in self.hadamard),
        }


def _positions(n: int, order: tuple[int, ...] | None) -> dict[int, int]:
    order = tuple(range(1, n + 1)) if order is None else tuple(order)
    if sorted(order) != list(range(1, n + 1)):
        raise ValueError("order must be a permutation of 1..n")
    return {q: i for i, q in enumerate(order)}


def evaluate_diagram(d: Diagram | PhasePolyDiagram, wire_limit: int = DEFAULT_WIRE_LIMIT) -> ExactState:
    if isinstance(d, PhasePolyDiagram):
        if d.n > wire_limit:
            raise SizeLimitError(f"{d.n} open wires exceeds limit {wire_limit}")
        return evaluate_network(d.network(), wire_limit)
    return evaluate_mbqc(d, wire_limit)


def diagram_from_pair(space: AffineSpace, free: Iterable[int], poly: PhasePolynomial) -> PhasePolyDiagram:
    free = tuple(sorted(free))
    table = dependency_table(space, free)
    colours, phases = [], []
    plain = set()
    for j in range(1, space.n + 1):
        if j in free:
            colours.append("green")
            phases.append(poly.linear[j])
        else:
            const, deps = table.rows[j]
            colours.append("red")
            phases.append(2 * const)
            plain |= {(k, j) for k in deps}
    return PhasePolyDiagram(tuple(colours), tuple(phases), frozenset(plain), poly.quadratic)


def diagram_from_state(s: ExactState, free: Iterable[int] | None = None) -> PhasePolyDiagram:
    space, poly = pair_from_state(s, free)
    return diagram_from_pair(space, poly.free, poly)


def pair_from_diagram(d: PhasePolyDiagram) -> tuple[AffineSpace, tuple[int, ...], PhasePolynomial]:
    """Read ``(A, F, p)`` off a phase-polynomial form diagram."""
    n = d.n
    free = d.free
    rows, rhs = [], []
    for j in range(1, n + 1):
        if d.colours[j - 1] == "red":
            row = [0] * n
            row[j - 1] = 1
            for k in d.neighbours(j):
                row[k - 1] ^= 1
            rows.append(row)
            rhs.append(d.phases[j - 1] // 2)
    space = AffineSpace(n, rows, rhs) if rows else AffineSpace.full(n)
    poly = PhasePolynomial(free, {j: d.phases[j - 1] for j in free}, d.hadamard)
    return space, free, poly


def state_from_diagram(d: PhasePolyDiagram) -> ExactState:
    space, free, poly = pair_from_diagram(d)
    return state_from_pair(space, free, poly)


def canonical_diagram(s: ExactState, order: tuple[int, ...] | None = None) -> PhasePolyDiagram:
    """The canonical diagram of ``s``, built directly from its canonical free variables.

    With a non-default qubit ``order`` the free variables are chosen by the
    ascending scan in that order.
    """
    if order is None:
        return diagram_from_state(s)
    _positions(s.n, order)
    perm = permute_state(s, order)
    space, poly = pair_from_state(perm)
    free = tuple(sorted(order[f - 1] for f in poly.free))
    return diagram_from_state(s, free)


def permute_state(s: ExactState, order: tuple[int, ...]) -> ExactState:
    """State with qubit ``order[i]`` moved to position ``i + 1``."""
    n = s.n
    re = s.re.reshape((2,) * n) if n else s.re
    im = s.im.reshape((2,) * n) if n else s.im
    axes = [q - 1 for q in order]
    return ExactState(n, np.transpose(re, axes).reshape(-1), np.transpose(im, axes).reshape(-1), s.sqrt2_exp)


# -- MBQC+LC view of phase-polynomial form -----------------------------------

def green_clifford(quarter_turns: int) -> Clifford:
    return Clifford.z(quarter_turns)


def red_clifford(half_turns: int) -> Clifford:
    """Wire Clifford of a colour-changed red spider: phase first, then H."""
    return H @ Clifford.z(2 * half_turns)


def view_phase_poly(d: Diagram, wires: tuple[int, ...] | None = None) -> PhasePolyDiagram | None:
    """Read a state diagram as a phase-polynomial form diagram, if it is one.

    The diagram must have no inputs and no measured vertices; each output
    Clifford must be a Z phase (green spider) or a Z half-turn followed by
    a Hadamard (colour-changed red spider), and no two red spiders may be
    adjacent.  Qubit ``j`` is the ``j``-th entry of ``wires`` (default: the
    output order).
    """
    if d.inputs or d.effects:
        return None
    wires = d.outputs if wires is None else wires
    index = {v: j for j, v in enumerate(wires, 1)}
    colours, phases = [], []
    for v in wires:
        c = d.output_cliffords[v]
        if c.is_diagonal:
            colours.append("green")
            phases.append(c.z_quarter_turns())
        elif (a := c.hadamard_phase()) is not None:
            colours.append("red")
            phases.append(2 * a)
        else:
            return None
    plain, had = set(), set()
    for u, v in d.graph.edges:
        a, b = sorted((index[u], index[v]))
        kinds = {colours[a - 1], colours[b - 1]}
        if kinds == {"red"}:
            return None
        (had if kinds == {"green"} else plain).add((a, b))
    return PhasePolyDiagram(tuple(colours), tuple(phases), frozenset(plain), frozenset(had))


def mbqc_from_phase_poly(pp: PhasePolyDiagram, ids: tuple[int, ...] | None = None) -> Diagram:
    """Colour-change every red spider to get the equivalent graph-state diagram."""
    ids = tuple(range(pp.n)) if ids is None else tuple(ids)
    outs = {}
    for v, c, p in zip(ids, pp.colours, pp.phases):
        outs[v] = green_clifford(p) if c == "green" else red_clifford(p // 2)
    edges = [(ids[a - 1], ids[b - 1]) for a, b in sorted(pp.plain | pp.hadamard)]
    return Diagram.build(ids, edges, outputs=ids, output_cliffords=outs)
