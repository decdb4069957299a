"""Rewriting any flowed stabilizer MBQC+LC diagram into its canonical form.

Stages, each recorded as trace steps:

1. bend the input wires round (map-state duality, an annotation step);
2. remove every measured vertex with LC / pivot / Z-deletion;
3. bring the graph-state-with-local-Cliffords diagram into rGS-LC form;
4. local complementations taking rGS-LC to phase-polynomial form;
5. the red/green exchange loop that makes the diagram canonical;
6. relabel the qubits to ``0..n-1`` in wire order (annotation).

Every rewrite in stages 2-5 is a local complementation, pivot or
Z-deletion, so Pauli flow exists after every step.

A vertex's wire Clifford ``C`` is classified by its *frame*: the axis ``A``
with ``C A C^-1 = +-Z``.  Green spiders have frame Z and colour-changed red
spiders frame X.  Local complementation about ``u`` appends ``X(pi/2)`` on
``u`` (frame Y <-> Z) and ``Z(-pi/2)`` on each neighbour (frame X <-> Y), so
frame-Z vertices stay frame Z under every step used here.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field

from .clifford import X1, Clifford
from .flow import find_flow
from .graph import Diagram
from .rewrite import (
    LC,
    Bend,
    Pivot,
    Relabel,
    RewriteError,
    RewriteStep,
    ZDelete,
    apply_step,
    bend_inputs,
    inverse_trace,
)
from .stabilizer import PhasePolyDiagram, green_clifford, mbqc_from_phase_poly, red_clifford, view_phase_poly

GREEN = frozenset(green_clifford(k) for k in range(4))
RED = frozenset(red_clifford(a) for a in (0, 1))
# reduced GS-LC vertex operators with a red node: Z(+-pi/2) then X(pi/2)
RGSLC_RED = frozenset(X1 @ Clifford.z(k) for k in (1, 3))


class NoFlowError(ValueError):
    pass


class NotEquivalentError(ValueError):
    pass


class PipelineError(AssertionError):
    """An internal invariant of the pipeline failed."""


def frame(c: Clifford) -> str:
    for axis in ("X", "Y", "Z"):
        if c.conjugate(axis)[0] == "Z":
            return axis
    raise PipelineError("unreachable")


def lc_power(c: Clifford, targets: frozenset[Clifford]) -> int:
    """The unique ``m`` in 0..3 with ``c X(pi/2)^m`` in ``targets``."""
    hits = [m for m in range(4) if c @ X1 ** m in targets]
    if len(hits) != 1:
        raise PipelineError(f"{c} has {len(hits)} representatives")
    return hits[0]


@dataclass
class Run:
    """A diagram being rewritten, with its trace and an optional per-step hook."""

    diagram: Diagram
    steps: list[RewriteStep] = field(default_factory=list)
    hook: Callable[[Diagram, RewriteStep], None] | None = None

    def do(self, step: RewriteStep) -> Diagram:
        self.diagram = apply_step(self.diagram, step)
        self.steps.append(step)
        if self.hook is not None:
            self.hook(self.diagram, step)
        return self.diagram

    def lc(self, u: int, times: int = 1) -> None:
        for _ in range(times % 4):
            self.do(LC(u))

    def zdelete(self, u: int) -> None:
        d = self.diagram
        self.do(ZDelete(u, tuple(sorted(d.neighbours(u))), d.effects[u].sign))


def _interior_step(run: Run) -> bool:
    d = run.diagram
    candidates = sorted(v for v in d.effects if v not in d.inputs)
    if not candidates:
        return False
    for v in candidates:
        if d.effects[v].basis == "Z":
            run.zdelete(v)
            return True
    ys = [v for v in candidates if d.effects[v].basis == "Y"]
    if ys:
        u = ys[0]
        run.lc(u)
        if run.diagram.effects[u].basis != "Z":
            raise PipelineError("local complementation did not turn Y into Z")
        return True
    u = candidates[0]
    ns = [w for w in d.neighbours(u) if w not in d.inputs]
    if not ns:
        raise NoFlowError(f"X-measured vertex {u} has no non-input neighbour")
    outputs = set(d.outputs)
    w = min(ns, key=lambda v: (v not in outputs, v))
    run.do(Pivot(u, w))
    if run.diagram.effects[u].basis != "Z":
        raise PipelineError("pivot did not turn X into Z")
    return True


def eliminate_interior(d: Diagram, hook=None) -> tuple[Diagram, list[RewriteStep]]:
    """Remove every measured non-input vertex.

    Z-measured vertices are deleted first; a Y-measured vertex is turned
    into Z by complementing about it, an X-measured one by pivoting with a
    neighbour (outputs first).
    """
    run = Run(d, hook=hook)
    while _interior_step(run):
        pass
    return run.diagram, run.steps


def _require_gslc(d: Diagram) -> None:
    if d.inputs or d.effects:
        raise RewriteError("expected a state diagram with every vertex an output")


def to_rgslc(d: Diagram, hook=None) -> tuple[Diagram, list[RewriteStep]]:
    """Local complementations into rGS-LC form.

    Frame-Y vertices are complemented about (becoming frame Z) and edges
    joining two frame-X vertices are pivoted (both become frame Z); each step
    increases the number of frame-Z vertices.  Then each frame-X vertex is
    rotated onto a red rGS-LC operator and each frame-Z vertex onto a Z phase.
    """
    _require_gslc(d)
    run = Run(d, hook=hook)
    while True:
        d = run.diagram
        frames = {v: frame(c) for v, c in d.output_cliffords.items()}
        ys = sorted(v for v, f in frames.items() if f == "Y")
        if ys:
            run.lc(ys[0])
            continue
        xx = sorted((u, v) for u, v in d.graph.edges if frames[u] == frames[v] == "X")
        if xx:
            run.do(Pivot(*xx[0]))
            continue
        break
    for v in sorted(run.diagram.outputs):
        c = run.diagram.output_cliffords[v]
        if frame(c) == "X":
            run.lc(v, lc_power(c, RGSLC_RED))
    for v in sorted(run.diagram.outputs):
        c = run.diagram.output_cliffords[v]
        if frame(c) == "Z" and c not in GREEN:
            run.lc(v, 2)
    if not is_rgslc(run.diagram):
        raise PipelineError("rGS-LC reduction failed")
    return run.diagram, run.steps


def is_rgslc(d: Diagram) -> bool:
    if d.inputs or d.effects:
        return False
    cs = d.output_cliffords
    if any(c not in GREEN and c not in RGSLC_RED for c in cs.values()):
        return False
    return not any(cs[u] in RGSLC_RED and cs[v] in RGSLC_RED for u, v in d.graph.edges)


def rgslc_to_phasepoly(d: Diagram, hook=None) -> tuple[Diagram, list[RewriteStep]]:
    """Complement about every qubit with a red node.

    ``X(pi/2) Z(pi/2)`` needs one complementation to become a Hadamard;
    ``X(pi/2) Z(-pi/2)`` needs three (an inverse complementation) to become
    a Hadamard after a Z half-turn.  The result is phase-polynomial form up
    to colour-changing the Hadamard qubits; see :func:`view_phase_poly`.
    """
    if not is_rgslc(d):
        raise RewriteError("diagram is not in rGS-LC form")
    run = Run(d, hook=hook)
    for v in sorted(d.outputs):
        c = run.diagram.output_cliffords[v]
        if c in RGSLC_RED:
            run.lc(v, lc_power(c, RED))
    if view_phase_poly(run.diagram) is None:
        raise PipelineError("phase-polynomial conversion failed")
    return run.diagram, run.steps


def _exchange(run: Run, red: int, green: int) -> None:
    """Swap the colours of adjacent ``red`` and ``green`` vertices.

    With our orientation of local complementation the swapped pair can land
    an X half-turn away from the target operators; a double complementation
    (graph unchanged, Z half-turns on neighbours) fixes that.
    """
    c = run.diagram.output_cliffords[green]
    if c.z_quarter_turns() % 2:
        run.lc(green)
        run.lc(red)
    else:
        run.do(Pivot(green, red))
    for v, targets in ((green, RED), (red, GREEN)):
        if run.diagram.output_cliffords[v] not in targets:
            run.lc(v, 2)


def _offending(pp: PhasePolyDiagram, pos: dict[int, int]) -> list[tuple[int, int]]:
    """(red, green) connections with the green spider later in the order."""
    out = []
    for a, b in pp.plain:
        red, green = (a, b) if pp.colours[a - 1] == "red" else (b, a)
        if pos[green] > pos[red]:
            out.append((red, green))
    return out


def canonicalize_phase_poly_view(d: Diagram, order: tuple[int, ...] | None = None, hook=None,
                                 on_iteration: Callable[[int, int], None] | None = None,
                                 ) -> tuple[Diagram, list[RewriteStep]]:
    """Red/green exchange loop on a diagram in (colour-changed) phase-polynomial form.

    Qubit ``j`` is the ``j``-th output.  ``order`` lists the qubits from
    first to last (default ``1..n``).  ``on_iteration(before, after)``
    receives the offending-connection counts of each iteration.
    """
    wires = d.outputs
    n = len(wires)
    order = tuple(range(1, n + 1)) if order is None else tuple(order)
    if sorted(order) != list(range(1, n + 1)):
        raise ValueError("order must be a permutation of 1..n")
    pos = {q: i for i, q in enumerate(order)}
    run = Run(d, hook=hook)
    pp = view_phase_poly(d)
    if pp is None:
        raise RewriteError("diagram is not in phase-polynomial form")
    while True:
        bad = _offending(pp, pos)
        if not bad:
            return run.diagram, run.steps
        red = min((r for r, _ in bad), key=pos.__getitem__)
        green = max((g for g in pp.neighbours(red)), key=pos.__getitem__)
        _exchange(run, wires[red - 1], wires[green - 1])
        new = view_phase_poly(run.diagram)
        if new is None or new.colours[red - 1] != "green" or new.colours[green - 1] != "red":
            raise PipelineError("colour exchange left phase-polynomial form")
        before, after = len(bad), len(_offending(new, pos))
        if on_iteration is not None:
            on_iteration(before, after)
        if after >= before:
            raise PipelineError(f"offending connections did not decrease ({before} -> {after})")
        pp = new


def phasepoly_to_canonical(pp: PhasePolyDiagram, order: tuple[int, ...] | None = None, hook=None,
                           on_iteration=None) -> tuple[PhasePolyDiagram, list[RewriteStep]]:
    """Canonical form of a phase-polynomial diagram, via its colour-changed MBQC view."""
    d = mbqc_from_phase_poly(pp)
    out, steps = canonicalize_phase_poly_view(d, order, hook, on_iteration)
    return view_phase_poly(out), steps


@dataclass(frozen=True)
class Canonical:
    """Result of :func:`canonicalize`.

    ``diagram`` is the canonical phase-polynomial diagram; ``mbqc`` is the
    MBQC+LC diagram the trace ends on (qubits relabelled ``0..n-1``).
    """

    diagram: PhasePolyDiagram
    mbqc: Diagram
    steps: tuple[RewriteStep, ...]
    n_inputs: int


def canonicalize(d: Diagram, order: tuple[int, ...] | None = None, hook=None,
                 on_iteration=None, check_flow: bool = True) -> Canonical:
    if check_flow and find_flow(d.graph) is None:
        raise NoFlowError("diagram has no Pauli flow")
    n_inputs = len(d.inputs)
    run = Run(d, hook=hook)
    if d.inputs:
        _, records = bend_inputs(d)
        run.do(Bend(records))
    for stage in (eliminate_interior, to_rgslc, rgslc_to_phasepoly):
        run.diagram, steps = stage(run.diagram, hook)
        run.steps += steps
    run.diagram, steps = canonicalize_phase_poly_view(run.diagram, order, hook, on_iteration)
    run.steps += steps
    wires = run.diagram.outputs
    mapping = tuple(sorted((v, i) for i, v in enumerate(wires)))
    if any(a != b for a, b in mapping):
        run.do(Relabel(mapping))
    pp = view_phase_poly(run.diagram)
    return Canonical(pp, run.diagram, tuple(run.steps), n_inputs)


def decide_equiv(d1: Diagram, d2: Diagram, order: tuple[int, ...] | None = None,
                 check_flow: bool = True) -> list[RewriteStep]:
    """A trace rewriting ``d1`` into ``d2`` exactly, or :class:`NotEquivalentError`."""
    if (len(d1.inputs), len(d1.outputs)) != (len(d2.inputs), len(d2.outputs)):
        raise NotEquivalentError("different numbers of input or output wires")
    c1 = canonicalize(d1, order, check_flow=check_flow)
    c2 = canonicalize(d2, order, check_flow=check_flow)
    if c1.diagram != c2.diagram:
        raise NotEquivalentError("canonical forms differ")
    if c1.mbqc != c2.mbqc:
        raise PipelineError("equal canonical forms with different MBQC views")
    return list(c1.steps) + inverse_trace(c2.steps)
