"""Worked examples used as golden data by the tests, demos and CLI docs.

``four_qubit_*`` is the four-qubit phase-polynomial example with support
``x3 = 1 + x1, x4 = x1 + x2`` and phase polynomial ``x1 + 2 x1 x2``.

``worked_d`` and ``worked_d_prime`` are two MBQC+LC diagrams with two inputs
and two outputs whose map, with inputs bent round to come first, is the
four-qubit example state.  They are rebuilt from the prose of the completeness
example (the original drawings are not available in text form):

* ``worked_d``: two interior qubits, left-most and right-most, which become
  Z-measured after three local complementations each and are then deleted,
  leaving :func:`worked_n`, the canonical diagram up to map-state duality;
* ``worked_d_prime``: two interior qubits, top and bottom, which become
  Z-measured after one local complementation each and are then deleted,
  leaving :func:`worked_n_prime`, which is one pivot (bottom-left with
  bottom-right) away from canonical.

``tests/test_golden.py`` re-derives both by running those steps backwards.
"""

from __future__ import annotations

from .clifford import Clifford, Effect
from .graph import Diagram
from .stabilizer import PhasePolyDiagram
from .tensor import ExactState


def _c(*word: tuple[str, int]) -> Clifford:
    return Clifford.from_word(word)


def four_qubit_state() -> ExactState:
    return ExactState.from_kets(4, {"0010": 1, "0111": 1, "1001": 1j, "1100": -1j})


def four_qubit_diagram() -> PhasePolyDiagram:
    """Free variables x1, x2 (green pi/2 and 0); red pi and 0."""
    return PhasePolyDiagram(("green", "green", "red", "red"), (1, 0, 2, 0),
                            frozenset({(1, 3), (1, 4), (2, 4)}), frozenset({(1, 2)}))


def four_qubit_diagram_x2_x3() -> PhasePolyDiagram:
    """Same state with free variables x2, x3 (green pi and -pi/2; red pi and pi)."""
    return PhasePolyDiagram(("red", "green", "green", "red"), (2, 2, 3, 2),
                            frozenset({(1, 3), (2, 4), (3, 4)}), frozenset({(2, 3)}))


def worked_n() -> Diagram:
    return Diagram.build(
        [0, 1, 4, 5], [(0, 1), (0, 4), (0, 5), (1, 5)],
        inputs=[0, 1], outputs=[4, 5],
        effects={0: Effect("Y", -1), 1: Effect("X", 1)},
        output_cliffords={4: _c(("Z", 1), ("X", 3), ("Z", 3)), 5: _c(("Z", 1), ("X", 1), ("Z", 1))},
    )


def worked_n_prime() -> Diagram:
    return Diagram.build(
        [0, 1, 4, 5], [(0, 1), (0, 4), (0, 5), (1, 5)],
        inputs=[0, 1], outputs=[4, 5],
        effects={0: Effect("Y", 1), 1: Effect("X", 1)},
        output_cliffords={4: _c(("Z", 1), ("X", 3), ("Z", 3))},
        input_cliffords={1: _c(("Z", 1), ("X", 1), ("Z", 1))},
    )


def worked_d() -> Diagram:
    return Diagram.build(
        range(6), [(0, 2), (0, 4), (0, 5), (1, 2), (1, 5), (3, 4), (3, 5), (4, 5)],
        inputs=[0, 1], outputs=[4, 5],
        effects={0: Effect("X", 1), 1: Effect("Y", 1), 2: Effect("Y", 1), 3: Effect("Y", 1)},
        output_cliffords={4: _c(("X", 3), ("Z", 3)), 5: _c(("X", 1), ("Z", 1))},
    )


def worked_d_prime() -> Diagram:
    return Diagram.build(
        range(6), [(0, 1), (0, 2), (0, 5), (1, 3), (2, 4), (3, 5)],
        inputs=[0, 1], outputs=[4, 5],
        effects={0: Effect("X", 1), 1: Effect("Y", -1), 2: Effect("Y", -1), 3: Effect("Y", -1)},
        output_cliffords={4: _c(("X", 1), ("Z", 1)), 5: _c(("Z", 1))},
        input_cliffords={1: _c(("Z", 1), ("X", 1), ("Z", 1))},
    )
