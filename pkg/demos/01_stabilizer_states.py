"""Stabilizer states as (affine support, phase polynomial) pairs.

Walks the four-qubit example state through the bijection: pull out its
support and phase polynomial, draw it as a phase-polynomial diagram for two
different choices of free variables, and check that both evaluate back to
the same state.
"""

from __future__ import annotations

from stabflow import canonical_free_vars, diagram_from_state, evaluate_diagram, pair_from_state, proportional
from stabflow.golden import four_qubit_state


def main() -> None:
    s = four_qubit_state()
    print("state support (as integers):", s.support())

    space, poly = pair_from_state(s)
    print("affine support:", space)
    print("canonical free variables:", canonical_free_vars(space))
    print("phase polynomial:", poly)

    for free in (None, (2, 3)):
        d = diagram_from_state(s, free)
        back = evaluate_diagram(d)
        label = "canonical" if free is None else f"free={free}"
        print(f"{label}: colours={d.colours} phases={d.phases} round trip ok={proportional(back, s)}")


if __name__ == "__main__":
    main()
