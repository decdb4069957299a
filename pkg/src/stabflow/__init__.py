"""Pauli flow, stabilizer ZX rewriting and canonical forms for MBQC+LC diagrams."""

from .canonical import Canonical, NoFlowError, NotEquivalentError, canonicalize, decide_equiv, phasepoly_to_canonical
from .clifford import Clifford, Effect
from .flow import FlowViolation, PauliFlow, brute_force_flow_exists, find_flow, verify_flow
from .gf2 import AffineSpace, BitMatrix, canonical_free_vars, dependency_table, rref
from .graph import Diagram, LabelledOpenGraph, local_complement, odd_neighbourhood, pivot
from .rewrite import (LC, Pivot, ZDelete, ZInsert, apply_step, apply_trace, inverse_trace, lc_rewrite,
                      pivot_rewrite, z_delete, z_insert)
from .stabilizer import (PhasePolyDiagram, PhasePolynomial, canonical_diagram, diagram_from_state, evaluate_diagram,
                         pair_from_state, state_from_pair)
from .tensor import ExactState, proportional

__all__ = [
    "AffineSpace", "BitMatrix", "Canonical", "Clifford", "Diagram", "Effect", "ExactState", "FlowViolation", "LC",
    "LabelledOpenGraph", "NoFlowError", "NotEquivalentError", "PauliFlow", "PhasePolyDiagram", "PhasePolynomial",
    "Pivot", "ZDelete", "ZInsert", "apply_step", "apply_trace", "brute_force_flow_exists", "canonical_diagram",
    "canonical_free_vars", "canonicalize", "decide_equiv", "dependency_table", "diagram_from_state",
    "evaluate_diagram", "find_flow", "inverse_trace", "lc_rewrite", "local_complement", "odd_neighbourhood",
    "pair_from_state", "phasepoly_to_canonical", "pivot", "pivot_rewrite", "proportional", "rref",
    "state_from_pair", "verify_flow", "z_delete", "z_insert",
]
