"""Translation of diagrams into ZX networks, and their exact evaluation."""

from __future__ import annotations

from .clifford import Clifford, Effect
from .graph import Diagram
from .tensor import DEFAULT_WIRE_LIMIT, ExactState, ZXNetwork, evaluate_network

# effect -> single-leg spider (colour, quarter turns)
EFFECT_SPIDERS: dict[tuple[str, int], tuple[str, int]] = {
    ("X", 1): ("Z", 0),
    ("X", -1): ("Z", 2),
    ("Y", 1): ("Z", 3),
    ("Y", -1): ("Z", 1),
    ("Z", 1): ("X", 0),
    ("Z", -1): ("X", 2),
}


def _chain(net: ZXNetwork, start: int, word) -> int:
    """Attach the generator spiders of ``word`` after ``start``; return the last one."""
    last = start
    for axis, k in word:
        s = net.add_spider(axis, k)
        net.add_edge(last, s)
        last = s
    return last


def diagram_network(d: Diagram) -> ZXNetwork:
    """ZX network of ``d`` with input wires bent round to precede the outputs."""
    net = ZXNetwork()
    spider = {v: net.add_spider("Z", 0) for v in sorted(d.vertices)}
    for u, v in sorted(d.graph.edges):
        net.add_edge(spider[u], spider[v], hadamard=True)
    for v, e in d.effects.items():
        colour, k = EFFECT_SPIDERS[(e.basis, e.sign)]
        net.add_edge(spider[v], net.add_spider(colour, k))
    for v in d.inputs:
        word = d.input_cliffords[v].word
        # the open end sits before the first letter of the word
        ends = [net.add_spider(a, k) for a, k in word]
        chain = ends + [spider[v]]
        for a, b in zip(chain, chain[1:]):
            net.add_edge(a, b)
        if ends:
            net.add_boundary(ends[0])
        else:
            net.add_boundary(spider[v])
    for v in d.outputs:
        net.add_boundary(_chain(net, spider[v], d.output_cliffords[v].word))
    return net


def evaluate(d: Diagram, wire_limit: int = DEFAULT_WIRE_LIMIT) -> ExactState:
    """Exact amplitudes of ``d`` (inputs first, then outputs), up to a unit phase."""
    return evaluate_network(diagram_network(d), wire_limit)


def effect_state(e: Effect) -> tuple[complex, complex]:
    return e.bra


def clifford_network(c: Clifford) -> ZXNetwork:
    """Single-wire network: input wire first, then output wire."""
    net = ZXNetwork()
    start = net.add_spider("Z", 0)
    net.add_boundary(start)
    net.add_boundary(_chain(net, start, c.word))
    return net
