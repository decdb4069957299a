"""Finding Pauli flow and checking it against an exhaustive search.

Samples small labelled open graphs, runs the polynomial-time finder and the
brute-force oracle side by side, and verifies every flow that is found.
"""

from __future__ import annotations

from collections import Counter

from stabflow import brute_force_flow_exists, find_flow, verify_flow
from stabflow.generate import random_open_graph


def main(samples: int = 300, seed: int = 7) -> None:
    tally = Counter()
    for i in range(samples):
        g = random_open_graph(5, seed=(seed, i))
        f = find_flow(g)
        oracle = brute_force_flow_exists(g)
        if f is not None:
            assert verify_flow(g, f) is None
        tally["flow" if f else "no flow"] += 1
        tally["agree" if (f is not None) == oracle else "DISAGREE"] += 1
    print(dict(tally))

    g = next(g for i in range(samples) if find_flow(g := random_open_graph(5, seed=(seed, i))))
    f = find_flow(g)
    print("example graph edges:", sorted(g.edges), "labels:", dict(g.labels))
    print("correction sets:", {u: sorted(s) for u, s in f.p.items()})


if __name__ == "__main__":
    main()
