"""Deciding equivalence of two MBQC+LC diagrams with an explicit rewrite trace.

The two worked diagrams implement the same map.  Both are canonicalized, the
canonical forms compared, and the returned trace replayed step by step from
the first diagram, checking that Pauli flow survives every step.
"""

from __future__ import annotations

from collections import Counter

from stabflow import apply_step, decide_equiv, find_flow
from stabflow.golden import worked_d, worked_d_prime
from stabflow.io import dump_trace


def main() -> None:
    d, d_prime = worked_d(), worked_d_prime()
    trace = decide_equiv(d, d_prime)
    print(f"equivalent, trace of {len(trace)} steps:",
          dict(Counter(type(s).__name__ for s in trace)))

    cur = d
    for step in trace:
        cur = apply_step(cur, step)
        assert find_flow(cur.graph) is not None
    print("replay lands on the second diagram:", cur == d_prime)
    print("first lines of the JSONL trace:")
    print("".join(dump_trace(trace).splitlines(keepends=True)[:4]), end="")


if __name__ == "__main__":
    main()
