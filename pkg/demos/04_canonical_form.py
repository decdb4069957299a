"""Canonicalizing random diagrams.

A random flowed diagram is scrambled by flow-preserving rewrites; both copies
reach the same canonical diagram, which depends only on the linear map.
"""

from __future__ import annotations

from stabflow import canonicalize
from stabflow.generate import random_flowed_diagram, random_rewrites
from stabflow.io import diagram_to_json, dumps


def main(seed: int = 2024) -> None:
    d = random_flowed_diagram(6, seed=seed)
    scrambled, steps = random_rewrites(d, 12, seed=seed + 1)
    a, b = canonicalize(d), canonicalize(scrambled)
    print(f"{len(steps)} random rewrites applied; trace lengths {len(a.steps)} and {len(b.steps)}")
    print("same canonical form:", a.diagram == b.diagram)
    print(dumps(diagram_to_json(a.diagram, kind="canonical")), end="")


if __name__ == "__main__":
    main()
