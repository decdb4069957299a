"""Acceptance criteria.  Each test prints exactly one ``ACCEPTANCE <k> PASS|FAIL`` line.

Run with ``pytest tests/test_acceptance.py -v``; the lines are printed with
capturing disabled so they show up in the normal pytest output.
"""

from __future__ import annotations

import time
from collections import Counter
from itertools import combinations, product

import numpy as np
import pytest
from helpers import random_phase_poly

from stabflow import golden, io
from stabflow.canonical import canonicalize, decide_equiv, phasepoly_to_canonical
from stabflow.clifford import Clifford, Effect
from stabflow.flow import brute_force_flow_exists, find_flow, verify_flow, z_insert_flow_update
from stabflow.generate import random_diagram, random_flowed_diagram, random_open_graph, random_rewrites
from stabflow.gf2 import AffineSpace, canonical_free_vars, dependency_table
from stabflow.graph import LABELS, Diagram
from stabflow.rewrite import LC, Pivot, ZInsert, apply_step, apply_trace, step_for
from stabflow.semantics import evaluate
from stabflow.stabilizer import PhasePolynomial, evaluate_diagram, lq_exponent, pair_from_state
from stabflow.tensor import ExactState, proportional

EFFECTS = [Effect(b, s) for b in "XYZ" for s in (1, -1)]
CLIFFORDS = Clifford.all()


@pytest.fixture
def report(capsys):
    def emit(k: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\nACCEPTANCE {k} {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail
    return emit


# -- 1 ---------------------------------------------------------------------------

def test_1_four_qubit_golden(report):
    t0 = time.perf_counter()
    target = ExactState.from_kets(4, {"0010": 1, "0111": 1, "1001": 1j, "1100": -1j})
    s = evaluate_diagram(golden.four_qubit_diagram())
    exact = proportional(s, target)  # exact Gaussian-integer arithmetic, no tolerance
    _, p12 = pair_from_state(target, [1, 2])
    _, p23 = pair_from_state(target, [2, 3])
    want12 = PhasePolynomial((1, 2), {1: 1, 2: 0}, frozenset({(1, 2)}))
    want23 = PhasePolynomial((2, 3), {2: 2, 3: 3}, frozenset({(2, 3)}))
    elapsed = time.perf_counter() - t0
    ok = exact and p12 == want12 and p23 == want23 and elapsed < 1.0
    report(1, ok, f"amplitudes exactly proportional={exact}, F={{x1,x2}}: p={p12}, F={{x2,x3}}: p={p23}, {elapsed * 1e3:.1f} ms")


# -- 2 ---------------------------------------------------------------------------

def _shapes(n: int, locked: frozenset[int]):
    """All (edges, outputs, measured, inputs) on vertices 0..n-1; ``locked`` vertices are never inputs."""
    pairs = list(combinations(range(n), 2))
    for emask in range(1 << len(pairs)):
        edges = [p for i, p in enumerate(pairs) if emask >> i & 1]
        for omask in range(1 << n):
            outputs = [v for v in range(n) if omask >> v & 1]
            measured = [v for v in range(n) if not omask >> v & 1]
            free = [v for v in range(n) if v not in locked]
            for imask in range(1 << len(free)):
                inputs = [v for i, v in enumerate(free) if imask >> i & 1]
                yield edges, outputs, measured, inputs


def _decorated(n: int, locked: frozenset[int] = frozenset(), sweep_cliffords: bool = False):
    """Every effect combination; output Cliffords identity, or (``sweep_cliffords``) all 24 on each output."""
    for edges, outputs, measured, inputs in _shapes(n, locked):
        for effs in product(EFFECTS, repeat=len(measured)):
            effects = dict(zip(measured, effs))
            yield Diagram.build(range(n), edges, inputs=inputs, outputs=outputs, effects=effects)
            if not sweep_cliffords:
                continue
            wires = [("output_cliffords", v) for v in outputs] + [("input_cliffords", v) for v in inputs]
            for field, v in wires:
                for c in CLIFFORDS[1:]:
                    yield Diagram.build(range(n), edges, inputs=inputs, outputs=outputs, effects=effects,
                                        **{field: {v: c}})


def _exhaustive_cases():
    """(rewrite kind, diagram, step) over all 1-3 vertex diagrams where the step applies."""
    for n in (1, 2, 3):
        for d in _decorated(n, frozenset({0}), sweep_cliffords=n <= 2):
            yield "lc", d, LC(0)
            if 0 in d.effects and d.effects[0].basis == "Z":
                yield "zdelete", d, step_for(d, "zdelete", 0)
    for n in (2, 3):
        for d in _decorated(n, frozenset({0, 1}), sweep_cliffords=n <= 2):
            if d.graph.has_edge(0, 1):
                yield "pivot", d, Pivot(0, 1)
    for n in (1, 2):
        for d in _decorated(n, sweep_cliffords=n == 1):
            for wmask in range(1 << n):
                ws = tuple(v for v in range(n) if wmask >> v & 1)
                for sign in (1, -1):
                    yield "zinsert", d, ZInsert(n, ws, sign)


def _random_case(kind: str, rng: np.random.Generator):
    while True:
        d = random_diagram(int(rng.integers(1, 8)), rng, density=float(rng.uniform(0.2, 0.8)))
        free = sorted(d.vertices - set(d.inputs))
        if kind == "lc" and free:
            return d, LC(free[int(rng.integers(len(free)))])
        if kind == "pivot":
            edges = [e for e in sorted(d.graph.edges) if e[0] not in d.inputs and e[1] not in d.inputs]
            if edges:
                return d, Pivot(*edges[int(rng.integers(len(edges)))])
        if kind == "zdelete":
            zs = [v for v in free if v in d.effects and d.effects[v].basis == "Z"]
            if zs:
                return d, step_for(d, "zdelete", zs[int(rng.integers(len(zs)))])
        if kind == "zinsert" and len(d.vertices) < 7:
            ws = tuple(v for v in sorted(d.vertices) if rng.random() < 0.5)
            return d, ZInsert(max(d.vertices) + 1, ws, 1 - 2 * int(rng.integers(2)))


def test_2_rewrite_soundness(report):
    t0 = time.perf_counter()
    exhaustive = Counter()
    bad = []
    cache: dict[int, ExactState] = {}
    for kind, d, step in _exhaustive_cases():
        ref = cache.get(id(d))
        if ref is None:
            cache.clear()
            ref = cache[id(d)] = evaluate(d)
        if not proportional(ref, evaluate(apply_step(d, step))):
            bad.append((kind, d, step))
        exhaustive[kind] += 1
    rng = np.random.default_rng(2024)
    randomized = Counter()
    for kind in ("lc", "pivot", "zdelete", "zinsert"):
        for _ in range(1000):
            d, step = _random_case(kind, rng)
            if not proportional(evaluate(d), evaluate(apply_step(d, step))):
                bad.append((kind, d, step))
            randomized[kind] += 1
    elapsed = time.perf_counter() - t0
    ok = not bad and min(randomized.values()) >= 1000 and elapsed < 120
    report(2, ok, f"random={dict(randomized)} exhaustive={dict(exhaustive)} failures={len(bad)} "
                  f"in {elapsed:.1f} s")


# -- 3 ---------------------------------------------------------------------------

def _oracle_sized(d: Diagram, extra: int = 0) -> bool:
    g = d.graph
    return len(g.measured) + extra <= 5 and len(g.vertices - set(g.inputs)) + extra <= 8


def test_3_flow_preservation(report):
    rng = np.random.default_rng(33)
    counts = Counter()
    failures = []
    graphs = 0
    while graphs < 1000 or min(counts[k] for k in ("lc", "pivot", "zdelete", "zinsert")) < 1000:
        d = random_flowed_diagram(int(rng.integers(2, 8)), rng, density=float(rng.uniform(0.2, 0.8)))
        if not _oracle_sized(d, extra=1):
            continue
        graphs += 1
        free = sorted(d.vertices - set(d.inputs))
        steps = []
        if free:
            steps.append(("lc", LC(free[int(rng.integers(len(free)))])))
        edges = [e for e in sorted(d.graph.edges) if e[0] in free and e[1] in free]
        if edges:
            steps.append(("pivot", Pivot(*edges[int(rng.integers(len(edges)))])))
        zs = [v for v in free if v in d.effects and d.effects[v].basis == "Z"]
        if zs:
            steps.append(("zdelete", step_for(d, "zdelete", zs[int(rng.integers(len(zs)))])))
        ws = tuple(v for v in sorted(d.vertices) if rng.random() < 0.5)
        steps.append(("zinsert", ZInsert(max(d.vertices) + 1, ws, 1)))
        for kind, step in steps:
            out = apply_step(d, step)
            ok = find_flow(out.graph) is not None and brute_force_flow_exists(out.graph)
            if kind == "zinsert":
                f2 = z_insert_flow_update(find_flow(d.graph), step.vertex, step.neighbours)
                ok = ok and verify_flow(out.graph, f2) is None
            if not ok:
                failures.append((kind, d, step))
            counts[kind] += 1
    report(3, not failures, f"{graphs} flowed graphs, rewrites checked {dict(counts)}, "
                            f"z_insert_flow_update verified {counts['zinsert']}, failures={len(failures)}")


# -- 4 ---------------------------------------------------------------------------

def test_4_verifier_oracle_agreement(report):
    rng = np.random.default_rng(44)
    total = agree = with_flow = 0
    labels = Counter()
    while total < 2000:
        g = random_open_graph(int(rng.integers(1, 9)), rng, density=float(rng.uniform(0.15, 0.85)))
        if len(g.measured) > 5 or len(g.vertices - set(g.inputs)) > 8:
            continue
        total += 1
        labels.update(g.labels.values())
        f = find_flow(g)
        exists = brute_force_flow_exists(g)
        if (f is not None) == exists and (f is None or verify_flow(g, f) is None):
            agree += 1
        with_flow += exists
    ok = agree == total and set(labels) == set(LABELS)
    report(4, ok, f"{agree}/{total} agree ({with_flow} with flow), label counts {dict(sorted(labels.items()))}")


# -- 5 ---------------------------------------------------------------------------

def _canonical_bytes(d: Diagram) -> str:
    return io.dumps(io.diagram_to_json(canonicalize(d).diagram, kind="canonical"))


def test_5_canonical_uniqueness(report):
    rng = np.random.default_rng(55)
    same = 0
    mismatches = 0
    pool: dict[tuple[int, int], list[tuple[Diagram, str]]] = {}
    for _ in range(1000):
        d = random_flowed_diagram(int(rng.integers(1, 7)), rng)
        e, _ = random_rewrites(d, int(rng.integers(0, 11)), rng)
        a, b = _canonical_bytes(d), _canonical_bytes(e)
        if a == b:
            same += 1
        else:
            mismatches += 1
        pool.setdefault((len(d.inputs), len(d.outputs)), []).append((d, a))
    # converse: oracle-non-proportional pairs with the same wire counts
    distinct = collisions = 0
    keys = sorted(pool)
    while distinct < 200:
        key = keys[int(rng.integers(len(keys)))]
        group = pool[key]
        if len(group) < 2:
            continue
        i, j = rng.choice(len(group), size=2, replace=False)
        (d1, b1), (d2, b2) = group[i], group[j]
        if proportional(evaluate(d1), evaluate(d2)):
            continue
        distinct += 1
        collisions += b1 == b2
    ok = mismatches == 0 and collisions == 0
    report(5, ok, f"{same}/1000 rewritten pairs byte-identical, {collisions} collisions among "
                  f"{distinct} non-proportional pairs")


# -- 6 ---------------------------------------------------------------------------

def test_6_worked_example_end_to_end(report):
    d, target = golden.worked_d(), golden.worked_d_prime()
    steps = decide_equiv(d, target)
    cur = d
    flows_ok = True
    for step in steps:
        cur = apply_step(cur, step)
        f = find_flow(cur.graph)
        flows_ok = flows_ok and f is not None and verify_flow(cur.graph, f) is None
    replayed = io.dumps(io.diagram_to_json(apply_trace(d, io.load_trace(io.dump_trace(steps)))))
    exact = replayed == io.dumps(io.diagram_to_json(target))
    report(6, exact and flows_ok, f"trace of {len(steps)} steps, replay byte-exact={exact}, "
                                  f"flow at every intermediate={flows_ok}")


# -- 7 ---------------------------------------------------------------------------

def test_7_termination(report):
    rng = np.random.default_rng(77)
    iterations = 0
    inputs = 0
    decreasing = True
    sizes = Counter()
    for _ in range(1500):
        n = int(rng.integers(1, 9))
        pp = random_phase_poly(n, rng, density=float(rng.uniform(0.2, 0.9)))
        order = None if rng.random() < 0.5 else tuple(int(q) + 1 for q in rng.permutation(n))
        counts = []

        def step(before, after):
            assert after < before, f"offending connections {before} -> {after}"
            counts.append((before, after))

        out, _ = phasepoly_to_canonical(pp, order, on_iteration=step)
        decreasing = decreasing and out.is_canonical(order) and all(b < a for a, b in counts)
        iterations += len(counts)
        inputs += 1
        sizes[n] += 1
    report(7, decreasing, f"{inputs} inputs (n<=8, sizes {dict(sorted(sizes.items()))}) terminated, "
                          f"{iterations} iterations, each strictly decreasing")


# -- 8 ---------------------------------------------------------------------------

def _lq_state(space: AffineSpace, free: tuple[int, ...], d, c, c2) -> ExactState:
    """``sum_x i^l(x) (-1)^q(x) |x>`` built straight from the (l, q) coefficients."""
    table = dependency_table(space, free)
    amps = [0j] * (1 << space.n)
    for x in table.points():
        l_val = sum(d[j] * x[j - 1] for j in free) % 2
        q_val = (sum(c[j] * x[j - 1] for j in free) + sum(x[a - 1] * x[b - 1] for a, b in c2)) % 2
        idx = int("".join(map(str, x)), 2) if x else 0
        amps[idx] = (1j ** l_val) * (-1) ** q_val
    return ExactState.from_gaussian(amps)


def _spaces_for(k: int, rng: np.random.Generator) -> list[tuple[AffineSpace, tuple[int, ...]]]:
    out = [(AffineSpace.full(k), tuple(range(1, k + 1)))]
    n = k + 2
    while len(out) < 4:
        rows = [list(rng.integers(0, 2, n)) for _ in range(n - k)]
        x0 = list(rng.integers(0, 2, n))
        rhs = [int(np.dot(r, x0)) % 2 for r in rows]
        space = AffineSpace(n, rows, rhs)
        if space.dim != k:
            continue
        valid = []
        for free in combinations(range(1, n + 1), k):
            try:
                dependency_table(space, free)
                valid.append(free)
            except ValueError:
                pass
        canon = canonical_free_vars(space)
        other = [f for f in valid if f != canon]
        out.append((space, canon if len(out) % 2 or not other else other[int(rng.integers(len(other)))]))
    return out


def test_8_phase_coefficient_uniqueness(report):
    rng = np.random.default_rng(88)
    families = pairs = collisions = 0
    for k in range(4):
        for space, free in _spaces_for(k, rng):
            fpairs = list(combinations(free, 2))
            states = []
            for dbits, cbits, qbits in product(range(1 << k), range(1 << k), range(1 << len(fpairs))):
                d = {j: dbits >> i & 1 for i, j in enumerate(free)}
                c = {j: cbits >> i & 1 for i, j in enumerate(free)}
                c2 = [p for i, p in enumerate(fpairs) if qbits >> i & 1]
                states.append(_lq_state(space, free, d, c, c2))
            for s, t in combinations(states, 2):
                pairs += 1
                collisions += proportional(s, t)
            families += 1
    # conversion identities on random coefficient draws
    identity_failures = 0
    draws = 0
    for _ in range(2000):
        k = int(rng.integers(1, 7))
        free = tuple(range(1, k + 1))
        r = {j: int(rng.integers(4)) for j in free}
        s = {p: int(rng.integers(2)) for p in combinations(free, 2)}
        p = PhasePolynomial(free, r, frozenset(q for q, v in s.items() if v))
        d, c, c2 = p.to_lq()
        draws += 1
        checks = [
            all(d[j] == r[j] % 2 and c[j] == (r[j] - d[j]) // 2 for j in free),
            all((q in c2) == bool(s[q] ^ (d[q[0]] & d[q[1]])) for q in s),
            all(r[j] == d[j] + 2 * c[j] for j in free),
            PhasePolynomial.from_lq(free, d, c, c2) == p,
        ]
        for x in product((0, 1), repeat=k):
            y = sum(d[j] * x[j - 1] for j in free)
            lin_mod2 = y % 2
            checks.append(lin_mod2 == (y * y) % 4 % 2 and lin_mod2 == (y + 2 * sum(
                d[a] * d[b] * x[a - 1] * x[b - 1] for a, b in combinations(free, 2))) % 4)
            checks.append(lq_exponent(x, d, c, c2) == p.evaluate(x))
        identity_failures += not all(checks)
    ok = collisions == 0 and identity_failures == 0
    report(8, ok, f"{families} (A, F) families with |F|<=3, {pairs} coefficient pairs, {collisions} proportional; "
                  f"conversion identities failed on {identity_failures}/{draws} random draws")

