"""JSON file formats, trace lines and DOT export.

All writers are deterministic: vertices sorted by id, edges sorted, keys
sorted, fixed indentation, trailing newline.  Readers validate against the
JSON schemas shipped in ``stabflow/schemas`` before building objects.
"""

from __future__ import annotations

import json
from collections.abc import Iterable
from functools import cache
from importlib import resources

import jsonschema

from .clifford import Clifford, Effect
from .flow import PauliFlow
from .graph import Diagram
from .rewrite import LC, Bend, Pivot, Relabel, RewriteStep, Unbend, ZDelete, ZInsert
from .stabilizer import PhasePolyDiagram
from .tensor import ExactState

FORMAT_VERSION = 1


class SchemaError(ValueError):
    """Input does not match its file format."""


@cache
def schema(name: str) -> dict:
    text = resources.files("stabflow").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def validate(data, name: str) -> None:
    try:
        jsonschema.validate(data, schema(name))
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise SchemaError(f"{name}: {where}: {e.message}") from None


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _sign(s: int) -> str:
    return "+" if s > 0 else "-"


def _unsign(s: str) -> int:
    return 1 if s == "+" else -1


def _word(c: Clifford) -> list[list]:
    return [[a, k] for a, k in c.word]


def _clifford(word) -> Clifford:
    return Clifford.from_word((a, int(k)) for a, k in word)


# -- diagrams ----------------------------------------------------------------

def diagram_to_json(d: Diagram | PhasePolyDiagram, *, kind: str | None = None,
                    order: Iterable[int] | None = None) -> dict:
    if isinstance(d, PhasePolyDiagram):
        kind = kind or "phase_poly"
        out = {
            "version": FORMAT_VERSION,
            "kind": kind,
            "vertices": [{"id": j, "colour": c, "phase_quarter_turns": p}
                         for j, (c, p) in enumerate(zip(d.colours, d.phases), 1)],
            "edges": [{"u": a, "v": b, "hadamard": (a, b) in d.hadamard}
                      for a, b in sorted(d.plain | d.hadamard)],
        }
        if order is not None:
            out["order"] = list(order)
        return out
    verts = []
    for v in sorted(d.vertices):
        roles = [r for r, flag in (("input", v in d.inputs), ("output", v in d.outputs),
                                   ("measured", v in d.effects)) if flag]
        entry: dict = {"id": v, "roles": roles}
        if v in d.effects:
            entry["basis"] = d.effects[v].basis
            entry["sign"] = _sign(d.effects[v].sign)
        if v in d.inputs:
            entry["input_clifford"] = _word(d.input_cliffords[v])
        if v in d.outputs:
            entry["output_clifford"] = _word(d.output_cliffords[v])
        verts.append(entry)
    return {
        "version": FORMAT_VERSION,
        "kind": "mbqc_lc",
        "inputs": list(d.inputs),
        "outputs": list(d.outputs),
        "vertices": verts,
        "edges": [{"u": u, "v": v, "hadamard": True} for u, v in sorted(d.graph.edges)],
    }


def _check_ids(data: dict) -> set[int]:
    ids = [v["id"] for v in data["vertices"]]
    if len(set(ids)) != len(ids):
        raise SchemaError("vertex ids are not unique")
    known = set(ids)
    seen = set()
    for e in data["edges"]:
        if e["u"] not in known or e["v"] not in known:
            raise SchemaError(f"edge ({e['u']}, {e['v']}) references an unknown vertex")
        key = (min(e["u"], e["v"]), max(e["u"], e["v"]))
        if e["u"] == e["v"] or key in seen:
            raise SchemaError(f"edge ({e['u']}, {e['v']}) is a self-loop or repeated")
        seen.add(key)
    return known


def diagram_from_json(data: dict) -> Diagram | PhasePolyDiagram:
    validate(data, "diagram")
    known = _check_ids(data)
    try:
        if data["kind"] == "mbqc_lc":
            return _mbqc_from_json(data, known)
        return _phase_poly_from_json(data)
    except SchemaError:
        raise
    except (ValueError, KeyError) as e:
        raise SchemaError(str(e)) from None


def _mbqc_from_json(data: dict, known: set[int]) -> Diagram:
    for e in data["edges"]:
        if not e["hadamard"]:
            raise SchemaError("graph edges of an mbqc_lc diagram must be Hadamard edges")
    effects, ins, outs = {}, {}, {}
    for v in data["vertices"]:
        roles = set(v.get("roles", []))
        if "colour" in v or "phase_quarter_turns" in v:
            raise SchemaError(f"vertex {v['id']}: colour/phase belong to phase_poly diagrams")
        if ("measured" in roles) == ("output" in roles):
            raise SchemaError(f"vertex {v['id']} must be exactly one of measured or output")
        if "measured" in roles:
            if "basis" not in v or "sign" not in v:
                raise SchemaError(f"measured vertex {v['id']} needs basis and sign")
            effects[v["id"]] = Effect(v["basis"], _unsign(v["sign"]))
        elif "basis" in v or "sign" in v:
            raise SchemaError(f"output vertex {v['id']} cannot carry a measurement")
        if "input" in roles:
            ins[v["id"]] = _clifford(v.get("input_clifford", []))
        elif "input_clifford" in v:
            raise SchemaError(f"vertex {v['id']} is not an input")
        if "output" in roles:
            outs[v["id"]] = _clifford(v.get("output_clifford", []))
        elif "output_clifford" in v:
            raise SchemaError(f"vertex {v['id']} is not an output")
    inputs = data.get("inputs", sorted(ins))
    outputs = data.get("outputs", sorted(outs))
    if set(inputs) != set(ins) or set(outputs) != set(outs):
        raise SchemaError("inputs/outputs lists disagree with vertex roles")
    return Diagram.build(sorted(known), [(e["u"], e["v"]) for e in data["edges"]], inputs=inputs,
                         outputs=outputs, effects=effects, output_cliffords=outs, input_cliffords=ins)


def _phase_poly_from_json(data: dict) -> PhasePolyDiagram:
    verts = sorted(data["vertices"], key=lambda v: v["id"])
    n = len(verts)
    if [v["id"] for v in verts] != list(range(1, n + 1)):
        raise SchemaError("phase-polynomial spiders must be numbered 1..n")
    for v in verts:
        if "colour" not in v or "phase_quarter_turns" not in v:
            raise SchemaError(f"spider {v['id']} needs colour and phase_quarter_turns")
        extra = set(v) - {"id", "colour", "phase_quarter_turns"}
        if extra:
            raise SchemaError(f"spider {v['id']} has unexpected fields {sorted(extra)}")
    plain = {(e["u"], e["v"]) for e in data["edges"] if not e["hadamard"]}
    had = {(e["u"], e["v"]) for e in data["edges"] if e["hadamard"]}
    pp = PhasePolyDiagram(tuple(v["colour"] for v in verts), tuple(v["phase_quarter_turns"] for v in verts),
                          frozenset(plain), frozenset(had))
    if data["kind"] == "canonical":
        order = tuple(data["order"]) if "order" in data else None
        if not pp.is_canonical(order):
            raise SchemaError("diagram marked canonical has a red spider joined to a later green one")
    return pp


def read_diagram(path) -> Diagram | PhasePolyDiagram:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise SchemaError(f"invalid JSON: {e}") from None
    return diagram_from_json(data)


# -- flows, states -------------------------------------------------------------

def flow_from_json(data: dict) -> PauliFlow:
    validate(data, "flow")
    return PauliFlow.from_json(data)


def state_from_json(data: dict) -> ExactState:
    validate(data, "state")
    try:
        return ExactState.from_json(data)
    except ValueError as e:
        raise SchemaError(str(e)) from None


# -- traces --------------------------------------------------------------------

def step_to_json(step: RewriteStep) -> dict:
    if isinstance(step, LC):
        return {"kind": "lc", "vertex": step.vertex}
    if isinstance(step, Pivot):
        return {"kind": "pivot", "u": step.u, "v": step.v}
    if isinstance(step, (ZDelete, ZInsert)):
        return {"kind": step.kind, "vertex": step.vertex, "neighbours": list(step.neighbours),
                "sign": _sign(step.sign)}
    if isinstance(step, (Bend, Unbend)):
        return {"kind": step.kind, "records": [{"input": a, "vertex": b, "clifford": _word(c)}
                                               for a, b, c in step.records]}
    if isinstance(step, Relabel):
        return {"kind": "relabel", "mapping": [list(p) for p in step.mapping]}
    raise TypeError(f"unknown step {step!r}")


def step_from_json(data: dict) -> RewriteStep:
    validate(data, "step")
    kind = data["kind"]
    if kind == "lc":
        return LC(data["vertex"])
    if kind == "pivot":
        return Pivot(data["u"], data["v"])
    if kind in ("zdelete", "zinsert"):
        cls = ZDelete if kind == "zdelete" else ZInsert
        return cls(data["vertex"], tuple(sorted(data["neighbours"])), _unsign(data["sign"]))
    records = tuple((r["input"], r["vertex"], _clifford(r["clifford"])) for r in data.get("records", []))
    if kind == "bend":
        return Bend(records)
    if kind == "unbend":
        return Unbend(records)
    return Relabel(tuple((a, b) for a, b in data["mapping"]))


def dump_trace(steps: Iterable[RewriteStep]) -> str:
    return "".join(json.dumps(step_to_json(s), sort_keys=True, separators=(",", ":")) + "\n" for s in steps)


def load_trace(text: str) -> list[RewriteStep]:
    steps = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as e:
            raise SchemaError(f"trace line {lineno}: invalid JSON: {e}") from None
        try:
            steps.append(step_from_json(data))
        except SchemaError as e:
            raise SchemaError(f"trace line {lineno}: {e}") from None
    return steps


# -- DOT -------------------------------------------------------------------------

def to_dot(d: Diagram | PhasePolyDiagram, name: str = "diagram") -> str:
    """Green/red nodes for spiders, dashed edges for Hadamard edges."""
    lines = [f"graph {name} {{", "  node [style=filled];"]
    if isinstance(d, PhasePolyDiagram):
        for j, (c, p) in enumerate(zip(d.colours, d.phases), 1):
            fill = "palegreen" if c == "green" else "salmon"
            lines.append(f'  q{j} [label="{j}: {_phase_label(p)}", fillcolor={fill}];')
        for a, b in sorted(d.plain | d.hadamard):
            style = " [style=dashed, color=blue]" if (a, b) in d.hadamard else ""
            lines.append(f"  q{a} -- q{b}{style};")
    else:
        for v in sorted(d.vertices):
            parts = [str(v)]
            if v in d.inputs:
                parts.append("in")
            if v in d.effects:
                parts.append(str(d.effects[v]))
            if v in d.outputs:
                parts.append("out")
            shape = "doublecircle" if v in d.outputs else "circle"
            lines.append(f'  v{v} [label="{" ".join(parts)}", fillcolor=palegreen, shape={shape}];')
        for u, v in sorted(d.graph.edges):
            lines.append(f"  v{u} -- v{v} [style=dashed, color=blue];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _phase_label(k: int) -> str:
    return ("0", "pi/2", "pi", "-pi/2")[k % 4]
