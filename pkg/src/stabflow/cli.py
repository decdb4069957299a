"""Command-line interface: ``stabflow <command> ...``.

Exit codes: 0 success, 1 flow violation, 2 no flow found, 3 not equivalent,
64 malformed input, 65 size limit exceeded, 66 precondition failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import io
from .canonical import NoFlowError, NotEquivalentError, canonicalize, decide_equiv, phasepoly_to_canonical
from .flow import MalformedFlowError, OracleLimitError, find_flow, verify_flow
from .generate import random_diagram, random_flowed_diagram
from .graph import Diagram, UnknownVertexError
from .rewrite import RewriteError, apply_step, apply_trace, step_for
from .stabilizer import MalformedDiagramError, PhasePolyDiagram, evaluate_diagram
from .tensor import SizeLimitError

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_NO_FLOW = 2
EXIT_NOT_EQUIV = 3
EXIT_SCHEMA = 64
EXIT_SIZE = 65
EXIT_PRECONDITION = 66


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load(path: str) -> Diagram | PhasePolyDiagram:
    try:
        return io.read_diagram(path)
    except OSError as e:
        raise CliError(EXIT_SCHEMA, f"{path}: {e.strerror}") from None
    except (io.SchemaError, MalformedDiagramError) as e:
        raise CliError(EXIT_SCHEMA, f"{path}: {e}") from None


def _mbqc(path: str) -> Diagram:
    d = _load(path)
    if not isinstance(d, Diagram):
        raise CliError(EXIT_PRECONDITION, f"{path}: this command needs an mbqc_lc diagram")
    return d


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise CliError(EXIT_SCHEMA, f"{path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise CliError(EXIT_SCHEMA, f"{path}: invalid JSON: {e}") from None


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise CliError(EXIT_SCHEMA, f"expected comma-separated integers, got {text!r}") from None


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# -- per-file commands (batchable) ---------------------------------------------

def _flow_find(path: str, args) -> tuple[int, str]:
    d = _mbqc(path)
    f = find_flow(d.graph)
    if f is None:
        return EXIT_NO_FLOW, "none\n"
    return EXIT_OK, io.dumps(f.to_json())


def _canonicalize(path: str, args) -> tuple[int, str]:
    d = _load(path)
    order = _ints(args.order) if args.order else None
    if isinstance(d, PhasePolyDiagram):
        pp, steps = phasepoly_to_canonical(d, order)
    else:
        c = canonicalize(d, order)
        pp, steps = c.diagram, c.steps
    if args.trace:
        Path(args.trace).write_text(io.dump_trace(steps))
    return EXIT_OK, io.dumps(io.diagram_to_json(pp, kind="canonical", order=order))


def _simulate(path: str, args) -> tuple[int, str]:
    s = evaluate_diagram(_load(path), wire_limit=args.wire_limit)
    return EXIT_OK, io.dumps(s.reduced().to_json())


def _export_dot(path: str, args) -> tuple[int, str]:
    return EXIT_OK, io.to_dot(_load(path))


BATCH = {"flow-find": _flow_find, "canonicalize": _canonicalize, "simulate": _simulate,
         "export-dot": _export_dot}


def _guarded(fn, path: str, args) -> tuple[int, str, str]:
    """Run ``fn`` and turn known failures into ``(code, stdout, stderr)``."""
    try:
        code, out = fn(path, args)
        return code, out, ""
    except CliError as e:
        return e.code, "", f"error: {e}\n"
    except (SizeLimitError, OracleLimitError) as e:
        return EXIT_SIZE, "", f"error: {path}: size limit: {e}\n"
    except (RewriteError, NoFlowError, MalformedFlowError, UnknownVertexError, ValueError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        return EXIT_PRECONDITION, "", f"error: {path}: {msg}\n"


def _batch(name: str, args) -> int:
    fn = BATCH[name]
    paths = args.files
    if len(paths) > 1 and args.trace:
        sys.stderr.write("error: --trace takes a single input file\n")
        return EXIT_PRECONDITION
    if len(paths) == 1 or args.jobs <= 1:
        results = [_guarded(fn, p, args) for p in paths]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_guarded, [fn] * len(paths), paths, [args] * len(paths)))
    for path, (code, out, err) in zip(paths, results):
        if args.out_dir and out:
            suffix = ".dot" if name == "export-dot" else ".json"
            Path(args.out_dir, Path(path).stem + suffix).write_text(out)
        else:
            if len(paths) > 1:
                sys.stdout.write(f"# {path}\n")
            sys.stdout.write(out)
        sys.stderr.write(err)
    return max(code for code, _, _ in results)


# -- single-shot commands --------------------------------------------------------

def _flow_verify(args) -> int:
    d = _mbqc(args.diagram)
    try:
        f = io.flow_from_json(_read_json(args.flow))
    except io.SchemaError as e:
        raise CliError(EXIT_SCHEMA, f"{args.flow}: {e}") from None
    bad = verify_flow(d.graph, f, literal_condition3=args.literal_condition3)
    if bad is None:
        print("ok")
        return EXIT_OK
    print(bad)
    return EXIT_VIOLATION


def _rewrite(args) -> int:
    if args.replay:
        if len(args.positional) != 1:
            raise CliError(EXIT_SCHEMA, "usage: rewrite --replay TRACE DIAGRAM")
        d = _mbqc(args.positional[0])
        try:
            steps = io.load_trace(Path(args.replay).read_text())
        except OSError as e:
            raise CliError(EXIT_SCHEMA, f"{args.replay}: {e.strerror}") from None
        except io.SchemaError as e:
            raise CliError(EXIT_SCHEMA, f"{args.replay}: {e}") from None
        _write(args.output, io.dumps(io.diagram_to_json(apply_trace(d, steps))))
        return EXIT_OK
    if len(args.positional) != 2 or args.positional[0] not in ("lc", "pivot", "zdelete", "zinsert"):
        raise CliError(EXIT_SCHEMA, "usage: rewrite {lc,pivot,zdelete,zinsert} DIAGRAM [options]")
    kind, path = args.positional
    d = _mbqc(path)
    if kind in ("lc", "zdelete"):
        if args.vertex is None:
            raise CliError(EXIT_SCHEMA, f"{kind} needs --vertex")
        step = step_for(d, kind, args.vertex)
    elif kind == "pivot":
        edge = _ints(args.edge or "")
        if len(edge) != 2:
            raise CliError(EXIT_SCHEMA, "pivot needs --edge u,v")
        step = step_for(d, kind, *edge)
    else:
        if args.neighbors is None:
            raise CliError(EXIT_SCHEMA, "zinsert needs --neighbors a,b,...")
        step = step_for(d, kind, _ints(args.neighbors), 1 if args.sign == "+" else -1)
        if args.vertex is not None:
            step = type(step)(args.vertex, step.neighbours, step.sign)
    out = apply_step(d, step)
    line = io.dump_trace([step])
    if args.emit_step:
        Path(args.emit_step).write_text(line)
    else:
        sys.stderr.write(line)
    _write(args.output, io.dumps(io.diagram_to_json(out)))
    return EXIT_OK


def _equiv(args) -> int:
    a, b = _mbqc(args.a), _mbqc(args.b)
    order = _ints(args.order) if args.order else None
    try:
        steps = decide_equiv(a, b, order)
    except NotEquivalentError as e:
        print(f"not equivalent: {e}")
        return EXIT_NOT_EQUIV
    if args.emit_trace:
        Path(args.emit_trace).write_text(io.dump_trace(steps))
    print(f"equivalent: {len(steps)} steps")
    return EXIT_OK


def _random(args) -> int:
    if args.vertices < 0:
        raise CliError(EXIT_SCHEMA, "--vertices must be non-negative")
    make = random_flowed_diagram if args.ensure_flow else random_diagram
    try:
        d = make(args.vertices, args.seed)
    except RuntimeError as e:
        raise CliError(EXIT_PRECONDITION, str(e)) from None
    _write(args.output, io.dumps(io.diagram_to_json(d)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stabflow", description="Pauli flow and stabilizer ZX rewriting")
    sub = p.add_subparsers(dest="command", required=True)

    def batch_opts(q):
        q.add_argument("files", nargs="+")
        q.add_argument("--jobs", type=int, default=1, help="worker processes for several input files")
        q.add_argument("--out-dir", help="write one output file per input into this directory")

    flow = sub.add_parser("flow", help="verify or find a Pauli flow")
    fsub = flow.add_subparsers(dest="flow_command", required=True)
    fv = fsub.add_parser("verify")
    fv.add_argument("diagram")
    fv.add_argument("--flow", required=True)
    fv.add_argument("--literal-condition3", action="store_true",
                    help="read condition 3 without the v != u exclusion")
    ff = fsub.add_parser("find")
    batch_opts(ff)

    rw = sub.add_parser("rewrite", help="apply one rewrite, or replay a trace with --replay")
    rw.add_argument("positional", nargs="+", metavar="ARG")
    rw.add_argument("--vertex", type=int)
    rw.add_argument("--edge")
    rw.add_argument("--neighbors", "--neighbours", dest="neighbors")
    rw.add_argument("--sign", choices=["+", "-"], default="+")
    rw.add_argument("--replay", metavar="TRACE")
    rw.add_argument("--emit-step", metavar="FILE")
    rw.add_argument("-o", "--output")

    can = sub.add_parser("canonicalize", help="canonical phase-polynomial diagram")
    batch_opts(can)
    can.add_argument("--trace", metavar="FILE")
    can.add_argument("--order", help="qubit order as a comma-separated permutation of 1..n")

    eq = sub.add_parser("equiv", help="decide equality of two diagrams")
    eq.add_argument("a")
    eq.add_argument("b")
    eq.add_argument("--emit-trace", metavar="FILE")
    eq.add_argument("--order")

    sim = sub.add_parser("simulate", help="exact amplitudes (inputs first, then outputs)")
    batch_opts(sim)
    sim.add_argument("--wire-limit", type=int, default=12)

    rnd = sub.add_parser("random", help="seeded random MBQC+LC diagram")
    rnd.add_argument("--vertices", type=int, required=True)
    rnd.add_argument("--seed", type=int, required=True)
    rnd.add_argument("--ensure-flow", action="store_true")
    rnd.add_argument("-o", "--output")

    dot = sub.add_parser("export-dot", help="Graphviz DOT export")
    batch_opts(dot)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_SCHEMA if e.code else EXIT_OK
    for attr in ("trace", "out_dir"):
        if not hasattr(args, attr):
            setattr(args, attr, None)
    try:
        if args.command == "flow":
            if args.flow_command == "verify":
                return _flow_verify(args)
            return _batch("flow-find", args)
        if args.command in ("canonicalize", "simulate", "export-dot"):
            return _batch(args.command, args)
        handler = {"rewrite": _rewrite, "equiv": _equiv, "random": _random}[args.command]
        code, out, err = _guarded(lambda _p, a: (handler(a), ""), "", args)
        sys.stderr.write(err.replace("error: : ", "error: "))
        return code
    except CliError as e:
        sys.stderr.write(f"error: {e}\n")
        return e.code


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
