"""Command-line front end.

Artifact commands (family, present, construct) write the artifact's own
JSON.  Report commands (color, bound, group, validate) write a
``{"status", "payload", "diagnostics"}`` envelope.  Exit codes: 0 ok,
2 bad input, 3 a resource guard tripped.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import bounds, coloring, diagram, groups, presentation
from .errors import BudqError, InputError, InvalidParameterError
from .quandle import DEFAULT_GROUP_CAP, FiniteQuandle, make_alexander, make_conjugation, make_dihedral, make_trivial

CAP_ENV = "BUDQ_CAP"


@dataclass
class CommandResult:
    status: str
    payload: object = None
    diagnostics: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"status": self.status, "payload": self.payload, "diagnostics": self.diagnostics}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# -- inputs -------------------------------------------------------------------


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _load_json(path: str):
    data = _read(path)
    try:
        return json.loads(data)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None


def _builtin_source(spec: str):
    """``@torus:p:q``, ``@curve:d``, ``@rp2``, ``@torus_surface``,
    ``@spun_trefoil``, ``@unknot``."""
    kind, *args = spec[1:].split(":")
    try:
        ints = [int(a) for a in args]
    except ValueError:
        raise InvalidParameterError(f"bad builtin source {spec!r}") from None
    table = {
        ("torus", 2): lambda: diagram.family_torus_link(*ints),
        ("curve", 1): lambda: diagram.family_algebraic_curve(*ints),
        ("rp2", 0): diagram.family_unknotted_projective_plane,
        ("torus_surface", 0): diagram.family_unknotted_torus,
        ("spun_trefoil", 0): diagram.family_spun_trefoil,
        ("unknot", 0): diagram.unknot_diagram,
    }
    make = table.get((kind, len(ints)))
    if make is None:
        raise InvalidParameterError(f"unknown builtin source {spec!r}")
    return make()


def load_source(spec: str):
    """A diagram, augmented presentation or group presentation, by sniffing."""
    if spec.startswith("@"):
        return _builtin_source(spec)
    data = _read(spec)
    try:
        obj = json.loads(data)
    except json.JSONDecodeError:
        return diagram.parse_diagram(data)  # raises with the byte offset
    if isinstance(obj, dict) and "relators" in obj:
        return presentation.GroupPresentation.from_json(obj)
    if isinstance(obj, dict) and "generators" in obj:
        return presentation.AugmentedPresentation.from_json(obj)
    return diagram.parse_diagram(data)


def load_presentation(spec: str) -> presentation.AugmentedPresentation:
    src = load_source(spec)
    if isinstance(src, diagram.BandedUnlinkDiagram):
        return presentation.extract_presentation(src)
    if isinstance(src, presentation.GroupPresentation):
        raise InputError(f"{spec}: expected a diagram or quandle presentation, got a group presentation")
    return src


def load_group_presentation(spec: str) -> presentation.GroupPresentation:
    src = load_source(spec)
    if isinstance(src, presentation.GroupPresentation):
        return src
    if isinstance(src, diagram.BandedUnlinkDiagram):
        src = presentation.extract_presentation(src)
    return presentation.group_presentation(src)


def _named_groups() -> dict[str, groups.FiniteGroup]:
    named = dict(groups.small_group_battery())
    named["S4"] = groups.symmetric_group(4)
    return named


def load_group(spec: str) -> groups.FiniteGroup:
    named = _named_groups()
    if spec in named:
        return named[spec]
    if spec.startswith("S") and spec[1:].isdigit():
        return groups.symmetric_group(int(spec[1:]))
    if spec.startswith("Z") and spec[1:].isdigit():
        return groups.cyclic_group(int(spec[1:]))
    if spec.startswith("D") and spec[1:].isdigit():
        return groups.dihedral_group(int(spec[1:]))
    return groups.FiniteGroup.from_json(_load_json(spec))


def load_quandle(spec: str) -> FiniteQuandle:
    """``dihedral:n``, ``trivial:n``, ``alexander:n:t``, ``conj:GROUP`` (a
    group name or group JSON file), or a quandle JSON file."""
    kind, _, rest = spec.partition(":")
    try:
        if kind == "dihedral":
            return make_dihedral(int(rest))
        if kind == "trivial":
            return make_trivial(int(rest))
        if kind == "alexander":
            n, t = rest.split(":")
            return make_alexander(int(n), int(t))
    except ValueError as e:
        if isinstance(e, InputError):
            raise
        raise InvalidParameterError(f"bad quandle spec {spec!r}") from None
    if kind == "conj" and rest:
        return make_conjugation(load_group(rest))
    return FiniteQuandle.from_json(_load_json(spec))


def _cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_GROUP_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise InvalidParameterError(f"{CAP_ENV}={raw!r} is not an integer") from None
    if cap < 1:
        raise InvalidParameterError(f"{CAP_ENV} must be positive")
    return cap


# -- construct micro-language -------------------------------------------------


def run_construct(script: str, base: presentation.AugmentedPresentation) -> presentation.AugmentedPresentation:
    """One operation per line; ``#`` starts a comment.

    ``twist-spin N``, ``attach-order G D``, ``connect G1 G2 [SOURCE]`` (SOURCE
    defaults to the current presentation), ``propagate``, ``simplify``.
    """
    cur = base
    for lineno, raw in enumerate(script.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        op, *args = line.split()
        try:
            if op == "twist-spin" and len(args) == 1:
                cur = presentation.twist_spin(cur, int(args[0]))
            elif op == "attach-order" and len(args) == 2:
                cur = presentation.attach_order_relation(cur, args[0], int(args[1]))
            elif op == "connect" and len(args) in (2, 3):
                other = load_presentation(args[2]) if len(args) == 3 else cur
                cur = presentation.connected_sum(cur, args[0], other, args[1])
            elif op == "propagate" and not args:
                cur = presentation.propagate_order_relations(cur)
            elif op == "simplify" and not args:
                cur = presentation.simplify(cur)
            else:
                raise InputError(f"unknown operation or wrong arguments: {line!r}")
        except InputError as e:
            raise InputError(f"construct line {lineno}: {e}") from None
        except ValueError:
            raise InputError(f"construct line {lineno}: expected integer arguments in {line!r}") from None
    return cur


# -- commands -------------------------------------------------------------------


def _emit(args, text: str) -> None:
    out = getattr(args, "output", None)
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_family(args) -> int:
    if args.kind == "torus":
        if args.p is None or args.q is None:
            raise InvalidParameterError("family torus needs --p and --q")
        d = diagram.family_torus_link(args.p, args.q)
    elif args.kind == "curve":
        if args.d is None:
            raise InvalidParameterError("family curve needs --d")
        d = diagram.family_algebraic_curve(args.d)
    elif args.kind == "rp2":
        d = diagram.family_unknotted_projective_plane()
    elif args.kind == "torus_surface":
        d = diagram.family_unknotted_torus()
    else:
        d = diagram.family_spun_trefoil()
    _emit(args, diagram.serialize_diagram(d).decode() if args.format == "json" else _diagram_text(d))
    return 0


def _diagram_text(d) -> str:
    meta = d.surface_meta
    return (
        f"{d.name or '<unnamed>'}: {len(d.arcs)} arcs, {len(d.crossings)} crossings, "
        f"{len(d.unlink_components)} unlink / {len(d.dotted_components)} dotted components, "
        f"{len(d.bands)} bands, {len(d.framed_components)} framed; "
        f"chi={meta.euler_characteristic} orientable={meta.orientable}\n"
    )


def cmd_present(args) -> int:
    p = load_presentation(args.input)
    if args.propagate:
        p = presentation.propagate_order_relations(p)
    if args.simplify:
        p = presentation.simplify(p)
    obj = presentation.group_presentation(p) if args.group else p
    _emit(args, dumps(obj.to_json()) if args.format == "json" else str(obj) + "\n")
    return 0


def cmd_construct(args) -> int:
    base = load_presentation(args.base)
    script = _read(args.script).decode() if args.script else ""
    for op in args.op or []:
        script += "\n" + op
    p = run_construct(script, base)
    _emit(args, dumps(p.to_json()) if args.format == "json" else str(p) + "\n")
    return 0


def cmd_color(args) -> CommandResult:
    p = load_presentation(args.input)
    q = load_quandle(args.quandle)
    cap = _cap()
    target = {"spec": args.quandle, "size": q.size}
    t0 = time.perf_counter()
    payload = {"target": target, "presentation_digest": p.digest()}
    if args.list is not None:
        cols = coloring.list_colorings(p, q, args.list, cap=cap)
        payload["colorings"] = [c.to_json() for c in cols]
        payload["count"] = len(cols)
    else:
        payload["count"] = coloring.count_colorings(p, q, cap=cap, jobs=args.jobs)
    payload["elapsed_ms"] = round((time.perf_counter() - t0) * 1000) if args.timing else None
    return CommandResult("ok", payload)


def cmd_bound(args) -> CommandResult:
    if args.count is None or args.qsize is None:
        raise InvalidParameterError("bound needs --count and --qsize")
    if args.classical:
        value = bounds.classical_bridge_lower_bound(args.count, args.qsize)
        return CommandResult("ok", {"coloring_count": args.count, "target_size": args.qsize, "bound": value})
    if args.chi is None:
        raise InvalidParameterError("bound needs --chi (or --classical)")
    return CommandResult("ok", bounds.bridge_lower_bound(args.count, args.qsize, args.chi).to_json())


def cmd_group(args) -> CommandResult:
    g = load_group_presentation(args.input)
    if args.action == "abelianize":
        ab = groups.abelianization(g)
        return CommandResult("ok", {**ab.to_json(), "text": str(ab)})
    if not args.group:
        raise InvalidParameterError("homcount needs a target group (name or JSON file)")
    h = load_group(args.group)
    reduced = groups.tietze_eliminate(g)
    diags = []
    if len(reduced.generators) < len(g.generators):
        diags.append(f"tietze-reduced {len(g.generators)} -> {len(reduced.generators)} generators")
    return CommandResult("ok", {"count": groups.count_group_homs(reduced, h), "target_size": h.size}, diags)


def cmd_validate(args) -> CommandResult:
    data = _read(args.input)
    try:
        obj = json.loads(data)
    except json.JSONDecodeError:
        obj = None
    if isinstance(obj, dict) and "table" in obj and "arcs" not in obj:
        from .quandle import validate_quandle

        report = validate_quandle(obj["table"])
        payload = {"kind": "quandle", "ok": report.ok, "kei": report.kei, "summary": report.summary()}
        return CommandResult("ok" if report.ok else "error", payload, [] if report.ok else [report.summary()])
    d = diagram.parse_diagram(data)
    return CommandResult("ok", {"kind": "diagram", "ok": True, "name": d.name})


def _text(result: CommandResult) -> str:
    if result.status != "ok":
        return "error: " + "; ".join(result.diagnostics) + "\n"
    p = result.payload
    lines = [f"{k}: {p[k]}" for k in sorted(p)] if isinstance(p, dict) else [str(p)]
    return "\n".join(lines + [f"note: {d}" for d in result.diagnostics]) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="budq", description="Quandle colorings of banded unlink diagrams.")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    # --format is accepted after the subcommand too
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    f = sub.add_parser("family", parents=[common], help="write a diagram from a built-in family")
    f.add_argument("kind", choices=("torus", "curve", "rp2", "torus_surface", "spun_trefoil"))
    f.add_argument("--p", type=int)
    f.add_argument("--q", type=int)
    f.add_argument("--d", type=int)
    f.add_argument("-o", "--output")
    f.set_defaults(func=cmd_family)

    p = sub.add_parser("present", parents=[common], help="extract the presentation of a diagram")
    p.add_argument("input")
    p.add_argument("--simplify", action="store_true")
    p.add_argument("--propagate", action="store_true", help="spread order relations first")
    p.add_argument("--group", action="store_true", help="output the group presentation")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_present)

    c = sub.add_parser("color", parents=[common], help="count or list colorings")
    c.add_argument("input", help="diagram or presentation file, or @builtin")
    c.add_argument("--quandle", required=True)
    mode = c.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true", help="(default)")
    mode.add_argument("--list", type=int, metavar="N")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--timing", action="store_true", help="report elapsed_ms (makes output non-deterministic)")
    c.set_defaults(func=cmd_color)

    b = sub.add_parser("bound", parents=[common], help="bridge-number lower bound")
    b.add_argument("--count", type=int)
    b.add_argument("--qsize", type=int)
    b.add_argument("--chi", type=int)
    b.add_argument("--classical", action="store_true")
    b.set_defaults(func=cmd_bound)

    g = sub.add_parser("group", parents=[common], help="group invariants")
    g.add_argument("input")
    g.add_argument("action", choices=("abelianize", "homcount"))
    g.add_argument("group", nargs="?")
    g.set_defaults(func=cmd_group)

    k = sub.add_parser("construct", parents=[common], help="apply a construction script to a presentation")
    k.add_argument("script", nargs="?", help="script file ('-' for stdin)")
    k.add_argument("--base", required=True, help="diagram or presentation file, or @builtin")
    k.add_argument("--op", action="append", help="extra operation line (repeatable)")
    k.add_argument("-o", "--output")
    k.set_defaults(func=cmd_construct)

    v = sub.add_parser("validate", parents=[common], help="validate a diagram or quandle file")
    v.add_argument("input")
    v.set_defaults(func=cmd_validate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except BudqError as e:
        result = CommandResult("error", None, [str(e)])
        if args.format == "json":
            sys.stdout.write(dumps(result.to_json()))
        else:
            sys.stderr.write(_text(result))
        return e.exit_code
    if isinstance(out, CommandResult):
        sys.stdout.write(dumps(out.to_json()) if args.format == "json" else _text(out))
        return 0 if out.status == "ok" else 2
    return out


if __name__ == "__main__":
    sys.exit(main())
