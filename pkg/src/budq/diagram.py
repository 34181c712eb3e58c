"""Banded unlink diagrams as combinatorial data, plus the JSON file format.

A diagram is a set of arcs grouped into cyclically ordered components.  An
arc ends where it passes under something; each such spot is a crossing
recording the incoming arc, the outgoing arc, what passes over, and a sign.
Bands and framed (2-handle) circles carry no arcs of their own: they only
record the word of arcs that pass over them.

Classical link diagrams are the special case with only unlink arcs and
arc-over crossings (see :func:`is_classical`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import jsonschema

from .errors import DiagramParseError, DiagramValidationError, InvalidParameterError, SchemaError

UNLINK = "unlink"
DOTTED = "dotted"
OVER_TYPES = ("arc", "band", "framed")


@dataclass(frozen=True)
class Arc:
    id: str
    kind: str = UNLINK


@dataclass(frozen=True)
class Component:
    id: str
    arcs: tuple[str, ...]


@dataclass(frozen=True)
class OverRef:
    type: str
    id: str


@dataclass(frozen=True)
class Crossing:
    id: str
    under_in: str
    under_out: str
    over: OverRef
    sign: int = 1


@dataclass(frozen=True)
class Underpass:
    over: str
    sign: int = 1


@dataclass(frozen=True)
class Band:
    id: str
    attach_from: str
    attach_to: str
    underpasses: tuple[Underpass, ...] = ()


@dataclass(frozen=True)
class FramedComponent:
    id: str
    framing: int
    underpasses: tuple[Underpass, ...] = ()


@dataclass(frozen=True)
class SurfaceMeta:
    euler_characteristic: int = 2
    orientable: bool = True


@dataclass(frozen=True)
class BandedUnlinkDiagram:
    name: str = ""
    arcs: tuple[Arc, ...] = ()
    unlink_components: tuple[Component, ...] = ()
    dotted_components: tuple[Component, ...] = ()
    crossings: tuple[Crossing, ...] = ()
    bands: tuple[Band, ...] = ()
    framed_components: tuple[FramedComponent, ...] = ()
    surface_meta: SurfaceMeta = field(default_factory=SurfaceMeta)

    def arc_kind(self, arc_id: str) -> str | None:
        for a in self.arcs:
            if a.id == arc_id:
                return a.kind
        return None

    def components(self) -> tuple[Component, ...]:
        return self.unlink_components + self.dotted_components

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "arcs": [{"id": a.id, "kind": a.kind} for a in self.arcs],
            "unlink_components": [{"id": c.id, "arcs": list(c.arcs)} for c in self.unlink_components],
            "dotted_components": [{"id": c.id, "arcs": list(c.arcs)} for c in self.dotted_components],
            "crossings": [
                {
                    "id": c.id,
                    "under_in": c.under_in,
                    "under_out": c.under_out,
                    "over": {"type": c.over.type, "id": c.over.id},
                    "sign": c.sign,
                }
                for c in self.crossings
            ],
            "bands": [
                {
                    "id": b.id,
                    "attach_from": b.attach_from,
                    "attach_to": b.attach_to,
                    "underpasses": [{"over": u.over, "sign": u.sign} for u in b.underpasses],
                }
                for b in self.bands
            ],
            "framed_components": [
                {"id": f.id, "framing": f.framing, "underpasses": [{"over": u.over, "sign": u.sign} for u in f.underpasses]}
                for f in self.framed_components
            ],
            "surface_meta": {
                "euler_characteristic": self.surface_meta.euler_characteristic,
                "orientable": self.surface_meta.orientable,
            },
        }

    @classmethod
    def from_json(cls, obj: dict) -> BandedUnlinkDiagram:
        """Build from an already schema-checked JSON object (no validation)."""
        ups = lambda lst: tuple(Underpass(u["over"], u["sign"]) for u in lst)  # noqa: E731
        meta = obj.get("surface_meta") or {}
        return cls(
            name=obj.get("name", ""),
            arcs=tuple(Arc(a["id"], a["kind"]) for a in obj.get("arcs", [])),
            unlink_components=tuple(Component(c["id"], tuple(c["arcs"])) for c in obj.get("unlink_components", [])),
            dotted_components=tuple(Component(c["id"], tuple(c["arcs"])) for c in obj.get("dotted_components", [])),
            crossings=tuple(
                Crossing(c["id"], c["under_in"], c["under_out"], OverRef(c["over"]["type"], c["over"]["id"]), c["sign"])
                for c in obj.get("crossings", [])
            ),
            bands=tuple(
                Band(b["id"], b["attach_from"], b["attach_to"], ups(b.get("underpasses", [])))
                for b in obj.get("bands", [])
            ),
            framed_components=tuple(
                FramedComponent(f["id"], f["framing"], ups(f.get("underpasses", [])))
                for f in obj.get("framed_components", [])
            ),
            surface_meta=SurfaceMeta(meta.get("euler_characteristic", 2), meta.get("orientable", True)),
        )


# -- file format ------------------------------------------------------------

_ID = {"type": "string", "minLength": 1}
_SIGN = {"enum": [1, -1]}
_UNDERPASS = {
    "type": "object",
    "required": ["over", "sign"],
    "properties": {"over": _ID, "sign": _SIGN},
    "additionalProperties": False,
}
_COMPONENT = {
    "type": "object",
    "required": ["id", "arcs"],
    "properties": {"id": _ID, "arcs": {"type": "array", "items": _ID, "minItems": 1}},
    "additionalProperties": False,
}
DIAGRAM_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "name": {"type": "string"},
        "arcs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "kind"],
                "properties": {"id": _ID, "kind": {"enum": [UNLINK, DOTTED]}},
                "additionalProperties": False,
            },
        },
        "unlink_components": {"type": "array", "items": _COMPONENT},
        "dotted_components": {"type": "array", "items": _COMPONENT},
        "crossings": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "under_in", "under_out", "over", "sign"],
                "properties": {
                    "id": _ID,
                    "under_in": _ID,
                    "under_out": _ID,
                    "over": {
                        "type": "object",
                        "required": ["type", "id"],
                        "properties": {"type": {"enum": list(OVER_TYPES)}, "id": _ID},
                        "additionalProperties": False,
                    },
                    "sign": _SIGN,
                },
                "additionalProperties": False,
            },
        },
        "bands": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "attach_from", "attach_to"],
                "properties": {
                    "id": _ID,
                    "attach_from": _ID,
                    "attach_to": _ID,
                    "underpasses": {"type": "array", "items": _UNDERPASS},
                },
                "additionalProperties": False,
            },
        },
        "framed_components": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "framing"],
                "properties": {
                    "id": _ID,
                    "framing": {"type": "integer"},
                    "underpasses": {"type": "array", "items": _UNDERPASS},
                },
                "additionalProperties": False,
            },
        },
        "surface_meta": {
            "type": "object",
            "required": ["euler_characteristic", "orientable"],
            "properties": {"euler_characteristic": {"type": "integer"}, "orientable": {"type": "boolean"}},
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}

_VALIDATOR = jsonschema.Draft7Validator(DIAGRAM_SCHEMA)


def _json_path(path) -> str:
    out = ""
    for p in path:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out


def parse_diagram(data: bytes | str) -> BandedUnlinkDiagram:
    """Parse and validate a diagram file.

    Raises DiagramParseError (with a byte offset) on bad JSON, SchemaError
    (with a field path) on schema violations, and DiagramValidationError
    listing every combinatorial failure.
    """
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise DiagramParseError(f"invalid UTF-8: {e.reason}", e.start) from None
    else:
        text = data
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise DiagramParseError(e.msg, len(text[: e.pos].encode("utf-8"))) from None
    errors = sorted(_VALIDATOR.iter_errors(obj), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        e = errors[0]
        raise SchemaError(_json_path(e.absolute_path), e.message)
    d = BandedUnlinkDiagram.from_json(obj)
    report = validate_diagram(d)
    if not report.ok:
        raise DiagramValidationError(report.failures)
    return d


def serialize_diagram(d: BandedUnlinkDiagram) -> bytes:
    return (json.dumps(d.to_json(), sort_keys=True, indent=2) + "\n").encode("utf-8")


# -- validation -------------------------------------------------------------


@dataclass(frozen=True)
class DiagramReport:
    failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self):
        return "PASS" if self.ok else "FAIL\n  " + "\n  ".join(self.failures)


def _duplicates(ids: Iterable[str]) -> list[str]:
    seen, dup = set(), []
    for i in ids:
        if i in seen and i not in dup:
            dup.append(i)
        seen.add(i)
    return dup


def validate_diagram(d: BandedUnlinkDiagram) -> DiagramReport:
    """Check combinatorial consistency; every failure is reported."""
    f: list[str] = []
    for what, ids in (
        ("arc", [a.id for a in d.arcs]),
        ("component", [c.id for c in d.components()]),
        ("crossing", [c.id for c in d.crossings]),
        ("band", [b.id for b in d.bands]),
        ("framed component", [c.id for c in d.framed_components]),
    ):
        for i in _duplicates(ids):
            f.append(f"duplicate {what} id {i!r}")

    kinds = {a.id: a.kind for a in d.arcs}
    owner: dict[str, list[str]] = {a.id: [] for a in d.arcs}
    for comp_kind, comps in ((UNLINK, d.unlink_components), (DOTTED, d.dotted_components)):
        for c in comps:
            for i in _duplicates(c.arcs):
                f.append(f"component {c.id!r}: duplicate arc {i!r} in cycle")
            for a in dict.fromkeys(c.arcs):
                if a not in kinds:
                    f.append(f"component {c.id!r}: unknown arc {a!r}")
                    continue
                owner[a].append(c.id)
                if kinds[a] != comp_kind:
                    f.append(f"component {c.id!r}: kind mismatch, arc {a!r} is {kinds[a]} in a {comp_kind} component")
    for a, cs in owner.items():
        if not cs:
            f.append(f"arc {a!r} belongs to no component")
        elif len(cs) > 1:
            f.append(f"arc {a!r} belongs to several components {cs}")

    targets = {
        "arc": set(kinds),
        "band": {b.id for b in d.bands},
        "framed": {c.id for c in d.framed_components},
    }
    pair_count: dict[tuple[str, str], list[str]] = {}
    for c in d.crossings:
        for end in ("under_in", "under_out"):
            if getattr(c, end) not in kinds:
                f.append(f"crossing {c.id!r}: {end} names missing arc {getattr(c, end)!r}")
        if c.over.type not in targets:
            f.append(f"crossing {c.id!r}: bad over type {c.over.type!r}")
        elif c.over.id not in targets[c.over.type]:
            f.append(f"crossing {c.id!r}: over {c.over.type} {c.over.id!r} does not exist")
        if c.sign not in (1, -1):
            f.append(f"crossing {c.id!r}: sign must be +1 or -1")
        pair_count.setdefault((c.under_in, c.under_out), []).append(c.id)

    expected = set()
    for comp in d.components():
        arcs = comp.arcs
        if len(arcs) == 1:
            a = arcs[0]
            expected.add((a, a))
            n = len(pair_count.get((a, a), []))
            if n > 1:
                f.append(f"component {comp.id!r}: {n} crossings join {a!r} to itself")
            continue
        for i, a in enumerate(arcs):
            pair = (a, arcs[(i + 1) % len(arcs)])
            expected.add(pair)
            n = len(pair_count.get(pair, []))
            if n != 1:
                f.append(f"component {comp.id!r}: arcs {pair[0]!r} -> {pair[1]!r} joined by {n} crossings, need 1")
    for pair, cids in pair_count.items():
        if pair not in expected and all(p in kinds for p in pair):
            for cid in cids:
                f.append(f"crossing {cid!r}: {pair[0]!r} -> {pair[1]!r} are not consecutive in any component")

    for b in d.bands:
        for end in ("attach_from", "attach_to"):
            a = getattr(b, end)
            if a not in kinds:
                f.append(f"band {b.id!r}: {end} names missing arc {a!r}")
            elif kinds[a] != UNLINK:
                f.append(f"band {b.id!r}: kind mismatch, {end} {a!r} is a {kinds[a]} arc")
        for u in b.underpasses:
            if u.over not in kinds:
                f.append(f"band {b.id!r}: underpass names missing arc {u.over!r}")
    for c in d.framed_components:
        for u in c.underpasses:
            if u.over not in kinds:
                f.append(f"framed component {c.id!r}: underpass names missing arc {u.over!r}")
    return DiagramReport(tuple(f))


def is_classical(d: BandedUnlinkDiagram) -> bool:
    return (
        not d.dotted_components
        and not d.bands
        and not d.framed_components
        and all(a.kind == UNLINK for a in d.arcs)
        and all(c.over.type == "arc" for c in d.crossings)
    )


def ensure_classical(d: BandedUnlinkDiagram) -> BandedUnlinkDiagram:
    if not is_classical(d):
        raise InvalidParameterError(f"diagram {d.name!r} is not a classical link diagram")
    return d


# -- constructors -----------------------------------------------------------


def closed_braid_diagram(braid: Sequence[int], strands: int, name: str = "") -> BandedUnlinkDiagram:
    """Diagram of the closure of a braid word.

    Letter ``i`` is sigma_i, ``-i`` its inverse (1 <= i < strands).  In
    sigma_i the strand at position i crosses over to position i+1 and the
    crossing has sign +1; in the inverse the strand from position i+1 goes
    over and the sign is -1.  Arcs, crossings and components are numbered in
    the order they are met when tracing from the top of each strand.
    """
    if strands < 1:
        raise InvalidParameterError("braid needs at least one strand")
    for s in braid:
        if s == 0 or abs(s) >= strands:
            raise InvalidParameterError(f"braid letter {s} out of range for {strands} strands")

    # segments: maximal pieces between undercrossings, before closing up
    n_seg = strands
    cur = list(range(strands))
    raw = []  # (under_in_seg, under_out_seg, over_seg, sign)
    for s in braid:
        i = abs(s) - 1
        left, right = cur[i], cur[i + 1]
        new = n_seg
        n_seg += 1
        if s > 0:
            raw.append((right, new, left, 1))
            cur[i], cur[i + 1] = new, left
        else:
            raw.append((left, new, right, -1))
            cur[i], cur[i + 1] = right, new

    parent = list(range(n_seg))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for j in range(strands):
        parent[find(cur[j])] = find(j)

    # trace each component to get the cyclic order of its crossings
    by_in: dict[int, int] = {}
    for k, (a, _, _, _) in enumerate(raw):
        by_in[a] = k
    next_seg = {}  # segment -> segment it runs into at the closure
    for j in range(strands):
        next_seg[cur[j]] = j

    arc_names: dict[int, str] = {}
    crossing_names: dict[int, str] = {}
    comps = []
    seen_seg = set()

    def name_arc(seg):
        r = find(seg)
        if r not in arc_names:
            arc_names[r] = f"a{len(arc_names)}"
        return arc_names[r]

    for j in range(strands):
        if j in seen_seg:
            continue
        order = []
        seg = j
        while seg not in seen_seg:
            seen_seg.add(seg)
            if seg in by_in:
                k = by_in[seg]
                order.append(k)
                seg = raw[k][1]
            else:
                seg = next_seg[seg]
        if order:
            first = name_arc(j)
            cycle = []
            for k in order:
                crossing_names[k] = f"c{len(crossing_names)}"
                cycle.append(name_arc(raw[k][1]))
            # rotate so the cycle starts with the arc leaving the top of strand j
            i0 = cycle.index(first)
            cycle = cycle[i0:] + cycle[:i0]
        else:
            cycle = [name_arc(j)]
        comps.append(tuple(cycle))

    ordered_arcs = sorted(arc_names.values(), key=lambda s: int(s[1:]))
    crossings = sorted(
        (
            Crossing(crossing_names[k], name_arc(a), name_arc(b), OverRef("arc", name_arc(o)), sign)
            for k, (a, b, o, sign) in enumerate(raw)
        ),
        key=lambda c: int(c.id[1:]),
    )
    return BandedUnlinkDiagram(
        name=name,
        arcs=tuple(Arc(a) for a in ordered_arcs),
        unlink_components=tuple(Component(f"K{i}", c) for i, c in enumerate(comps)),
        crossings=tuple(crossings),
    )


def family_torus_link(p: int, q: int) -> BandedUnlinkDiagram:
    """Closure of (sigma_1 ... sigma_{p-1})^q: q(p-1) crossings, gcd(p, q) components."""
    if p < 2 or q < 1:
        raise InvalidParameterError(f"torus link needs p >= 2 and q >= 1, got ({p}, {q})")
    return closed_braid_diagram(list(range(1, p)) * q, p, name=f"torus_link({p},{q})")


def unknot_diagram() -> BandedUnlinkDiagram:
    return BandedUnlinkDiagram(name="unknot", arcs=(Arc("x"),), unlink_components=(Component("K0", ("x",)),))


def family_algebraic_curve(d: int) -> BandedUnlinkDiagram:
    """Degree-d curve: d disks joined by d(d-1) untwisted bands, one +1-framed
    2-handle that every disk passes over once."""
    if d < 1:
        raise InvalidParameterError(f"degree must be >= 1, got {d}")
    names = [f"x{i}" for i in range(1, d + 1)]
    bands = []
    for i in range(d - 1):
        for k in range(d):
            bands.append(Band(f"b{i + 1}_{k + 1}", names[i], names[i + 1]))
    return BandedUnlinkDiagram(
        name=f"algebraic_curve({d})",
        arcs=tuple(Arc(n) for n in names),
        unlink_components=tuple(Component(f"L{i + 1}", (n,)) for i, n in enumerate(names)),
        bands=tuple(bands),
        framed_components=(FramedComponent("h", 1, tuple(Underpass(n, 1) for n in names)),),
        surface_meta=SurfaceMeta(3 * d - d * d, True),
    )


def family_unknotted_torus() -> BandedUnlinkDiagram:
    return BandedUnlinkDiagram(
        name="unknotted_torus",
        arcs=(Arc("x"),),
        unlink_components=(Component("L1", ("x",)),),
        bands=(Band("b1", "x", "x"), Band("b2", "x", "x")),
        surface_meta=SurfaceMeta(0, True),
    )


def family_unknotted_projective_plane() -> BandedUnlinkDiagram:
    """One disk and a half-twisted band running under its own disk twice."""
    return BandedUnlinkDiagram(
        name="unknotted_projective_plane",
        arcs=(Arc("x"),),
        unlink_components=(Component("L1", ("x",)),),
        bands=(Band("b1", "x", "x", (Underpass("x", 1), Underpass("x", 1))),),
        surface_meta=SurfaceMeta(1, False),
    )


def family_spun_trefoil() -> BandedUnlinkDiagram:
    """Spun trefoil: two disks and one band running under both of them."""
    return BandedUnlinkDiagram(
        name="spun_trefoil",
        arcs=(Arc("x1"), Arc("x2")),
        unlink_components=(Component("K1", ("x1",)), Component("K2", ("x2",))),
        bands=(Band("s", "x2", "x1", (Underpass("x1", -1), Underpass("x2", -1))),),
        surface_meta=SurfaceMeta(2, True),
    )


def spun_trefoil_with_curve(d: int) -> BandedUnlinkDiagram:
    """Spun trefoil (two disks, one band reading x1^-1 x2^-1) band-summed
    with the degree-d curve diagram."""
    if d < 1:
        raise InvalidParameterError(f"degree must be >= 1, got {d}")
    spun = family_spun_trefoil()
    curve = family_algebraic_curve(d)
    ren = {a.id: f"y{a.id[1:]}" for a in curve.arcs}
    arcs = spun.arcs + tuple(Arc(ren[a.id]) for a in curve.arcs)
    comps = spun.unlink_components + tuple(
        Component(f"C{i + 1}", (ren[c.arcs[0]],)) for i, c in enumerate(curve.unlink_components)
    )
    bands = list(spun.bands) + [Band("sum", "x1", "y1")]
    bands += [Band(f"c{b.id}", ren[b.attach_from], ren[b.attach_to]) for b in curve.bands]
    framed = tuple(
        FramedComponent(f.id, f.framing, tuple(Underpass(ren[u.over], u.sign) for u in f.underpasses))
        for f in curve.framed_components
    )
    return BandedUnlinkDiagram(
        name=f"spun_trefoil#curve({d})",
        arcs=arcs,
        unlink_components=comps,
        bands=tuple(bands),
        framed_components=framed,
        # connected sum with a sphere leaves chi unchanged
        surface_meta=SurfaceMeta(curve.surface_meta.euler_characteristic, True),
    )
