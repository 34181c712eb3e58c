"""Reidemeister moves on classical diagrams, combinatorially.

Moves act on the arc/crossing data only; planarity is not tracked, so a
move is accepted whenever its local algebra is consistent (the quandle
relations before and after determine each other).  After every move arcs
and crossings are renamed canonically: arcs ``a0, a1, ...`` in component
order, crossings ``c0, ...`` by the position of their incoming arc.

Sites:

* R1 insert ``(arc, sign)``: a kink at the end of ``arc``.
* R1 remove ``(crossing,)``: a crossing whose over arc is its own in or out arc.
* R2 insert ``(under, over, sign)``: push ``over`` across the end of ``under``.
* R2 remove ``(c1, c2)``: consecutive crossings under the same arc with
  opposite signs whose middle arc passes over nothing.
* R3 ``(c1, c2)``: consecutive crossings on one strand, under a top arc t and
  a middle arc m, where m itself passes under t at a third crossing.  The
  strand is moved to the other side of that crossing.  Direction is ignored.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .diagram import Arc, BandedUnlinkDiagram, Component, Crossing, OverRef, ensure_classical
from .errors import MoveError

KINDS = ("R1", "R2", "R3")
DIRECTIONS = ("insert", "remove")


@dataclass(frozen=True)
class Move:
    kind: str
    direction: str
    site: tuple

    def __str__(self):
        return f"{self.kind}-{self.direction}{self.site}"


class _Work:
    """Mutable copy: components as lists of arc ids, crossings as
    ``id -> [under_in, under_out, over, sign]``."""

    def __init__(self, d: BandedUnlinkDiagram):
        self.name = d.name
        self.comps = [list(c.arcs) for c in d.unlink_components]
        self.cross = {c.id: [c.under_in, c.under_out, c.over.id, c.sign] for c in d.crossings}
        self.counter = 0

    def fresh(self, prefix: str) -> str:
        self.counter += 1
        return f"_{prefix}{self.counter}"

    def comp_of(self, arc: str) -> list[str]:
        for c in self.comps:
            if arc in c:
                return c
        raise MoveError(f"unknown arc {arc!r}")

    def leaving(self, arc: str) -> str | None:
        """The crossing where ``arc`` ends (passes under), if any."""
        for cid, c in self.cross.items():
            if c[0] == arc:
                return cid
        return None

    def is_over(self, arc: str) -> bool:
        return any(c[2] == arc for c in self.cross.values())

    def rename_arc(self, old: str, new: str) -> None:
        for c in self.cross.values():
            for i in range(3):
                if c[i] == old:
                    c[i] = new

    def crossing(self, cid: str) -> list:
        if cid not in self.cross:
            raise MoveError(f"unknown crossing {cid!r}")
        return self.cross[cid]

    def freeze(self) -> BandedUnlinkDiagram:
        names: dict[str, str] = {}
        for comp in self.comps:
            for a in comp:
                names[a] = f"a{len(names)}"
        position = {a: i for i, a in enumerate(names)}
        ordered = sorted(self.cross.values(), key=lambda c: position[c[0]])
        crossings = tuple(
            Crossing(f"c{i}", names[c[0]], names[c[1]], OverRef("arc", names[c[2]]), c[3])
            for i, c in enumerate(ordered)
        )
        return BandedUnlinkDiagram(
            name=self.name,
            arcs=tuple(Arc(names[a]) for a in names),
            unlink_components=tuple(Component(f"K{i}", tuple(names[a] for a in c)) for i, c in enumerate(self.comps)),
            crossings=crossings,
        )


def canonical(d: BandedUnlinkDiagram) -> BandedUnlinkDiagram:
    return _Work(ensure_classical(d)).freeze()


def _insert_after(comp: list[str], arc: str, new: list[str]) -> None:
    i = comp.index(arc)
    comp[i + 1 : i + 1] = new


def _r1_insert(w: _Work, arc: str, sign: int) -> None:
    comp = w.comp_of(arc)
    end = w.leaving(arc)
    if end is None:
        w.cross[w.fresh("c")] = [arc, arc, arc, sign]
        return
    new = w.fresh("a")
    w.cross[end][0] = new
    w.cross[w.fresh("c")] = [arc, new, arc, sign]
    _insert_after(comp, arc, [new])


def _r1_remove(w: _Work, cid: str) -> None:
    a_in, a_out, over, _ = w.crossing(cid)
    if over not in (a_in, a_out):
        raise MoveError(f"crossing {cid!r} is not a kink: over arc {over!r} is neither end")
    del w.cross[cid]
    if a_in == a_out:
        return
    w.comp_of(a_out).remove(a_out)
    w.rename_arc(a_out, a_in)


def _r2_insert(w: _Work, under: str, over: str, sign: int) -> None:
    comp = w.comp_of(under)
    w.comp_of(over)
    end = w.leaving(under)
    mid = w.fresh("a")
    if end is None:
        w.cross[w.fresh("c")] = [under, mid, over, sign]
        w.cross[w.fresh("c")] = [mid, under, over, -sign]
        _insert_after(comp, under, [mid])
        return
    last = w.fresh("a")
    w.cross[end][0] = last
    w.cross[w.fresh("c")] = [under, mid, over, sign]
    w.cross[w.fresh("c")] = [mid, last, over, -sign]
    _insert_after(comp, under, [mid, last])


def _r2_remove(w: _Work, c1: str, c2: str) -> None:
    x, m, y1, s1 = w.crossing(c1)
    m2, z, y2, s2 = w.crossing(c2)
    if m2 != m or m == x or m == z:
        raise MoveError(f"crossings {c1!r}, {c2!r} are not consecutive along a middle arc")
    if y1 != y2 or s1 != -s2:
        raise MoveError(f"crossings {c1!r}, {c2!r} need the same over arc and opposite signs")
    if w.is_over(m):
        raise MoveError(f"middle arc {m!r} passes over another strand")
    del w.cross[c1], w.cross[c2]
    comp = w.comp_of(m)
    comp.remove(m)
    if z != x:
        comp.remove(z)
        w.rename_arc(z, x)


def _r3_site(w: _Work, cf: str, cs: str):
    b0, b1, over_f, s_f = w.crossing(cf)
    b1b, b2, over_s, s_s = w.crossing(cs)
    if b1b != b1 or b1 in (b0, b2):
        raise MoveError(f"crossings {cf!r}, {cs!r} are not consecutive on one strand")
    if w.is_over(b1):
        raise MoveError(f"middle arc {b1!r} passes over another strand")
    if over_f == over_s:
        raise MoveError("R3 needs two different over arcs")
    # try both assignments of top / middle strand
    for t_first in (True, False):
        t, m = (over_f, over_s) if t_first else (over_s, over_f)
        s_t = s_f if t_first else s_s
        for cid in sorted(w.cross):
            if cid in (cf, cs):
                continue
            m_in, m_out, over, s1 = w.cross[cid]
            if over != t or m_in == m_out or m not in (m_in, m_out):
                continue
            if t_first:
                ok = (m == m_out and s1 == s_t) or (m == m_in and s1 == -s_t)
            else:
                ok = (m == m_in and s1 == s_t) or (m == m_out and s1 == -s_t)
            if ok:
                other = m_in if m == m_out else m_out
                return t_first, t, other
    raise MoveError(f"no R3 triangle at {cf!r}, {cs!r}")


def _r3(w: _Work, cf: str, cs: str) -> None:
    t_first, t, other = _r3_site(w, cf, cs)
    b0, b1, over_f, s_f = w.cross[cf]
    _, b2, over_s, s_s = w.cross[cs]
    s_t, s_m = (s_f, s_s) if t_first else (s_s, s_f)
    new = w.fresh("a")
    if t_first:
        w.cross[cf] = [b0, new, other, s_m]
        w.cross[cs] = [new, b2, t, s_t]
    else:
        w.cross[cf] = [b0, new, t, s_t]
        w.cross[cs] = [new, b2, other, s_m]
    comp = w.comp_of(b1)
    comp[comp.index(b1)] = new


def apply_reidemeister(d: BandedUnlinkDiagram, move: Move) -> BandedUnlinkDiagram:
    ensure_classical(d)
    if move.kind not in KINDS or move.direction not in DIRECTIONS:
        raise MoveError(f"unknown move {move}")
    w = _Work(d)
    try:
        if move.kind == "R1" and move.direction == "insert":
            arc, sign = move.site
            _r1_insert(w, arc, _sign(sign))
        elif move.kind == "R1":
            (cid,) = move.site
            _r1_remove(w, cid)
        elif move.kind == "R2" and move.direction == "insert":
            under, over, sign = move.site
            _r2_insert(w, under, over, _sign(sign))
        elif move.kind == "R2":
            c1, c2 = move.site
            _r2_remove(w, c1, c2)
        else:
            c1, c2 = move.site
            _r3(w, c1, c2)
    except MoveError:
        raise
    except (TypeError, ValueError) as e:
        raise MoveError(f"bad site {move.site!r} for {move.kind}: {e}") from None
    return w.freeze()


def _sign(s) -> int:
    if s not in (1, -1):
        raise MoveError(f"sign must be +1 or -1, got {s!r}")
    return s


def removal_sites(d: BandedUnlinkDiagram) -> list[Move]:
    """Every applicable R1/R2 removal and every R3 site."""
    w = _Work(ensure_classical(d))
    out = []
    for cid in sorted(w.cross):
        a_in, a_out, over, _ = w.cross[cid]
        if over in (a_in, a_out):
            out.append(Move("R1", "remove", (cid,)))
    for c1 in sorted(w.cross):
        m = w.cross[c1][1]
        c2 = w.leaving(m)
        if c2 is None or c2 == c1:
            continue
        x, _, y1, s1 = w.cross[c1]
        _, z, y2, s2 = w.cross[c2]
        if m not in (x, z) and y1 == y2 and s1 == -s2 and not w.is_over(m):
            out.append(Move("R2", "remove", (c1, c2)))
        try:
            _r3_site(w, c1, c2)
        except MoveError:
            pass
        else:
            out.append(Move("R3", "insert", (c1, c2)))
    return out


def random_move(d: BandedUnlinkDiagram, rng: random.Random, max_crossings: int = 12) -> Move:
    """A random applicable move; removals and R3 are preferred once the
    diagram has more than ``max_crossings`` crossings."""
    sites = removal_sites(d)
    arcs = [a.id for a in d.arcs]
    big = len(d.crossings) > max_crossings
    r3 = [m for m in sites if m.kind == "R3"]
    if r3 and rng.random() < 0.4:
        return rng.choice(r3)
    removals = [m for m in sites if m.kind != "R3"]
    if removals and (big or rng.random() < 0.3):
        return rng.choice(removals)
    sign = rng.choice((1, -1))
    if rng.random() < 0.35:
        return Move("R1", "insert", (rng.choice(arcs), sign))
    return Move("R2", "insert", (rng.choice(arcs), rng.choice(arcs), sign))


def random_walk(d: BandedUnlinkDiagram, steps: int, seed: int = 0, max_crossings: int = 12):
    """Apply ``steps`` random moves; returns the final diagram and the moves."""
    rng = random.Random(seed)
    moves = []
    for _ in range(steps):
        m = random_move(d, rng, max_crossings)
        d = apply_reidemeister(d, m)
        moves.append(m)
    return d, moves
