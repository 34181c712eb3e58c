"""Augmented quandle presentations and the group presentations they induce.

A presentation has primary generators (quandle elements) and operator
generators (group elements).  Primary relations read ``lhs = base^word``;
operator relations read ``word == 1`` in the operator group.  Words are
tuples of :class:`Letter`, exponent +1 or -1, read left to right as a right
action.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .errors import PresentationError

PRIMARY = "primary"
OPERATOR = "operator"


@dataclass(frozen=True, order=True)
class Letter:
    gen: str
    exp: int = 1

    def __post_init__(self):
        if self.exp not in (1, -1):
            raise PresentationError(f"letter exponent must be +1 or -1, got {self.exp}")

    def inverse(self) -> Letter:
        return Letter(self.gen, -self.exp)

    def __str__(self):
        return self.gen if self.exp == 1 else f"{self.gen}^-1"


Word = tuple[Letter, ...]


def word(*items) -> Word:
    """Build a word from ``"x"``, ``("x", -1)`` or ``Letter`` items."""
    out = []
    for it in items:
        if isinstance(it, Letter):
            out.append(it)
        elif isinstance(it, str):
            out.append(Letter(it, 1))
        else:
            g, e = it
            out.append(Letter(g, e))
    return tuple(out)


def power_word(gen: str, k: int) -> Word:
    e = 1 if k >= 0 else -1
    return tuple(Letter(gen, e) for _ in range(abs(k)))


def invert_word(w: Sequence[Letter]) -> Word:
    return tuple(l.inverse() for l in reversed(w))


def free_reduce(w: Sequence[Letter]) -> Word:
    stack: list[Letter] = []
    for l in w:
        if stack and stack[-1].gen == l.gen and stack[-1].exp == -l.exp:
            stack.pop()
        else:
            stack.append(l)
    return tuple(stack)


def substitute(w: Sequence[Letter], gen: str, replacement: Sequence[Letter]) -> Word:
    out: list[Letter] = []
    for l in w:
        if l.gen == gen:
            out.extend(replacement if l.exp == 1 else invert_word(replacement))
        else:
            out.append(l)
    return tuple(out)


def rename_word(w: Sequence[Letter], names: dict[str, str]) -> Word:
    return tuple(Letter(names.get(l.gen, l.gen), l.exp) for l in w)


def as_power(w: Sequence[Letter]) -> tuple[str, int] | None:
    """``(g, k)`` if ``w`` is ``g^k`` with k != 0, else None."""
    if not w:
        return None
    g, e = w[0].gen, w[0].exp
    if all(l.gen == g and l.exp == e for l in w):
        return g, e * len(w)
    return None


def format_word(w: Sequence[Letter]) -> str:
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        k = (j - i) * w[i].exp
        parts.append(w[i].gen if k == 1 else f"{w[i].gen}^{k}")
        i = j
    return " ".join(parts)


def word_to_json(w: Sequence[Letter]) -> list[dict]:
    return [{"gen": l.gen, "exp": l.exp} for l in w]


def word_from_json(obj) -> Word:
    try:
        return tuple(Letter(str(d["gen"]), int(d["exp"])) for d in obj)
    except (KeyError, TypeError, ValueError) as e:
        raise PresentationError(f"bad word {obj!r}: {e}") from None


@dataclass(frozen=True)
class GeneratorId:
    name: str
    kind: str = PRIMARY

    def __post_init__(self):
        if self.kind not in (PRIMARY, OPERATOR):
            raise PresentationError(f"generator kind must be primary or operator, got {self.kind!r}")


@dataclass(frozen=True)
class PrimaryRelation:
    """``lhs = base^word``."""

    lhs: str
    base: str
    word: Word = ()

    @property
    def is_identification(self) -> bool:
        return not self.word

    def letters(self) -> set[str]:
        return {l.gen for l in self.word}

    def __str__(self):
        if not self.word:
            return f"{self.lhs} = {self.base}"
        return f"{self.lhs} = {self.base}^({format_word(self.word)})"


@dataclass(frozen=True)
class OperatorRelation:
    """``word == 1`` in the operator group."""

    word: Word

    def __str__(self):
        return f"{format_word(self.word)} == 1"


@dataclass(frozen=True)
class AugmentedPresentation:
    generators: tuple[GeneratorId, ...]
    primary_relations: tuple[PrimaryRelation, ...] = ()
    operator_relations: tuple[OperatorRelation, ...] = ()
    provenance: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "primary_relations", tuple(self.primary_relations))
        object.__setattr__(self, "operator_relations", tuple(self.operator_relations))
        object.__setattr__(self, "provenance", tuple(self.provenance))
        kinds: dict[str, str] = {}
        for g in self.generators:
            if g.name in kinds:
                raise PresentationError(f"duplicate generator {g.name!r}")
            kinds[g.name] = g.kind
        for r in self.primary_relations:
            for name in (r.lhs, r.base):
                if kinds.get(name) != PRIMARY:
                    raise PresentationError(f"relation {r}: {name!r} is not a primary generator")
            self._check_word(r.word, kinds, r)
        for r in self.operator_relations:
            self._check_word(r.word, kinds, r)

    @staticmethod
    def _check_word(w, kinds, rel):
        for l in w:
            if l.gen not in kinds:
                raise PresentationError(f"relation {rel}: unknown generator {l.gen!r}")

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    @property
    def primary_generators(self) -> list[str]:
        return [g.name for g in self.generators if g.kind == PRIMARY]

    @property
    def operator_generators(self) -> list[str]:
        return [g.name for g in self.generators if g.kind == OPERATOR]

    @property
    def is_primary(self) -> bool:
        return not self.operator_generators

    def kind(self, name: str) -> str:
        for g in self.generators:
            if g.name == name:
                return g.kind
        raise PresentationError(f"unknown generator {name!r}")

    def logged(self, entry: str) -> AugmentedPresentation:
        return replace(self, provenance=self.provenance + (entry,))

    def __str__(self):
        gens = ", ".join(self.primary_generators)
        if self.operator_generators:
            gens += " ; " + ", ".join(self.operator_generators)
        rels = [str(r) for r in self.primary_relations] + [str(r) for r in self.operator_relations]
        return f"[{gens} | {', '.join(rels) if rels else '∅'}]"

    # -- JSON ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "generators": [{"name": g.name, "kind": g.kind} for g in self.generators],
            "primary_relations": [
                {"lhs": r.lhs, "base": r.base, "word": word_to_json(r.word)} for r in self.primary_relations
            ],
            "operator_relations": [{"word": word_to_json(r.word)} for r in self.operator_relations],
            "provenance": list(self.provenance),
        }

    @classmethod
    def from_json(cls, obj: dict) -> AugmentedPresentation:
        try:
            gens = tuple(GeneratorId(str(g["name"]), g.get("kind", PRIMARY)) for g in obj["generators"])
            prels = tuple(
                PrimaryRelation(str(r["lhs"]), str(r["base"]), word_from_json(r.get("word", [])))
                for r in obj.get("primary_relations", [])
            )
            orels = tuple(OperatorRelation(word_from_json(r["word"])) for r in obj.get("operator_relations", []))
        except (KeyError, TypeError, AttributeError) as e:
            raise PresentationError(f"malformed presentation JSON: {e!r}") from None
        return cls(gens, prels, orels, tuple(obj.get("provenance", [])))

    def digest(self) -> str:
        body = self.to_json()
        del body["provenance"]
        return hashlib.sha256(json.dumps(body, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def primary_presentation(names: Iterable[str], relations=(), operator_relations=(), note=None):
    p = AugmentedPresentation(tuple(GeneratorId(n, PRIMARY) for n in names), tuple(relations), tuple(operator_relations))
    return p.logged(note) if note else p


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(tuple(r) for r in self.relators))
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("duplicate generator in group presentation")
        known = set(self.generators)
        for r in self.relators:
            for l in r:
                if l.gen not in known:
                    raise PresentationError(f"relator {format_word(r)}: unknown generator {l.gen!r}")

    def with_relators(self, extra: Iterable[Word]) -> GroupPresentation:
        return GroupPresentation(self.generators, self.relators + tuple(tuple(r) for r in extra))

    def __str__(self):
        rels = ", ".join(format_word(r) for r in self.relators)
        return f"<{', '.join(self.generators)} | {rels}>"

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "relators": [word_to_json(r) for r in self.relators]}

    @classmethod
    def from_json(cls, obj: dict) -> GroupPresentation:
        try:
            return cls(tuple(str(g) for g in obj["generators"]), tuple(word_from_json(r) for r in obj["relators"]))
        except (KeyError, TypeError) as e:
            raise PresentationError(f"malformed group presentation JSON: {e!r}") from None


# -- derived presentations -------------------------------------------------


def group_presentation(p: AugmentedPresentation) -> GroupPresentation:
    """Augment: quandle operations become conjugation.

    ``lhs = base^w`` gives the relator ``lhs^-1 w^-1 base w``; ``w == 1``
    gives ``w``.  Relators are freely reduced and empty ones dropped.
    """
    rels = []
    for r in p.primary_relations:
        rels.append(free_reduce((Letter(r.lhs, -1),) + invert_word(r.word) + (Letter(r.base, 1),) + r.word))
    for r in p.operator_relations:
        rels.append(free_reduce(r.word))
    return GroupPresentation(tuple(p.names), tuple(r for r in rels if r))


def _fresh_suffix(taken: set[str], names: Sequence[str]) -> dict[str, str]:
    k = 1
    while True:
        mapping = {n: f"{n}~{k}" for n in names}
        if not taken.intersection(mapping.values()):
            return mapping
        k += 1


def rename(p: AugmentedPresentation, names: dict[str, str]) -> AugmentedPresentation:
    gens = tuple(GeneratorId(names.get(g.name, g.name), g.kind) for g in p.generators)
    prels = tuple(
        PrimaryRelation(names.get(r.lhs, r.lhs), names.get(r.base, r.base), rename_word(r.word, names))
        for r in p.primary_relations
    )
    orels = tuple(OperatorRelation(rename_word(r.word, names)) for r in p.operator_relations)
    return AugmentedPresentation(gens, prels, orels, p.provenance)


def connected_sum(p1: AugmentedPresentation, g1: str, p2: AugmentedPresentation, g2: str) -> AugmentedPresentation:
    """Join two presentations along one primary generator of each.

    ``p2``'s other generators get a ``~k`` suffix (smallest k with no clash)
    and ``g2`` is renamed to ``g1``.
    """
    if p1.kind(g1) != PRIMARY or p2.kind(g2) != PRIMARY:
        raise PresentationError("connected sum needs primary generators on both sides")
    others = [n for n in p2.names if n != g2]
    mapping = _fresh_suffix(set(p1.names), others)
    mapping[g2] = g1
    q = rename(p2, mapping)
    gens = p1.generators + tuple(g for g in q.generators if g.name != g1)
    out = AugmentedPresentation(
        gens,
        p1.primary_relations + q.primary_relations,
        p1.operator_relations + q.operator_relations,
        p1.provenance,
    )
    return out.logged(f"connected_sum({g1} ~ {g2})")


def twist_spin(p: AugmentedPresentation, n: int) -> AugmentedPresentation:
    """Impose g^n == 1 on every primary generator (nothing for n = 0)."""
    if n < 0:
        raise PresentationError(f"twist number must be >= 0, got {n}")
    if not p.is_primary:
        raise PresentationError("twist_spin needs a primary presentation of a classical knot")
    extra = () if n == 0 else tuple(OperatorRelation(power_word(g, n)) for g in p.primary_generators)
    return replace(p, operator_relations=p.operator_relations + extra).logged(f"twist_spin({n})")


def attach_order_relation(p: AugmentedPresentation, g: str, d: int) -> AugmentedPresentation:
    if d < 1:
        raise PresentationError(f"order must be >= 1, got {d}")
    if p.kind(g) != PRIMARY:
        raise PresentationError(f"{g!r} is not a primary generator")
    rel = OperatorRelation(power_word(g, d))
    return replace(p, operator_relations=p.operator_relations + (rel,)).logged(f"attach_order({g}, {d})")


def _order_relations(p: AugmentedPresentation) -> set[tuple[str, int]]:
    out = set()
    for r in p.operator_relations:
        pw = as_power(free_reduce(r.word))
        if pw is not None and p.kind(pw[0]) == PRIMARY:
            out.add((pw[0], abs(pw[1])))
    return out


def propagate_order_relations(p: AugmentedPresentation) -> AugmentedPresentation:
    """Spread g^d == 1 across primary relations linking g to another generator.

    Sound because the letters of a relation act by automorphisms, so
    h = g^w makes f_h a conjugate of f_g.
    """
    have = _order_relations(p)
    added: list[tuple[str, int]] = []
    links = [(r.lhs, r.base) for r in p.primary_relations if r.lhs != r.base]
    changed = True
    while changed:
        changed = False
        for a, b in links:
            for g, d in sorted(have):
                for src, dst in ((a, b), (b, a)):
                    if g == src and (dst, d) not in have:
                        have.add((dst, d))
                        added.append((dst, d))
                        changed = True
    if not added:
        return p
    extra = tuple(OperatorRelation(power_word(g, d)) for g, d in added)
    return replace(p, operator_relations=p.operator_relations + extra).logged("propagate_order_relations")


def simplify(p: AugmentedPresentation) -> AugmentedPresentation:
    """Apply a fixed set of safe rewrites until nothing changes.

    1. free-reduce every word (writing g^-k == 1 as g^k == 1), drop trivial
       relations (``g = g^1``, ``1 == 1``) and duplicates;
    2. eliminate ``g`` when ``g = h`` (empty word, g != h) by substituting h;
    3. drop ``g^(mn) == 1`` when ``g^n == 1`` is present.
    """
    cur = p
    while True:
        nxt = _simplify_once(cur)
        if nxt == cur:
            return nxt.logged("simplify") if nxt.provenance[-1:] != ("simplify",) else nxt
        cur = nxt


def _dedupe(items):
    seen = set()
    out = []
    for it in items:
        if it not in seen:
            seen.add(it)
            out.append(it)
    return tuple(out)


def _simplify_once(p: AugmentedPresentation) -> AugmentedPresentation:
    prels = [PrimaryRelation(r.lhs, r.base, free_reduce(r.word)) for r in p.primary_relations]
    prels = [r for r in prels if not (r.lhs == r.base and not r.word)]
    orels = []
    for r in p.operator_relations:
        w = free_reduce(r.word)
        pw = as_power(w)
        if pw is not None and pw[1] < 0:
            w = power_word(pw[0], -pw[1])
        if w:
            orels.append(OperatorRelation(w))
    prels, orels = list(_dedupe(prels)), list(_dedupe(orels))
    gens = list(p.generators)

    for r in prels:
        if r.is_identification and r.lhs != r.base:
            gone, keep = r.lhs, r.base
            mapping = {gone: keep}
            gens = [g for g in gens if g.name != gone]
            prels = [
                PrimaryRelation(mapping.get(s.lhs, s.lhs), mapping.get(s.base, s.base), rename_word(s.word, mapping))
                for s in prels
                if s is not r
            ]
            orels = [OperatorRelation(rename_word(s.word, mapping)) for s in orels]
            break

    powers = {}
    for r in orels:
        pw = as_power(r.word)
        if pw is not None:
            powers.setdefault(pw[0], set()).add(abs(pw[1]))
    kept = []
    for r in orels:
        pw = as_power(r.word)
        if pw is not None:
            g, k = pw[0], abs(pw[1])
            if any(n < k and k % n == 0 for n in powers[g]):
                continue
        kept.append(r)
    return AugmentedPresentation(tuple(gens), tuple(prels), tuple(kept), p.provenance)


# -- reading a presentation off a diagram ------------------------------------


def extract_presentation(d) -> AugmentedPresentation:
    """The diagrammatic presentation of a banded unlink diagram.

    * unlink arcs give primary generators, dotted arcs operator generators;
    * an unlink arc passing under arc ``y`` gives ``out = in^(y^sign)``;
      under a band or framed circle it gives the identification ``out = in``;
    * a dotted arc under ``y`` gives ``out^-1 y^-sign in y^sign == 1``, and
      under a band or framed circle ``out^-1 in == 1``;
    * a band gives ``attach_to = attach_from^w``, w read along its underpasses;
      a band from ``x`` back to ``x`` whose word is a power ``x^k`` gives the
      operator relation ``x^k == 1`` instead (the half-twisted band);
    * a framed circle gives ``w == 1`` for the word of arcs crossing over it.
    """
    from .diagram import DOTTED, UNLINK

    gens = tuple(GeneratorId(a.id, PRIMARY if a.kind == UNLINK else OPERATOR) for a in d.arcs)
    kinds = {a.id: a.kind for a in d.arcs}
    prels: list[PrimaryRelation] = []
    orels: list[OperatorRelation] = []
    for c in d.crossings:
        over_arc = c.over.type == "arc"
        if kinds[c.under_in] == UNLINK:
            w = (Letter(c.over.id, c.sign),) if over_arc else ()
            prels.append(PrimaryRelation(c.under_out, c.under_in, w))
        elif kinds[c.under_in] == DOTTED:
            if over_arc:
                y = c.over.id
                w = (Letter(c.under_out, -1), Letter(y, -c.sign), Letter(c.under_in, 1), Letter(y, c.sign))
            else:
                w = (Letter(c.under_out, -1), Letter(c.under_in, 1))
            orels.append(OperatorRelation(w))
    for b in d.bands:
        w = tuple(Letter(u.over, u.sign) for u in b.underpasses)
        pw = as_power(w)
        if b.attach_from == b.attach_to and pw is not None and pw[0] == b.attach_from:
            orels.append(OperatorRelation(w))
        else:
            prels.append(PrimaryRelation(b.attach_to, b.attach_from, w))
    for f in d.framed_components:
        orels.append(OperatorRelation(tuple(Letter(u.over, u.sign) for u in f.underpasses)))
    p = AugmentedPresentation(gens, tuple(prels), tuple(orels))
    return p.logged(f"extract({d.name})" if d.name else "extract")
