"""Group-level invariants of presentations: Smith normal form,
abelianization, and homomorphism counts into small finite groups."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import EnumerationBoundError, InvalidGroupError, InvalidParameterError, MalformedTableError
from .presentation import (
    AugmentedPresentation,
    GroupPresentation,
    Letter,
    Word,
    free_reduce,
    group_presentation,
    invert_word,
    power_word,
    substitute,
)

HOM_ENUMERATION_BOUND = 10**8


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        entries = tuple(tuple(int(v) for v in r) for r in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise InvalidParameterError(f"entries do not form a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ((),) * 0)


def smith_normal_form(m: IntMatrix | Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors d1 | d2 | ... of an integer matrix, zeros last.

    The list has min(rows, cols) entries.  Pivots are chosen with minimal
    absolute value; arithmetic is exact (Python ints).
    """
    if not isinstance(m, IntMatrix):
        m = IntMatrix.from_rows(m)
    a = [list(r) for r in m.entries]
    nr, nc = m.rows, m.cols
    diag = []
    t = 0
    while t < min(nr, nc):
        pivot = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    for r in a:
                        r[j] -= q * r[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                # the pivot must also divide the remaining block
                bad = next(
                    ((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest remainder into the pivot slot and repeat
            best = None
            for i in range(t + 1, nr):
                if a[i][t] and (best is None or abs(a[i][t]) < abs(best[2])):
                    best = (i, t, a[i][t])
            for j in range(t + 1, nc):
                if a[t][j] and (best is None or abs(a[t][j]) < abs(best[2])):
                    best = (t, j, a[t][j])
            i, j, _ = best
            if j == t:
                a[t], a[i] = a[i], a[t]
            else:
                for r in a:
                    r[t], r[j] = r[j], r[t]
        diag.append(abs(a[t][t]))
        t += 1
    diag.extend([0] * (min(nr, nc) - len(diag)))
    return diag


def exponent_matrix(g: GroupPresentation) -> IntMatrix:
    index = {n: i for i, n in enumerate(g.generators)}
    rows = []
    for r in g.relators:
        row = [0] * len(g.generators)
        for l in r:
            row[index[l.gen]] += l.exp
        rows.append(row)
    return IntMatrix.from_rows(rows, len(g.generators))


@dataclass(frozen=True)
class Abelianization:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self):
        parts = [f"Z^{self.free_rank}" if self.free_rank > 1 else "Z"] if self.free_rank else []
        parts += [f"Z_{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def abelianization(g: GroupPresentation | AugmentedPresentation) -> Abelianization:
    if isinstance(g, AugmentedPresentation):
        g = group_presentation(g)
    m = exponent_matrix(g)
    diag = smith_normal_form(m)
    nonzero = [d for d in diag if d]
    return Abelianization(m.cols - len(nonzero), tuple(d for d in nonzero if d > 1))


# -- finite groups ----------------------------------------------------------


@dataclass(frozen=True)
class FiniteGroup:
    size: int
    table: tuple[tuple[int, ...], ...]
    identity: int = 0
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(tuple(r) for r in self.table))
        _check_group(self.table, self.identity)
        if self.size != len(self.table):
            raise MalformedTableError(f"size {self.size} does not match table of {len(self.table)} rows")

    @classmethod
    def from_table(cls, table, identity: int | None = None, labels=None) -> FiniteGroup:
        rows = tuple(tuple(r) for r in table)
        if identity is None:
            identity = _find_identity(rows)
        return cls(len(rows), rows, identity, tuple(labels) if labels is not None else None)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverses(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(next(b for b in range(self.size) if self.table[a][b] == e) for a in range(self.size))

    def to_json(self) -> dict:
        return {"size": self.size, "table": [list(r) for r in self.table], "identity": self.identity}

    @classmethod
    def from_json(cls, obj: dict) -> FiniteGroup:
        try:
            g = cls.from_table(obj["table"], obj.get("identity"))
        except (KeyError, TypeError):
            raise MalformedTableError('group JSON needs "size", "table", "identity"') from None
        if obj.get("size", g.size) != g.size:
            raise MalformedTableError("size does not match table")
        return g


def _find_identity(rows) -> int:
    n = len(rows)
    for e in range(n):
        if all(len(rows[e]) == n and rows[e][x] == x and rows[x][e] == x for x in range(n)):
            return e
    raise InvalidGroupError("identity")


def _check_group(rows, e) -> None:
    n = len(rows)
    if n == 0:
        raise MalformedTableError("empty group table")
    for i, r in enumerate(rows):
        if len(r) != n or any(isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n for v in r):
            raise MalformedTableError(f"row {i} is not a row of length {n} with entries in 0..{n - 1}")
    if not 0 <= e < n or any(rows[e][x] != x or rows[x][e] != x for x in range(n)):
        raise InvalidGroupError("identity", e)
    for a in range(n):
        if e not in rows[a] or all(rows[b][a] != e for b in range(n)):
            raise InvalidGroupError("inverses", a)
    for a in range(n):
        for b in range(n):
            ab = rows[a][b]
            for c in range(n):
                if rows[ab][c] != rows[a][rows[b][c]]:
                    raise InvalidGroupError("associativity", (a, b, c))


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidParameterError("cyclic group needs n >= 1")
    return FiniteGroup.from_table([[(a + b) % n for b in range(n)] for a in range(n)], 0)


def group_from_permutations(perms: Sequence[tuple[int, ...]]) -> FiniteGroup:
    """Group table of a list of permutations closed under composition.

    Products compose left to right (apply ``a`` then ``b``)."""
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(b[i] for i in a)] for b in perms] for a in perms]
    labels = ["".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in _cycles(p) if len(c) > 1) or "e" for p in perms]
    return FiniteGroup.from_table(table, labels=labels)


def _cycles(p):
    seen, out = set(), []
    for s in range(len(p)):
        if s in seen:
            continue
        c, x = [], s
        while x not in seen:
            seen.add(x)
            c.append(x)
            x = p[x]
        out.append(c)
    return out


def symmetric_group(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidParameterError("symmetric group needs n >= 1")
    return group_from_permutations(sorted(itertools.permutations(range(n))))


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n (n >= 3), as permutations of vertices."""
    if n < 3:
        raise InvalidParameterError("dihedral group needs n >= 3")
    rots = [tuple((i + k) % n for i in range(n)) for k in range(n)]
    refl = [tuple((k - i) % n for i in range(n)) for k in range(n)]
    return group_from_permutations(rots + refl)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    m = h.size
    table = [
        [g.table[a // m][b // m] * m + h.table[a % m][b % m] for b in range(g.size * m)] for a in range(g.size * m)
    ]
    return FiniteGroup.from_table(table, g.identity * m + h.identity)


def quaternion_group() -> FiniteGroup:
    # elements (sign, unit) with unit in 1, i, j, k; index = 4*(sign<0) + unit
    unit_mul = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }  # fmt: skip
    table = []
    for a in range(8):
        row = []
        for b in range(8):
            s, u = unit_mul[(a % 4, b % 4)]
            if (a >= 4) != (b >= 4):
                s = -s
            row.append(u + (4 if s < 0 else 0))
        table.append(row)
    return FiniteGroup.from_table(table, 0, labels=["1", "i", "j", "k", "-1", "-i", "-j", "-k"])


def small_group_battery(max_order: int = 8) -> list[tuple[str, FiniteGroup]]:
    """Every group of order <= 8 up to isomorphism (orders above 8 not covered)."""
    c = cyclic_group
    groups = [(f"Z{n}", c(n)) for n in range(1, 9)]
    groups += [
        ("Z2xZ2", direct_product(c(2), c(2))),
        ("S3", symmetric_group(3)),
        ("Z2xZ4", direct_product(c(2), c(4))),
        ("Z2xZ2xZ2", direct_product(direct_product(c(2), c(2)), c(2))),
        ("D4", dihedral_group(4)),
        ("Q8", quaternion_group()),
    ]
    return sorted((g for g in groups if g[1].size <= max_order), key=lambda t: (t[1].size, t[0]))


# -- homomorphism counting --------------------------------------------------


def count_group_homs(g: GroupPresentation, h: FiniteGroup, bound: int = HOM_ENUMERATION_BOUND) -> int:
    """Number of assignments generators -> H killing every relator.

    Plain backtracking; each relator is checked as soon as all of its
    generators are assigned.
    """
    n = len(g.generators)
    if h.size**n > bound:
        raise EnumerationBoundError(f"{h.size}^{n} candidate tuples exceeds the bound {bound}")
    index = {name: i for i, name in enumerate(g.generators)}
    inv = h.inverses()
    mul = h.table
    e = h.identity
    checks: list[list[tuple[tuple[int, int], ...]]] = [[] for _ in range(n + 1)]
    for r in g.relators:
        letters = tuple((index[l.gen], l.exp) for l in r)
        depth = max(i for i, _ in letters) + 1 if letters else 0
        checks[depth].append(letters)

    def holds(rel, vals):
        x = e
        for i, s in rel:
            v = vals[i]
            x = mul[x][v if s == 1 else inv[v]]
        return x == e

    for rel in checks[0]:
        if not holds(rel, ()):
            return 0
    vals = [0] * n

    def rec(k):
        if k == n:
            return 1
        total = 0
        for v in range(h.size):
            vals[k] = v
            if all(holds(rel, vals) for rel in checks[k + 1]):
                total += rec(k + 1)
        return total

    return rec(0)


def tietze_eliminate(g: GroupPresentation, keep=(), max_length: int = 100_000) -> GroupPresentation:
    """Remove generators that occur exactly once in some relator.

    Each step solves that relator for the generator and substitutes the
    result everywhere; the group is unchanged up to isomorphism.  Stops when
    no generator qualifies or the total relator length would exceed
    ``max_length``.  Generators in ``keep`` are never removed.
    """
    keep = set(keep)
    gens = list(g.generators)
    rels = [free_reduce(r) for r in g.relators]
    rels = [r for r in rels if r]
    while True:
        best = None
        for ri, r in enumerate(rels):
            for pos, l in enumerate(r):
                if l.gen not in keep and sum(1 for m in r if m.gen == l.gen) == 1:
                    cand = (len(r), ri, pos)
                    if best is None or cand < best:
                        best = cand
        if best is None:
            break
        _, ri, pos = best
        r = rels[ri]
        l = r[pos]
        # r = u l v == 1  =>  l = u^-1 v^-1
        u, v = r[:pos], r[pos + 1 :]
        value = invert_word(u) + invert_word(v)
        if l.exp == -1:
            value = invert_word(value)
        new_rels = []
        for j, s in enumerate(rels):
            if j == ri:
                continue
            s = free_reduce(_cyclic_reduce(free_reduce(substitute(s, l.gen, value))))
            if s:
                new_rels.append(s)
        if sum(len(s) for s in new_rels) > max_length:
            break
        rels = new_rels
        gens.remove(l.gen)
    return GroupPresentation(tuple(gens), tuple(_dedupe(rels)))


def _cyclic_reduce(w: Word) -> Word:
    w = list(w)
    while len(w) >= 2 and w[0].gen == w[-1].gen and w[0].exp == -w[-1].exp:
        w = w[1:-1]
    return tuple(w)


def _dedupe(rels):
    seen, out = set(), []
    for r in rels:
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out


def commutator(a: Word, b: Word) -> Word:
    return free_reduce(invert_word(a) + invert_word(b) + tuple(a) + tuple(b))


def twist_spun_group(
    p: AugmentedPresentation, n: int, meridian: str | None = None, reduce: bool = True
) -> GroupPresentation:
    """Knot group of the n-twist spin of the classical knot presented by ``p``.

    This is the knot group with mu^n made central, mu a meridian: relators
    [mu^n, g] for every generator g.  (Adding mu^n itself would give the
    group of the quandle with type relations, which is a proper quotient.)
    With ``reduce`` the knot group is Tietze-reduced first, keeping ``mu``,
    so only the surviving generators need a commutator.
    """
    if not p.is_primary:
        raise InvalidParameterError("twist_spun_group needs a primary presentation of a classical knot")
    base = group_presentation(p)
    mu = meridian or p.primary_generators[0]
    if reduce:
        base = tietze_eliminate(base, keep={mu})
    if n == 0:
        return base
    mun = power_word(mu, n)
    extra = [commutator(mun, (Letter(gen, 1),)) for gen in base.generators if gen != mu]
    return base.with_relators(r for r in extra if r)


def with_meridian_order(g: GroupPresentation, meridian: str, d: int) -> GroupPresentation:
    """Amalgamate with Z_d along a meridian: add the relator meridian^d."""
    return g.with_relators([power_word(meridian, d)])


def gcd_all(values) -> int:
    return math.gcd(*values) if values else 0
