"""Finite quandles stored as operation tables.

Elements are the integers ``0..n-1`` and ``table[x][y]`` is ``x^y``.  All
maps act on the right: a word ``y1 y2`` sends ``x`` to ``(x^y1)^y2``, so
``Permutation.then`` composes in reading order.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

from .errors import (
    GroupTooLargeError,
    InvalidParameterError,
    MalformedTableError,
    QuandleAxiomError,
)

DEFAULT_GROUP_CAP = 10080


@dataclass(frozen=True)
class Permutation:
    mapping: tuple[int, ...]

    def __post_init__(self):
        n = len(self.mapping)
        if sorted(self.mapping) != list(range(n)):
            raise InvalidParameterError(f"not a bijection on 0..{n - 1}: {self.mapping}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    def __len__(self):
        return len(self.mapping)

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def then(self, other: Permutation) -> Permutation:
        """Apply ``self`` first, then ``other``."""
        m = other.mapping
        return Permutation(tuple(m[i] for i in self.mapping))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.mapping)
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return Permutation(tuple(inv))

    def power(self, k: int) -> Permutation:
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(len(self))
        for _ in range(abs(k)):
            result = result.then(base)
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.mapping))

    def order(self) -> int:
        seen = [False] * len(self.mapping)
        lengths = []
        for start in range(len(self.mapping)):
            if seen[start]:
                continue
            k, x = 0, start
            while not seen[x]:
                seen[x] = True
                x = self.mapping[x]
                k += 1
            lengths.append(k)
        return reduce(math.lcm, lengths, 1)

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(len(self.mapping)):
            if start in seen:
                continue
            cyc = []
            x = start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self.mapping[x]
            out.append(tuple(cyc))
        return out

    def __str__(self):
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())


@dataclass(frozen=True)
class AxiomResult:
    passed: bool
    witness: tuple | None = None

    def __str__(self):
        return "PASS" if self.passed else f"FAIL at {self.witness}"


@dataclass(frozen=True)
class ValidationReport:
    idempotence: AxiomResult
    right_invertibility: AxiomResult
    self_distributivity: AxiomResult
    kei: bool

    @property
    def ok(self) -> bool:
        return self.idempotence.passed and self.right_invertibility.passed and self.self_distributivity.passed

    def summary(self) -> str:
        return (
            f"axiom1 {self.idempotence}; axiom2 {self.right_invertibility}; "
            f"axiom3 {self.self_distributivity}; kei={self.kei}"
        )


def _check_shape(table) -> tuple[tuple[int, ...], ...]:
    try:
        rows = [list(r) for r in table]
    except TypeError as e:
        raise MalformedTableError(f"table is not a list of rows: {e}") from None
    n = len(rows)
    if n == 0:
        raise MalformedTableError("empty table")
    for i, r in enumerate(rows):
        if len(r) != n:
            raise MalformedTableError(f"row {i} has length {len(r)}, expected {n}")
        for j, v in enumerate(r):
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                raise MalformedTableError(f"entry [{i}][{j}] = {v!r} outside 0..{n - 1}")
    return tuple(tuple(r) for r in rows)


def validate_quandle(table) -> ValidationReport:
    """Check the three quandle axioms exhaustively and report the first
    violation of each.

    For axiom 2 the witness is ``(y, x1, x2)``: column ``y`` sends both
    ``x1`` and ``x2`` to the same element (or ``(y,)`` if nothing else is
    known).  For axiom 3 it is the triple ``(x, y, z)``.
    """
    t = _check_shape(table)
    n = len(t)

    idem = AxiomResult(True)
    for x in range(n):
        if t[x][x] != x:
            idem = AxiomResult(False, (x,))
            break

    inv = AxiomResult(True)
    for y in range(n):
        seen = {}
        for x in range(n):
            v = t[x][y]
            if v in seen:
                inv = AxiomResult(False, (y, seen[v], x))
                break
            seen[v] = x
        if not inv.passed:
            break

    dist = AxiomResult(True)
    for x in range(n):
        for y in range(n):
            xy = t[x][y]
            for z in range(n):
                if t[xy][z] != t[t[x][z]][t[y][z]]:
                    dist = AxiomResult(False, (x, y, z))
                    break
            if not dist.passed:
                break
        if not dist.passed:
            break

    kei = all(t[t[x][y]][y] == x for x in range(n) for y in range(n))
    return ValidationReport(idem, inv, dist, kei)


@dataclass(frozen=True)
class FiniteQuandle:
    size: int
    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        t = _check_shape(self.table)
        object.__setattr__(self, "table", t)
        if self.size != len(t):
            raise MalformedTableError(f"size {self.size} does not match table of {len(t)} rows")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.size:
                raise MalformedTableError("labels length does not match size")
            object.__setattr__(self, "labels", labels)
        report = validate_quandle(t)
        if not report.ok:
            raise QuandleAxiomError(report)

    @classmethod
    def from_table(cls, table, labels=None) -> FiniteQuandle:
        t = _check_shape(table)
        return cls(len(t), t, labels)

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    def __len__(self):
        return self.size

    @property
    def is_kei(self) -> bool:
        t = self.table
        return all(t[t[x][y]][y] == x for x in range(self.size) for y in range(self.size))

    def restrict(self, elements: Iterable[int], labels=None) -> FiniteQuandle:
        """The subquandle on ``elements`` (must be closed), reindexed in sorted order."""
        elems = sorted(set(elements))
        index = {e: i for i, e in enumerate(elems)}
        rows = []
        for x in elems:
            row = []
            for y in elems:
                v = self.table[x][y]
                if v not in index:
                    raise InvalidParameterError(f"{elems} is not closed: {x}^{y} = {v}")
                row.append(index[v])
            rows.append(row)
        if labels is None and self.labels is not None:
            labels = [self.labels[e] for e in elems]
        return FiniteQuandle.from_table(rows, labels)

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "table": [list(r) for r in self.table],
            "labels": list(self.labels) if self.labels is not None else None,
        }

    @classmethod
    def from_json(cls, obj: dict) -> FiniteQuandle:
        try:
            size = obj["size"]
            table = obj["table"]
        except (KeyError, TypeError):
            raise MalformedTableError('quandle JSON needs "size" and "table"') from None
        q = cls.from_table(table, obj.get("labels"))
        if q.size != size:
            raise MalformedTableError(f"size {size} does not match table of {q.size} rows")
        return q

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def make_dihedral(n: int) -> FiniteQuandle:
    if n < 1:
        raise InvalidParameterError(f"dihedral quandle needs n >= 1, got {n}")
    return FiniteQuandle.from_table(
        [[(2 * y - x) % n for y in range(n)] for x in range(n)],
        labels=[str(i) for i in range(n)],
    )


def make_trivial(n: int) -> FiniteQuandle:
    if n < 1:
        raise InvalidParameterError(f"trivial quandle needs n >= 1, got {n}")
    return FiniteQuandle.from_table([[x] * n for x in range(n)])


def make_alexander(n: int, t: int) -> FiniteQuandle:
    """Z/n with x^y = t*x + (1 - t)*y, t a unit mod n."""
    if n < 1:
        raise InvalidParameterError(f"Alexander quandle needs n >= 1, got {n}")
    if math.gcd(t, n) != 1:
        raise InvalidParameterError(f"t={t} is not a unit mod {n}")
    return FiniteQuandle.from_table([[(t * x + (1 - t) * y) % n for y in range(n)] for x in range(n)])


def make_conjugation(group_table) -> FiniteQuandle:
    """Conjugation quandle x^y = y^-1 x y of a finite group.

    Accepts a multiplication table (validated) or a ``FiniteGroup``.
    """
    from .groups import FiniteGroup

    g = group_table if isinstance(group_table, FiniteGroup) else FiniteGroup.from_table(group_table)
    n = g.size
    mul, inv = g.table, g.inverses()
    return FiniteQuandle.from_table(
        [[mul[mul[inv[y]][x]][y] for y in range(n)] for x in range(n)],
        labels=g.labels,
    )


def inner_map(q: FiniteQuandle, y: int) -> Permutation:
    if not 0 <= y < q.size:
        raise InvalidParameterError(f"element {y} out of range 0..{q.size - 1}")
    return Permutation(tuple(q.table[x][y] for x in range(q.size)))


def inner_maps(q: FiniteQuandle) -> list[Permutation]:
    return [inner_map(q, y) for y in range(q.size)]


def quandle_type(q: FiniteQuandle) -> int:
    """Least n >= 1 with f_y^n = id for every y."""
    return reduce(math.lcm, (f.order() for f in inner_maps(q)), 1)


def subquandle_orbit(q: FiniteQuandle, seeds: Iterable[int], gens: Sequence[Permutation]) -> frozenset[int]:
    """Closure of ``seeds`` under every permutation in ``gens`` and its inverse."""
    seen = set(seeds)
    for s in seen:
        if not 0 <= s < q.size:
            raise InvalidParameterError(f"seed {s} out of range")
    maps = []
    for g in gens:
        if len(g) != q.size:
            raise InvalidParameterError("generator size does not match quandle")
        maps.append(g.mapping)
        maps.append(g.inverse().mapping)
    todo = deque(seen)
    while todo:
        x = todo.popleft()
        for m in maps:
            y = m[x]
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return frozenset(seen)


def inner_group_elements(
    q: FiniteQuandle, gens: Sequence[Permutation] | None = None, cap: int = DEFAULT_GROUP_CAP
) -> list[Permutation]:
    """All elements of the permutation group generated by ``gens``, found by BFS.

    ``gens`` defaults to every inner map, i.e. the result is Inn(Q).  The
    identity comes first; the rest are in BFS discovery order.
    """
    if gens is None:
        gens = inner_maps(q)
    ident = Permutation.identity(q.size)
    found = {ident}
    order = [ident]
    todo = deque(order)
    while todo:
        p = todo.popleft()
        for g in gens:
            r = p.then(g)
            if r not in found:
                found.add(r)
                order.append(r)
                if len(order) > cap:
                    raise GroupTooLargeError(cap)
                todo.append(r)
    return order
