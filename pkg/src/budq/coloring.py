"""Counting colorings of an augmented presentation by a finite quandle.

Semantics.  A primary generator is colored by an element of Q and an
operator generator by a permutation in Inn(Q).  A letter g^{+-1} acts by
``inner_map(Q, c(g))^{+-1}`` (primary g) or ``c(g)^{+-1}`` (operator g).
A primary relation ``lhs = base^w`` must hold exactly.  An operator
relation ``w == 1`` must fix pointwise the orbit of the primary images
under all letter permutations of the coloring (fixing all of Q would be
too strong: it kills constant colorings of ``[x | x^3 == 1]`` in R_3).

Search.  The relations are compiled into a fixed plan of steps: branch on a
generator, derive a generator from a relation whose other data is known
(forwards or backwards), or check a relation.  Operator relations are
checked at the leaves.
"""

from __future__ import annotations

import heapq
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .errors import InvalidParameterError, PresentationError
from .presentation import OPERATOR, PRIMARY, AugmentedPresentation, format_word
from .quandle import DEFAULT_GROUP_CAP, FiniteQuandle, Permutation, inner_group_elements

BRANCH, FORWARD, BACKWARD, CHECK = "branch", "forward", "backward", "check"


@dataclass(frozen=True)
class Coloring:
    primary_assignment: Mapping[str, int]
    operator_assignment: Mapping[str, Permutation] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "primary": dict(self.primary_assignment),
            "operator": {k: list(v.mapping) for k, v in self.operator_assignment.items()},
        }


@dataclass(frozen=True)
class RelationCheck:
    relation: str
    passed: bool
    witness: int | None = None  # first orbit element moved, for operator relations


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[RelationCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __str__(self):
        lines = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL" + (f" (moves {c.witness})" if c.witness is not None else "")
            lines.append(f"{status}  {c.relation}")
        return "\n".join(lines)


# -- compiled plan -------------------------------------------------------------


@dataclass(frozen=True)
class _Plan:
    n: int
    names: tuple[str, ...]
    is_op: tuple[bool, ...]  # per variable index
    steps: tuple  # (BRANCH, v) | (FORWARD, v, rel) | (BACKWARD, v, rel) | (CHECK, rel)
    op_rels: tuple  # tuples of (var, exp)
    cols: tuple  # cols[y] = inner map f_y as a tuple, cols_inv[y] its inverse
    cols_inv: tuple
    inn: tuple  # permutations available to operator generators
    inn_inv: tuple


def _compile(p: AugmentedPresentation, q: FiniteQuandle, cap: int) -> _Plan:
    names = tuple(p.names)
    index = {g: i for i, g in enumerate(names)}
    is_op = tuple(p.kind(g) == OPERATOR for g in names)
    rels = [
        (index[r.lhs], index[r.base], tuple((index[l.gen], l.exp) for l in r.word)) for r in p.primary_relations
    ]
    op_rels = tuple(tuple((index[l.gen], l.exp) for l in r.word) for r in p.operator_relations)

    freq = [0] * len(names)
    for _, _, w in rels:
        for v, _ in w:
            freq[v] += 1
    for w in op_rels:
        for v, _ in w:
            freq[v] += 1

    assigned: set[int] = set()
    used = [False] * len(rels)
    steps = []
    while True:
        progress = True
        while progress:
            progress = False
            for k, (lhs, base, w) in enumerate(rels):
                if used[k]:
                    continue
                letters = {v for v, _ in w}
                vars_ = letters | {lhs, base}
                missing = vars_ - assigned
                if not missing:
                    steps.append((CHECK, rels[k]))
                    used[k] = True
                    progress = True
                elif len(missing) == 1:
                    (v,) = missing
                    if v in letters or lhs == base:
                        continue
                    steps.append((FORWARD if v == lhs else BACKWARD, v, rels[k]))
                    assigned.add(v)
                    used[k] = True
                    progress = True
        free = [v for v in range(len(names)) if v not in assigned]
        if not free:
            break
        v = min(free, key=lambda u: (-freq[u], u))
        steps.append((BRANCH, v))
        assigned.add(v)

    cols = tuple(tuple(q.table[x][y] for x in range(q.size)) for y in range(q.size))
    cols_inv = tuple(Permutation(c).inverse().mapping for c in cols)
    if any(is_op):
        inn = tuple(g.mapping for g in inner_group_elements(q, cap=cap))
    else:
        inn = ()
    inn_inv = tuple(Permutation(g).inverse().mapping for g in inn)
    return _Plan(
        q.size,
        names,
        is_op,
        tuple(steps),
        op_rels,
        cols,
        cols_inv,
        inn,
        inn_inv,
    )


def _perm(plan: _Plan, vals, v: int, e: int):
    if plan.is_op[v]:
        return plan.inn[vals[v]] if e == 1 else plan.inn_inv[vals[v]]
    return plan.cols[vals[v]] if e == 1 else plan.cols_inv[vals[v]]


def _act(plan: _Plan, vals, w, x: int) -> int:
    for v, e in w:
        x = _perm(plan, vals, v, e)[x]
    return x


def _act_inverse(plan: _Plan, vals, w, x: int) -> int:
    for v, e in reversed(w):
        x = _perm(plan, vals, v, -e)[x]
    return x


def _orbit(plan: _Plan, vals) -> set[int]:
    seeds = {vals[v] for v in range(len(plan.names)) if not plan.is_op[v]}
    maps = []
    for v in range(len(plan.names)):
        maps.append(_perm(plan, vals, v, 1))
        maps.append(_perm(plan, vals, v, -1))
    seen = set(seeds)
    todo = list(seeds)
    while todo:
        x = todo.pop()
        for m in maps:
            y = m[x]
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def _operator_ok(plan: _Plan, vals) -> bool:
    if not plan.op_rels:
        return True
    orbit = _orbit(plan, vals)
    return all(_act(plan, vals, w, x) == x for w in plan.op_rels for x in orbit)


def _domain(plan: _Plan, v: int) -> range:
    return range(len(plan.inn)) if plan.is_op[v] else range(plan.n)


def _solutions(plan: _Plan, vals: list, start: int = 0) -> Iterator[tuple]:
    steps = plan.steps

    def rec(k):
        if k == len(steps):
            if _operator_ok(plan, vals):
                yield tuple(vals)
            return
        s = steps[k]
        kind = s[0]
        if kind == BRANCH:
            v = s[1]
            for val in _domain(plan, v):
                vals[v] = val
                yield from rec(k + 1)
        elif kind == FORWARD:
            v, (lhs, base, w) = s[1], s[2]
            vals[v] = _act(plan, vals, w, vals[base])
            yield from rec(k + 1)
        elif kind == BACKWARD:
            v, (lhs, base, w) = s[1], s[2]
            vals[v] = _act_inverse(plan, vals, w, vals[lhs])
            yield from rec(k + 1)
        else:
            lhs, base, w = s[1]
            if _act(plan, vals, w, vals[base]) == vals[lhs]:
                yield from rec(k + 1)

    yield from rec(start)


def _count(plan: _Plan, vals: list, start: int = 0) -> int:
    steps = plan.steps

    def rec(k):
        if k == len(steps):
            return 1 if _operator_ok(plan, vals) else 0
        s = steps[k]
        kind = s[0]
        if kind == BRANCH:
            v = s[1]
            total = 0
            for val in _domain(plan, v):
                vals[v] = val
                total += rec(k + 1)
            return total
        if kind == FORWARD:
            _, v, (lhs, base, w) = s
            vals[v] = _act(plan, vals, w, vals[base])
            return rec(k + 1)
        if kind == BACKWARD:
            _, v, (lhs, base, w) = s
            vals[v] = _act_inverse(plan, vals, w, vals[lhs])
            return rec(k + 1)
        lhs, base, w = s[1]
        return rec(k + 1) if _act(plan, vals, w, vals[base]) == vals[lhs] else 0

    return rec(start)


def _count_branch(args) -> int:
    plan, value = args
    vals = [0] * len(plan.names)
    vals[plan.steps[0][1]] = value
    return _count(plan, vals, 1)


def count_colorings(
    p: AugmentedPresentation, q: FiniteQuandle, cap: int = DEFAULT_GROUP_CAP, jobs: int = 1
) -> int:
    """Number of colorings of ``p`` by ``q``.

    With ``jobs > 1`` the values of the first branching generator are split
    across worker processes; the total is the same as for ``jobs = 1``.
    """
    plan = _compile(p, q, cap)
    if not plan.steps:
        return 1 if _operator_ok(plan, []) else 0
    if jobs <= 1 or plan.steps[0][0] != BRANCH:
        return _count(plan, [0] * len(plan.names))
    first = plan.steps[0][1]
    work = [(plan, v) for v in _domain(plan, first)]
    with ProcessPoolExecutor(max_workers=min(jobs, len(work), os.cpu_count() or 1)) as ex:
        return sum(ex.map(_count_branch, work))


def _to_coloring(plan: _Plan, vals) -> Coloring:
    prim = {g: vals[i] for i, g in enumerate(plan.names) if not plan.is_op[i]}
    ops = {g: Permutation(plan.inn[vals[i]]) for i, g in enumerate(plan.names) if plan.is_op[i]}
    return Coloring(prim, ops)


def iter_colorings(p: AugmentedPresentation, q: FiniteQuandle, cap: int = DEFAULT_GROUP_CAP) -> Iterator[Coloring]:
    """All colorings, in search order."""
    plan = _compile(p, q, cap)
    for vals in _solutions(plan, [0] * len(plan.names)):
        yield _to_coloring(plan, vals)


def list_colorings(
    p: AugmentedPresentation, q: FiniteQuandle, limit: int, cap: int = DEFAULT_GROUP_CAP
) -> list[Coloring]:
    """Up to ``limit`` colorings, lexicographically smallest first.

    Assignments are compared as the tuple of values in declaration order,
    an operator value being compared by its permutation mapping.
    """
    if limit < 0:
        raise InvalidParameterError("limit must be >= 0")
    if limit == 0:
        return []
    plan = _compile(p, q, cap)

    def key(vals):
        return tuple(plan.inn[x] if plan.is_op[i] else (x,) for i, x in enumerate(vals))

    best = heapq.nsmallest(limit, _solutions(plan, [0] * len(plan.names)), key=key)
    return [_to_coloring(plan, v) for v in best]


def verify_coloring(p: AugmentedPresentation, q: FiniteQuandle, c: Coloring) -> VerificationReport:
    """Check every relation of ``p`` under ``c``, relation by relation."""
    for g in p.names:
        if p.kind(g) == PRIMARY and g not in c.primary_assignment:
            raise InvalidParameterError(f"coloring does not assign primary generator {g!r}")
        if p.kind(g) == OPERATOR and g not in c.operator_assignment:
            raise InvalidParameterError(f"coloring does not assign operator generator {g!r}")

    def perm(g, e):
        if p.kind(g) == OPERATOR:
            m = c.operator_assignment[g]
            if len(m) != q.size:
                raise PresentationError(f"operator value for {g!r} has the wrong size")
        else:
            x = c.primary_assignment[g]
            if not 0 <= x < q.size:
                raise InvalidParameterError(f"value {x} for {g!r} outside the quandle")
            m = Permutation(tuple(q.table[z][x] for z in range(q.size)))
        return m if e == 1 else m.inverse()

    def act(w, x):
        for l in w:
            x = perm(l.gen, l.exp)(x)
        return x

    checks = []
    for r in p.primary_relations:
        ok = act(r.word, c.primary_assignment[r.base]) == c.primary_assignment[r.lhs]
        checks.append(RelationCheck(str(r), ok))
    if p.operator_relations:
        seeds = set(c.primary_assignment.values())
        maps = [perm(g, 1).mapping for g in p.names] + [perm(g, -1).mapping for g in p.names]
        orbit, todo = set(seeds), list(seeds)
        while todo:
            x = todo.pop()
            for m in maps:
                if m[x] not in orbit:
                    orbit.add(m[x])
                    todo.append(m[x])
        for r in p.operator_relations:
            moved = next((x for x in sorted(orbit) if act(r.word, x) != x), None)
            checks.append(RelationCheck(f"{format_word(r.word)} == 1", moved is None, moved))
    return VerificationReport(tuple(checks))


# -- linear oracle for dihedral targets ----------------------------------------


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, math.isqrt(n) + 1))


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    a = [[v % p for v in r] for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], -1, p)
        a[rank] = [v * inv % p for v in a[rank]]
        for i in range(len(a)):
            if i != rank and a[i][col]:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def fox_matrix(d) -> list[list[int]]:
    """One row per crossing: c(in) - 2 c(over) + c(out) = 0."""
    from .diagram import ensure_classical

    ensure_classical(d)
    index = {a.id: i for i, a in enumerate(d.arcs)}
    rows = []
    for c in d.crossings:
        row = [0] * len(d.arcs)
        row[index[c.under_in]] += 1
        row[index[c.under_out]] += 1
        row[index[c.over.id]] -= 2
        rows.append(row)
    return rows


def fox_count(d, p: int) -> int:
    """Number of Fox p-colorings of a classical diagram, by linear algebra.

    Prime p: Gaussian elimination over Z/p.  Composite p: the Smith normal
    form over Z, each invariant factor contributing gcd(d_i, p) solutions.
    """
    if p < 2:
        raise InvalidParameterError(f"modulus must be >= 2, got {p}")
    rows = fox_matrix(d)
    n = len(d.arcs)
    if not rows:
        return p**n
    if _is_prime(p):
        return p ** (n - _rank_mod_p(rows, p))
    from .groups import smith_normal_form

    diag = smith_normal_form(rows)
    diag = diag + [0] * (n - len(diag))
    return math.prod(math.gcd(x, p) for x in diag)
