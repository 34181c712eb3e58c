"""Independent reference implementations used only by the tests.

Nothing here imports the search or linear-algebra code it checks: colorings
are found by enumerating every assignment, Fox colorings by enumerating
every vector, and invariant factors come from sympy.
"""

from __future__ import annotations

import itertools

from sympy import ZZ, Matrix
from sympy.matrices.normalforms import invariant_factors


def _column(table, y):
    return tuple(row[y] for row in table)


def _inverse(perm):
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    return tuple(inv)


def _generated_group(n, gens):
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                r = tuple(g[p[i]] for i in range(n))
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return sorted(seen)


def brute_force_count(pres_json: dict, table) -> int:
    """Enumerate every assignment and test every relation directly.

    Takes the presentation as its JSON dict so it shares no code with the
    library's data model.
    """
    n = len(table)
    gens = [(g["name"], g["kind"]) for g in pres_json["generators"]]
    prim = [g for g, k in gens if k == "primary"]
    ops = [g for g, k in gens if k == "operator"]
    inn = _generated_group(n, [_column(table, y) for y in range(n)]) if ops else []
    total = 0
    for pv in itertools.product(range(n), repeat=len(prim)):
        for ov in itertools.product(inn, repeat=len(ops)):
            c = dict(zip(prim, pv))
            perms = {g: _column(table, c[g]) for g in prim}
            perms.update(dict(zip(ops, ov)))

            def act(w, x):
                for letter in w:
                    p = perms[letter["gen"]]
                    x = p[x] if letter["exp"] == 1 else _inverse(p)[x]
                return x

            if not all(act(r["word"], c[r["base"]]) == c[r["lhs"]] for r in pres_json["primary_relations"]):
                continue
            if pres_json["operator_relations"]:
                orbit = set(c.values())
                grew = True
                while grew:
                    grew = False
                    for p in perms.values():
                        for q in (p, _inverse(p)):
                            for x in list(orbit):
                                if q[x] not in orbit:
                                    orbit.add(q[x])
                                    grew = True
                if not all(act(r["word"], x) == x for r in pres_json["operator_relations"] for x in orbit):
                    continue
            total += 1
    return total


def brute_force_fox(diagram_json: dict, p: int) -> int:
    arcs = [a["id"] for a in diagram_json["arcs"]]
    idx = {a: i for i, a in enumerate(arcs)}
    eqs = [(idx[c["under_in"]], idx[c["under_out"]], idx[c["over"]["id"]]) for c in diagram_json["crossings"]]
    return sum(
        all((v[o] - 2 * v[y] + v[i]) % p == 0 for i, o, y in eqs)
        for v in itertools.product(range(p), repeat=len(arcs))
    )


def sympy_invariants(rows, ncols=None) -> list[int]:
    """Invariant factors d1 | d2 | ..., zeros last, padded to min(rows, cols)."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    k = min(len(rows), ncols)
    if k == 0:
        return []
    facs = [abs(int(x)) for x in invariant_factors(Matrix(rows), domain=ZZ)]
    nonzero = [x for x in facs if x]
    return nonzero + [0] * (k - len(nonzero))


def brute_force_homs(gp_json: dict, mul, identity: int) -> int:
    n = len(mul)
    inv = [next(b for b in range(n) if mul[a][b] == identity) for a in range(n)]
    gens = gp_json["generators"]
    total = 0
    for vals in itertools.product(range(n), repeat=len(gens)):
        env = dict(zip(gens, vals))
        ok = True
        for r in gp_json["relators"]:
            x = identity
            for letter in r:
                v = env[letter["gen"]]
                x = mul[x][v if letter["exp"] == 1 else inv[v]]
            if x != identity:
                ok = False
                break
        total += ok
    return total
