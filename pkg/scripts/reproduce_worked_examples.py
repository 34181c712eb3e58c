"""Recompute the small worked examples: coloring counts, bounds and group invariants.

    python3 scripts/reproduce_worked_examples.py [--max-degree 6]
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from budq.bounds import bridge_lower_bound
from budq.coloring import count_colorings
from budq.diagram import family_algebraic_curve, family_spun_trefoil, family_torus_link
from budq.groups import abelianization
from budq.presentation import (
    attach_order_relation,
    connected_sum,
    extract_presentation,
    group_presentation,
    simplify,
    twist_spin,
)
from budq.quandle import make_dihedral


@dataclass
class Config:
    max_degree: int = 6
    moduli: tuple[int, ...] = (3, 5, 7)
    max_twist: int = 5


def section(title: str) -> None:
    print(f"\n== {title}")


def run(cfg: Config) -> None:
    r3 = make_dihedral(3)
    spun = extract_presentation(family_spun_trefoil())

    section("spun trefoil with x1^2 == 1")
    s2 = attach_order_relation(spun, "x1", 2)
    print(f"{simplify(s2)}")
    print(f"colorings by R3: {count_colorings(s2, r3)}")

    section("algebraic curves C_d")
    for d in range(1, cfg.max_degree + 1):
        p = simplify(extract_presentation(family_algebraic_curve(d)))
        counts = {q: count_colorings(p, make_dihedral(q)) for q in cfg.moduli}
        ab = abelianization(group_presentation(p))
        print(f"d={d}  {p}  H1={ab}  " + "  ".join(f"R{q}:{c}" for q, c in counts.items()))

    section("torus knots T(2,q) and iterated sums")
    for q in cfg.moduli:
        k = extract_presentation(family_torus_link(2, q))
        rq = make_dihedral(q)
        acc = k
        for copies in (1, 2, 3):
            c = count_colorings(acc, rq)
            b = bridge_lower_bound(c, q, 2)
            print(f"{copies} x T(2,{q})  R{q}: {c}  bound(chi=2): {b.bound_exact}")
            acc = connected_sum(acc, "a0", k, "a0")

    section("twist spins of the trefoil")
    k = extract_presentation(family_torus_link(2, 3))
    for n in range(cfg.max_twist + 1):
        t = twist_spin(k, n)
        counts = [count_colorings(t, make_dihedral(q)) for q in cfg.moduli]
        print(f"n={n}  " + "  ".join(f"R{q}:{c}" for q, c in zip(cfg.moduli, counts)))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-degree", type=int, default=Config.max_degree)
    ap.add_argument("--max-twist", type=int, default=Config.max_twist)
    args = ap.parse_args()
    run(Config(max_degree=args.max_degree, max_twist=args.max_twist))


if __name__ == "__main__":
    main()
