"""Table of bridge lower bounds for iterated connected sums of a torus knot.

Rows are (summand count, Euler characteristic); the knot is T(2,q) colored
by the dihedral quandle R_q.

    python3 scripts/bridge_table.py --q 3 --copies 4
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from budq.bounds import bridge_lower_bound
from budq.coloring import count_colorings
from budq.diagram import family_torus_link
from budq.presentation import connected_sum, extract_presentation
from budq.quandle import make_dihedral


@dataclass
class Config:
    q: int = 3
    copies: int = 3
    chis: tuple[int, ...] = (2, 1, 0, -2)


def run(cfg: Config) -> list[dict]:
    k = extract_presentation(family_torus_link(2, cfg.q))
    rq = make_dihedral(cfg.q)
    rows = []
    acc = k
    for n in range(1, cfg.copies + 1):
        c = count_colorings(acc, rq)
        for chi in cfg.chis:
            r = bridge_lower_bound(c, cfg.q, chi)
            rows.append({"copies": n, "chi": chi, "count": c, "bound": r.bound_integer, "exact": r.exact})
        acc = connected_sum(acc, "a0", k, "a0")
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=Config.q)
    ap.add_argument("--copies", type=int, default=Config.copies)
    args = ap.parse_args()
    rows = run(Config(q=args.q, copies=args.copies))
    print(f"{'copies':>6} {'chi':>4} {'#Col':>8} {'bound':>6}  exact")
    for r in rows:
        print(f"{r['copies']:>6} {r['chi']:>4} {r['count']:>8} {r['bound']:>6}  {r['exact']}")


if __name__ == "__main__":
    main()
