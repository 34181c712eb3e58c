"""Compare the three twist spins tau^p T(q,r), tau^q T(p,r), tau^r T(p,q).

Each group gets the relator mu^(pqr) (a sum with a curve of that degree) and
is compared by abelianization and by hom counts into every group of order up
to --max-order.

    python3 scripts/twist_spun_triples.py --p 2 --q 3 --r 5
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from budq.diagram import family_torus_link
from budq.groups import (
    abelianization,
    count_group_homs,
    small_group_battery,
    tietze_eliminate,
    twist_spun_group,
    with_meridian_order,
)
from budq.presentation import extract_presentation


@dataclass
class Config:
    p: int = 2
    q: int = 3
    r: int = 5
    max_order: int = 8
    curve_degree: int | None = None  # defaults to p*q*r


def triple(cfg: Config):
    deg = cfg.curve_degree or cfg.p * cfg.q * cfg.r
    out = []
    for n, (a, b) in ((cfg.p, (cfg.q, cfg.r)), (cfg.q, (cfg.p, cfg.r)), (cfg.r, (cfg.p, cfg.q))):
        k = extract_presentation(family_torus_link(a, b))
        g = twist_spun_group(k, n)
        g = tietze_eliminate(with_meridian_order(g, k.primary_generators[0], deg))
        out.append((f"tau^{n} T({a},{b})", g))
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name in ("p", "q", "r"):
        ap.add_argument(f"--{name}", type=int, default=getattr(Config, name))
    ap.add_argument("--max-order", type=int, default=Config.max_order)
    ap.add_argument("--curve-degree", type=int)
    args = ap.parse_args()
    cfg = Config(args.p, args.q, args.r, args.max_order, args.curve_degree)

    groups = triple(cfg)
    print("abelianizations:")
    for name, g in groups:
        print(f"  {name:<14} {abelianization(g)}  ({len(g.generators)} generators after reduction)")
    print("hom counts:")
    print(f"  {'target':<10}" + "".join(f"{name:>16}" for name, _ in groups))
    for hname, h in small_group_battery(cfg.max_order):
        counts = [count_group_homs(g, h) for _, g in groups]
        mark = "" if len(set(counts)) == 1 else "  <- differ"
        print(f"  {hname:<10}" + "".join(f"{c:>16}" for c in counts) + mark)


if __name__ == "__main__":
    main()
