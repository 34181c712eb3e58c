"""Fixed sets of small quandles used as coloring targets in experiments and tests."""

from __future__ import annotations

from .groups import symmetric_group
from .quandle import FiniteQuandle, make_alexander, make_conjugation, make_dihedral, make_trivial


def transposition_kei(n: int = 4) -> FiniteQuandle:
    """Transpositions of S_n under conjugation (a kei with n(n-1)/2 elements)."""
    s = make_conjugation(symmetric_group(n))
    elems = [i for i, lab in enumerate(s.labels) if lab.count("(") == 1 and len(lab.split()) == 2]
    return s.restrict(elems)


def kei_battery() -> list[tuple[str, FiniteQuandle]]:
    out = [(f"R{n}", make_dihedral(n)) for n in (3, 4, 5, 6, 7, 9)]
    out.append(("T3", make_trivial(3)))
    out.append(("transpositions(S4)", transposition_kei(4)))
    return out


def full_battery() -> list[tuple[str, FiniteQuandle]]:
    out = [(f"R{n}", make_dihedral(n)) for n in range(2, 10)]
    out += [
        ("T3", make_trivial(3)),
        ("conj(S3)", make_conjugation(symmetric_group(3))),
        ("Alex(5,2)", make_alexander(5, 2)),
        ("Alex(7,3)", make_alexander(7, 3)),
        ("transpositions(S4)", transposition_kei(4)),
    ]
    return out
