"""Quandle colorings, group invariants and bridge bounds for banded unlink diagrams."""

from .bounds import BridgeBoundResult, bridge_lower_bound, classical_bridge_lower_bound, connected_sum_bridge_formula
from .coloring import Coloring, count_colorings, fox_count, list_colorings, verify_coloring
from .diagram import (
    BandedUnlinkDiagram,
    family_algebraic_curve,
    family_spun_trefoil,
    family_torus_link,
    family_unknotted_projective_plane,
    family_unknotted_torus,
    parse_diagram,
    serialize_diagram,
    spun_trefoil_with_curve,
    validate_diagram,
)
from .groups import FiniteGroup, abelianization, count_group_homs, smith_normal_form
from .presentation import (
    AugmentedPresentation,
    GroupPresentation,
    attach_order_relation,
    connected_sum,
    extract_presentation,
    group_presentation,
    propagate_order_relations,
    simplify,
    twist_spin,
)
from .quandle import (
    FiniteQuandle,
    Permutation,
    inner_group_elements,
    inner_map,
    make_alexander,
    make_conjugation,
    make_dihedral,
    make_trivial,
    quandle_type,
    subquandle_orbit,
    validate_quandle,
)
from .reidemeister import Move, apply_reidemeister
