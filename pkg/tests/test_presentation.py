import sys
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from corpus import TORUS_PARAMS, curve, knot, spun_trefoil  # noqa: E402
from oracles import brute_force_count  # noqa: E402
from strategies import presentations  # noqa: E402

from budq.diagram import family_algebraic_curve, family_torus_link, family_unknotted_projective_plane, unknot_diagram  # noqa: E402
from budq.errors import PresentationError  # noqa: E402
from budq.groups import abelianization  # noqa: E402
from budq.presentation import (  # noqa: E402
    AugmentedPresentation,
    GeneratorId,
    GroupPresentation,
    Letter,
    OperatorRelation,
    PrimaryRelation,
    as_power,
    attach_order_relation,
    connected_sum,
    extract_presentation,
    format_word,
    free_reduce,
    group_presentation,
    power_word,
    primary_presentation,
    propagate_order_relations,
    simplify,
    twist_spin,
    word,
)
from budq.quandle import make_alexander, make_dihedral, make_trivial  # noqa: E402

SMALL = [make_dihedral(3), make_dihedral(4), make_trivial(2), make_alexander(5, 2)]


class TestWords:
    def test_free_reduce(self):
        assert free_reduce(word("x", ("x", -1), "y")) == word("y")
        assert free_reduce(word("x", "y", ("y", -1), ("x", -1))) == ()

    def test_as_power(self):
        assert as_power(power_word("x", -3)) == ("x", -3)
        assert as_power(word("x", "y")) is None
        assert as_power(()) is None

    def test_format(self):
        assert format_word(word("x", "x", ("y", -1))) == "x^2 y^-1"
        assert format_word(()) == "1"

    def test_bad_exponent(self):
        with pytest.raises(PresentationError):
            Letter("x", 2)


class TestExtraction:
    def test_unknot(self):
        p = extract_presentation(unknot_diagram())
        assert p.names == ["x"] and not p.primary_relations and not p.operator_relations

    @pytest.mark.parametrize("d", range(1, 7))
    def test_curve_simplifies_to_power(self, d):
        p = curve(d)
        assert p.names == ["x1"]
        assert p.operator_relations == (OperatorRelation(power_word("x1", d)),)
        assert not p.primary_relations

    @pytest.mark.parametrize("pq", TORUS_PARAMS)
    def test_classical_one_relation_per_crossing(self, pq):
        dgm = family_torus_link(*pq)
        p = extract_presentation(dgm)
        assert p.is_primary and not p.operator_relations
        assert len(p.primary_relations) == len(dgm.crossings)

    def test_crossing_rule(self):
        dgm = family_torus_link(2, 3)
        p = extract_presentation(dgm)
        for c, r in zip(dgm.crossings, p.primary_relations):
            assert (r.lhs, r.base, r.word) == (c.under_out, c.under_in, (Letter(c.over.id, c.sign),))

    def test_rp2_self_band(self):
        p = simplify(extract_presentation(family_unknotted_projective_plane()))
        assert p.operator_relations and all(as_power(r.word) is not None for r in p.operator_relations)
        assert not p.primary_relations

    def test_raw_curve_has_framed_relation(self):
        p = extract_presentation(family_algebraic_curve(3))
        assert len(p.operator_relations) >= 1


class TestGroupPresentation:
    def test_primary_relation_becomes_conjugation(self):
        p = primary_presentation(["x", "y"], [PrimaryRelation("y", "x", word("y"))])
        g = group_presentation(p)
        assert g.relators == (word(("y", -1), ("y", -1), "x", "y"),)

    def test_curve_group(self):
        g = group_presentation(curve(4))
        assert g.generators == ("x1",) and g.relators == (power_word("x1", 4),)

    def test_unknown_relator_letter(self):
        with pytest.raises(PresentationError):
            GroupPresentation(("x",), (word("y"),))

    def test_json_round_trip(self):
        g = group_presentation(knot(2, 5))
        assert GroupPresentation.from_json(g.to_json()) == g


class TestConnectedSum:
    def test_renames_with_suffix(self):
        k = knot(2, 3)
        s = connected_sum(k, "a0", k, "a0")
        assert set(k.names) < set(s.names)
        assert {n for n in s.names if n not in k.names} == {"a1~1", "a2~1"}

    def test_generator_count(self):
        a, b = knot(2, 3), knot(2, 5)
        s = connected_sum(a, "a0", b, "a0")
        assert len(s.names) == len(a.names) + len(b.names) - 1
        assert len(s.primary_relations) == len(a.primary_relations) + len(b.primary_relations)

    def test_rejects_operator_generator(self):
        p = AugmentedPresentation((GeneratorId("x"), GeneratorId("u", "operator")))
        with pytest.raises(PresentationError):
            connected_sum(p, "u", p, "x")

    def test_provenance_logged(self):
        k = knot(2, 3)
        assert connected_sum(k, "a0", k, "a0").provenance[-1].startswith("connected_sum")

    @pytest.mark.parametrize("q", SMALL, ids=["R3", "R4", "T2", "Alex52"])
    def test_commutative_on_counts(self, q):
        a, b = knot(2, 3), knot(2, 2)
        ab = connected_sum(a, "a0", b, "a0")
        ba = connected_sum(b, "a0", a, "a0")
        assert brute_force_count(ab.to_json(), q.table) == brute_force_count(ba.to_json(), q.table)


class TestTwistSpin:
    def test_zero_is_identity(self):
        k = knot(2, 3)
        assert twist_spin(k, 0) == k

    def test_adds_one_relation_per_generator(self):
        k = knot(2, 3)
        t = twist_spin(k, 3)
        assert t.operator_relations == tuple(OperatorRelation(power_word(g, 3)) for g in k.names)

    def test_rejects_negative(self):
        with pytest.raises(PresentationError):
            twist_spin(knot(2, 3), -1)

    def test_rejects_operator_generators(self):
        p = AugmentedPresentation((GeneratorId("x"), GeneratorId("u", "operator")))
        with pytest.raises(PresentationError):
            twist_spin(p, 2)

    @pytest.mark.parametrize("pq", [(2, 3), (2, 5), (3, 4), (2, 2), (3, 3)])
    @pytest.mark.parametrize("n", range(0, 6))
    def test_abelianization_quotiented_by_n(self, pq, n):
        k = knot(*pq)
        base = abelianization(group_presentation(k))
        got = abelianization(group_presentation(twist_spin(k, n)))
        # Z^r with every meridian class of order n
        if n == 0:
            want = (base.free_rank, base.torsion)
        elif n == 1:
            want = (0, ())
        else:
            want = (0, (n,) * base.free_rank)
        assert (got.free_rank, got.torsion) == want


class TestAttachOrder:
    def test_appends_power(self):
        p = attach_order_relation(spun_trefoil(), "x1", 4)
        assert p.operator_relations[-1] == OperatorRelation(power_word("x1", 4))

    def test_errors(self):
        with pytest.raises(PresentationError):
            attach_order_relation(spun_trefoil(), "x1", 0)
        with pytest.raises(PresentationError):
            attach_order_relation(spun_trefoil(), "nope", 2)


class TestPropagate:
    def test_spreads_along_links(self):
        p = primary_presentation(
            ["a", "b", "c"],
            [PrimaryRelation("b", "a", word("c")), PrimaryRelation("c", "b", word("a"))],
            [OperatorRelation(power_word("a", 2))],
        )
        q = propagate_order_relations(p)
        assert set(q.operator_relations) >= {OperatorRelation(power_word(g, 2)) for g in "abc"}

    def test_noop_without_orders(self):
        k = knot(2, 3)
        assert propagate_order_relations(k) is k

    def test_isolated_generator_untouched(self):
        p = primary_presentation(["a", "b"], [], [OperatorRelation(power_word("a", 3))])
        assert propagate_order_relations(p) == p


class TestSimplify:
    def test_examples(self):
        p = primary_presentation(
            ["x", "y"],
            [PrimaryRelation("y", "x"), PrimaryRelation("x", "x")],
            [
                OperatorRelation(power_word("y", -2)),
                OperatorRelation(power_word("x", 4)),
                OperatorRelation(word("x", ("x", -1))),
            ],
        )
        s = simplify(p)
        assert s.names == ["x"]
        assert s.primary_relations == ()
        assert s.operator_relations == (OperatorRelation(power_word("x", 2)),)
        assert s.provenance[-1] == "simplify"

    def test_idempotent(self):
        p = curve(3)
        assert simplify(p) == p

    @settings(max_examples=80)
    @given(presentations(), st.sampled_from(range(len(SMALL))))
    def test_preserves_counts(self, p, qi):
        q = SMALL[qi]
        assert brute_force_count(simplify(p).to_json(), q.table) == brute_force_count(p.to_json(), q.table)

    @settings(max_examples=80)
    @given(presentations(), st.sampled_from(range(len(SMALL))))
    def test_propagate_preserves_counts(self, p, qi):
        q = SMALL[qi]
        got = brute_force_count(propagate_order_relations(p).to_json(), q.table)
        assert got == brute_force_count(p.to_json(), q.table)


class TestJson:
    @given(presentations())
    def test_round_trip(self, p):
        assert AugmentedPresentation.from_json(p.to_json()) == p

    def test_digest_ignores_provenance(self):
        k = knot(2, 3)
        assert k.logged("note").digest() == k.digest()
        assert twist_spin(k, 2).digest() != k.digest()

    def test_malformed(self):
        with pytest.raises(PresentationError):
            AugmentedPresentation.from_json({"generators": [{"kind": "primary"}]})

    def test_validation(self):
        with pytest.raises(PresentationError):
            primary_presentation(["x", "x"])
        with pytest.raises(PresentationError):
            primary_presentation(["x"], [PrimaryRelation("x", "y")])
