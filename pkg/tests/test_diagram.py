import copy
import json
import math
import sys
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from corpus import classical_corpus, dotted_example_json  # noqa: E402

from budq.diagram import (  # noqa: E402
    BandedUnlinkDiagram,
    closed_braid_diagram,
    ensure_classical,
    family_algebraic_curve,
    family_spun_trefoil,
    family_torus_link,
    family_unknotted_projective_plane,
    family_unknotted_torus,
    is_classical,
    parse_diagram,
    serialize_diagram,
    spun_trefoil_with_curve,
    unknot_diagram,
    validate_diagram,
)
from budq.errors import DiagramParseError, DiagramValidationError, InvalidParameterError, SchemaError  # noqa: E402

ALL_FAMILIES = [
    unknot_diagram(),
    family_unknotted_torus(),
    family_unknotted_projective_plane(),
    family_spun_trefoil(),
    spun_trefoil_with_curve(3),
    BandedUnlinkDiagram.from_json(dotted_example_json()),
] + [family_algebraic_curve(d) for d in range(1, 7)]


def trefoil_json():
    return json.loads(serialize_diagram(family_torus_link(2, 3)))


class TestSerialization:
    def test_torus_2_3(self):
        d = family_torus_link(2, 3)
        assert len(d.crossings) == 3 and len(d.arcs) == 3
        text = serialize_diagram(d)
        assert text.endswith(b"\n")
        assert parse_diagram(text) == d

    def test_deterministic(self):
        assert serialize_diagram(family_torus_link(3, 4)) == serialize_diagram(family_torus_link(3, 4))

    @pytest.mark.parametrize("d", ALL_FAMILIES, ids=lambda d: d.name)
    def test_round_trip_families(self, d):
        assert parse_diagram(serialize_diagram(d)) == d

    def test_round_trip_corpus(self):
        for _, d in classical_corpus():
            assert parse_diagram(serialize_diagram(d)) == d

    def test_str_input(self):
        assert parse_diagram(serialize_diagram(unknot_diagram()).decode()) == unknot_diagram()


class TestParseErrors:
    def test_byte_offset(self):
        data = b'{"arcs": [}'
        with pytest.raises(DiagramParseError) as e:
            parse_diagram(data)
        assert e.value.offset == 10

    def test_offset_counts_bytes_not_characters(self):
        data = '{"name": "éé", "arcs": ]'.encode()
        with pytest.raises(DiagramParseError) as e:
            parse_diagram(data)
        assert e.value.offset == data.index(b"]")

    def test_invalid_utf8(self):
        with pytest.raises(DiagramParseError) as e:
            parse_diagram(b'{"name": "\xff"}')
        assert e.value.offset == 10

    def test_schema_path(self):
        obj = trefoil_json()
        obj["crossings"][1]["sign"] = 2
        with pytest.raises(SchemaError) as e:
            parse_diagram(json.dumps(obj))
        assert e.value.path == "crossings[1].sign"

    def test_schema_missing_field(self):
        obj = trefoil_json()
        del obj["crossings"][0]["over"]
        with pytest.raises(SchemaError) as e:
            parse_diagram(json.dumps(obj))
        assert e.value.path == "crossings[0]"

    def test_schema_bad_kind(self):
        obj = trefoil_json()
        obj["arcs"][0]["kind"] = "ribbon"
        with pytest.raises(SchemaError) as e:
            parse_diagram(json.dumps(obj))
        assert e.value.path == "arcs[0].kind"


class TestValidation:
    def _fail(self, obj):
        with pytest.raises(DiagramValidationError) as e:
            parse_diagram(json.dumps(obj))
        return e.value.failures

    def test_missing_arc_names_crossing(self):
        obj = trefoil_json()
        obj["crossings"][2]["under_out"] = "zz"
        failures = self._fail(obj)
        assert any("'c2'" in f and "'zz'" in f for f in failures)

    def test_duplicate_arc(self):
        obj = trefoil_json()
        obj["arcs"].append({"id": "a0", "kind": "unlink"})
        assert any("duplicate arc id 'a0'" in f for f in self._fail(obj))

    def test_kind_mismatch(self):
        obj = trefoil_json()
        obj["arcs"][1]["kind"] = "dotted"
        assert any("kind mismatch" in f for f in self._fail(obj))

    def test_band_on_dotted_arc(self):
        obj = dotted_example_json()
        obj["bands"] = [{"id": "b", "attach_from": "a", "attach_to": "x", "underpasses": []}]
        assert any("band 'b'" in f and "kind mismatch" in f for f in self._fail(obj))

    def test_orphan_arc(self):
        obj = trefoil_json()
        obj["arcs"].append({"id": "lonely", "kind": "unlink"})
        assert any("'lonely' belongs to no component" in f for f in self._fail(obj))

    def test_reports_every_failure(self):
        obj = trefoil_json()
        obj["crossings"][0]["over"]["id"] = "nope"
        obj["arcs"].append({"id": "a0", "kind": "unlink"})
        assert len(self._fail(obj)) >= 2

    def test_missing_over_band(self):
        obj = trefoil_json()
        obj["crossings"][0]["over"] = {"type": "band", "id": "ghost"}
        assert any("band 'ghost' does not exist" in f for f in self._fail(obj))

    def test_non_consecutive_crossing(self):
        obj = trefoil_json()
        obj["crossings"][0]["under_out"] = "a2"
        assert not validate_diagram(BandedUnlinkDiagram.from_json(obj)).ok

    @pytest.mark.parametrize("d", ALL_FAMILIES, ids=lambda d: d.name)
    def test_families_valid(self, d):
        assert validate_diagram(d).ok


class TestFamilies:
    @given(st.integers(2, 5), st.integers(1, 7))
    def test_torus_link_shape(self, p, q):
        d = family_torus_link(p, q)
        assert validate_diagram(d).ok and is_classical(d)
        assert len(d.crossings) == q * (p - 1)
        assert len(d.unlink_components) == math.gcd(p, q)

    @pytest.mark.parametrize("d", range(1, 9))
    def test_curve_euler_characteristic(self, d):
        dgm = family_algebraic_curve(d)
        assert validate_diagram(dgm).ok
        assert dgm.surface_meta.euler_characteristic == 2 - (d - 1) * (d - 2)
        assert dgm.surface_meta.orientable
        assert len(dgm.unlink_components) == d

    def test_surfaces(self):
        assert family_unknotted_torus().surface_meta.euler_characteristic == 0
        rp2 = family_unknotted_projective_plane().surface_meta
        assert (rp2.euler_characteristic, rp2.orientable) == (1, False)

    def test_curve_zero_rejected(self):
        with pytest.raises(InvalidParameterError):
            family_algebraic_curve(0)

    def test_ensure_classical(self):
        assert ensure_classical(unknot_diagram()) == unknot_diagram()
        with pytest.raises(InvalidParameterError):
            ensure_classical(family_spun_trefoil())

    def test_braid_closure(self):
        d = closed_braid_diagram([1, -2, 1, -2], 3, "figure eight")
        assert validate_diagram(d).ok and len(d.unlink_components) == 1 and len(d.crossings) == 4

    def test_from_json_does_not_mutate(self):
        obj = dotted_example_json()
        before = copy.deepcopy(obj)
        BandedUnlinkDiagram.from_json(obj)
        assert obj == before
