import math

import pytest
from hypothesis import given, strategies as st

from egcnet.egc import (
    AXIS_TABLE,
    EgcConfig,
    Octant,
    PLEASURE_SIGN,
    assign_axes,
    egc_eval,
    octant_of,
)
from egcnet.model import FavoriteValueDB, SlotRole, UnknownEventType
from conftest import frame
from oracles import oracle_signed_value

# Expected pleasure/displeasure for the eight strict sign patterns.
SIGN_TABLE = [
    ((+1, +1, +1), Octant.I, +1),
    ((-1, +1, +1), Octant.II, -1),
    ((-1, -1, +1), Octant.III, +1),
    ((+1, -1, +1), Octant.IV, -1),
    ((+1, +1, -1), Octant.V, -1),
    ((-1, +1, -1), Octant.VI, +1),
    ((-1, -1, -1), Octant.VII, -1),
    ((+1, -1, -1), Octant.VIII, +1),
]

MIRROR = {Octant.I: Octant.VII, Octant.II: Octant.VIII, Octant.III: Octant.V,
          Octant.IV: Octant.VI, Octant.V: Octant.III, Octant.VI: Octant.IV,
          Octant.VII: Octant.I, Octant.VIII: Octant.II}


class TestOctants:
    def test_examples(self):
        assert octant_of((+0.8, +0.6, +0.7)) is Octant.I
        assert octant_of((+0.5, -0.4, +0.8)) is Octant.IV
        assert octant_of((0.0, 0.3, 0.9)) is Octant.ON_AXIS

    @pytest.mark.parametrize("signs,octant,pleasure", SIGN_TABLE)
    def test_all_eight_patterns(self, signs, octant, pleasure):
        vec = tuple(s * 0.5 for s in signs)
        assert octant_of(vec) is octant
        assert PLEASURE_SIGN[octant] == pleasure

    @given(st.tuples(*[st.floats(min_value=-1, max_value=1).filter(lambda x: abs(x) > 1e-9)] * 3))
    def test_negation_mirrors_octant_and_flips_sign(self, vec):
        there = octant_of(vec)
        back = octant_of(tuple(-c for c in vec))
        assert back is MIRROR[there]
        assert PLEASURE_SIGN[back] == -PLEASURE_SIGN[there]

    def test_tiny_component_is_on_axis(self):
        assert octant_of((1e-13, 0.5, 0.5)) is Octant.ON_AXIS


class TestAxisAssignment:
    def test_v_s_om(self):
        triples = assign_axes(frame("V(S,OM)", S="i", OM="friend", P="meet"))
        assert [t.describe() for t in triples] == [("f_S", "f_OM", "f_P")]

    def test_v_s_uses_beta(self):
        triples = assign_axes(frame("V(S)", S="i", P="run"))
        assert [t.describe() for t in triples] == [("f_S", "beta", "f_P")]
        values = triples[0].evaluate({SlotRole.S: 0.2, SlotRole.P: 0.9})
        assert values == (0.2, 0.5, 0.9)

    def test_v_s_o_has_two_vectors(self):
        triples = assign_axes(frame("V(S,O)", S="i", O="dog", P="walk"))
        assert [t.describe() for t in triples] == [
            ("f_S", "f_O", "f_P"), ("f_O", "beta", "f_P")]

    def test_every_event_type_mapped(self):
        from egcnet.model import EVENT_SLOTS
        assert set(AXIS_TABLE) == set(EVENT_SLOTS)

    def test_unknown_event_type(self):
        with pytest.raises(UnknownEventType):
            assign_axes(frame("V(Q)", S="i", P="x"))

    def test_difference_axis_with_missing_side(self):
        # only OF present: f2 = beta - f_OF by default, -f_OF when configured
        triples = assign_axes(frame("V(S,OF)", S="i", OF="home", P="leave"))
        fvs = {SlotRole.S: 0.2, SlotRole.OF: 0.3, SlotRole.P: 0.9}
        assert triples[0].evaluate(fvs)[1] == pytest.approx(0.5 - 0.3)
        zero = EgcConfig(missing_diff_term="zero")
        assert triples[0].evaluate(fvs, zero)[1] == pytest.approx(-0.3)

    def test_difference_axis_clamped(self):
        triples = assign_axes(frame("V(S,OF)", S="i", OF="hell", P="leave"))
        fvs = {SlotRole.S: 0.2, SlotRole.OF: -1.0, SlotRole.P: 0.9}
        assert triples[0].evaluate(fvs)[1] == 1.0  # beta - (-1) clamped


class TestEgcEval:
    def test_derived_example_v_s_om(self):
        db = FavoriteValueDB()
        db.set_initial("i", 0.5)
        db.set_initial("storm", -0.4)
        db.set_initial("watch", 0.8)
        result = egc_eval(frame("V(S,OM)", S="i", OM="storm", P="watch"), db)
        expected = oracle_signed_value((0.5, -0.4, 0.8))
        assert result.octants == (Octant.IV,)
        assert result.raw_magnitude == pytest.approx(math.sqrt(1.05), abs=1e-12)
        assert result.signed_value == pytest.approx(expected, abs=1e-12)
        assert result.signed_value == pytest.approx(-0.5916079783099616, abs=1e-9)

    def test_zero_vector_is_on_axis(self):
        db = FavoriteValueDB()
        for word in ("a", "b", "c"):
            db.set_initial(word, 0.0)
        result = egc_eval(frame("V(S,OM)", S="a", OM="b", P="c"), db)
        assert result.octants == (Octant.ON_AXIS,)
        assert result.signed_value == 0.0

    def test_instrument_axis_uses_absolute_value(self):
        db = FavoriteValueDB()
        db.set_initial("he", 0.1)
        db.set_initial("nail", 0.6)
        db.set_initial("hammer", -0.5)
        db.set_initial("hit", 0.7)
        result = egc_eval(frame("V(S,O,I)", S="he", O="nail", I="hammer", P="hit"), db)
        assert result.vectors[0] == (0.6, 0.5, 0.7)
        assert result.octants == (Octant.I,)
        assert result.signed_value > 0

    def test_multi_vector_mean(self, db):
        result = egc_eval(frame("V(S,O)", S="i", O="dog", P="walk"), db)
        assert len(result.vectors) == 2
        expected = (oracle_signed_value((0.6, 0.8, 0.8)) + oracle_signed_value((0.8, 0.5, 0.8))) / 2
        assert result.signed_value == pytest.approx(expected, abs=1e-12)
        assert result.raw_magnitude == pytest.approx(abs(result.signed_value) * math.sqrt(3), abs=1e-12)

    def test_unknown_words_read_half(self):
        result = egc_eval(frame("V(S,O)", S="qqq", O="www", P="eee"), FavoriteValueDB())
        assert result.vectors[0] == (0.5, 0.5, 0.5)

    def test_eval_is_pure(self, db):
        cf = frame("V(S,O)", S="i", O="dog", P="walk")
        assert egc_eval(cf, db) == egc_eval(cf, db)

    @given(st.data())
    def test_signed_value_bounded(self, data):
        event_type = data.draw(st.sampled_from(sorted(AXIS_TABLE)))
        from egcnet.model import EVENT_SLOTS
        db = FavoriteValueDB()
        slots = {}
        for i, role in enumerate(sorted(EVENT_SLOTS[event_type], key=lambda r: r.value)):
            word = f"w{i}"
            slots[role.value] = word
            db.set_initial(word, data.draw(st.floats(min_value=-1, max_value=1)))
        result = egc_eval(frame(event_type, **slots), db)
        assert -1.0 <= result.signed_value <= 1.0
        assert result.raw_magnitude >= 0.0
