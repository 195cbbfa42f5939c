import json
import math

import pytest
from hypothesis import given, strategies as st

from egcnet.model import (
    CaseFrame,
    CaseFrameError,
    DatabaseError,
    EMOTION_GROUPS,
    EVENT_SLOTS,
    FavoriteValue,
    FavoriteValueDB,
    MissingSlot,
    PredicateKind,
    SlotRole,
    UnexpectedSlot,
    UnknownEventType,
    UnknownEmotion,
    emotion_label,
    lookup_fv,
    validate_case_frame,
)
from conftest import frame


class TestFavoriteValue:
    def test_clamps_into_range(self):
        assert FavoriteValue(1.7).value == 1.0
        assert FavoriteValue(-2.0).value == -1.0
        assert FavoriteValue(0.25).value == 0.25

    def test_unknown_always_reads_neutral(self):
        fv = FavoriteValue(-0.9, known=False)
        assert fv.value == 0.5
        assert not fv.known

    @given(st.floats(allow_nan=False, allow_infinity=False, width=64))
    def test_any_write_stays_bounded(self, x):
        assert -1.0 <= FavoriteValue(x).value <= 1.0


class TestLookup:
    def test_personal_layer_wins(self, db):
        fv = lookup_fv(db, "alice", "dog")
        assert fv.value == 0.9 and fv.known

    def test_initial_layer_fallback(self, db):
        fv = lookup_fv(db, "alice", "rain")
        assert fv.value == -0.3 and fv.known

    def test_unknown_word_reads_half(self, db):
        fv = lookup_fv(db, "alice", "zeugma")
        assert fv.value == 0.5 and not fv.known

    def test_lookup_is_pure(self, db):
        first = lookup_fv(db, "alice", "dog")
        for _ in range(5):
            assert lookup_fv(db, "alice", "dog") == first

    def test_words_are_case_folded(self, db):
        assert lookup_fv(db, None, "DOG").value == 0.8
        db.set_initial("Tea", 0.4)
        assert lookup_fv(db, None, "tea").value == 0.4

    def test_default_persona_for_none(self, db):
        db.set_personal(None, "rain", 0.1)
        assert lookup_fv(db, None, "rain").value == 0.1
        assert lookup_fv(db, "default", "rain").value == 0.1
        assert lookup_fv(db, "bob", "rain").value == -0.3


class TestRoundTrip:
    def test_save_load_bit_exact(self, db, tmp_path):
        db.set_initial("pi-ish", 0.1 + 0.2)  # awkward float on purpose
        path = tmp_path / "fv.jsonl"
        db.save(path)
        loaded = FavoriteValueDB.load(path)
        assert loaded.initial == db.initial
        assert loaded.personal == db.personal
        for word, fv in db.initial.items():
            again = loaded.initial[word]
            assert (again.value, again.known) == (fv.value, fv.known)
            assert math.copysign(1.0, again.value) == math.copysign(1.0, fv.value)

    def test_unknown_fields_rejected(self, tmp_path):
        path = tmp_path / "fv.jsonl"
        path.write_text('{"layer": "initial", "word": "x", "value": 0.1, "known": true, "mood": 3}\n')
        with pytest.raises(DatabaseError, match="unknown fields"):
            FavoriteValueDB.load(path)

    def test_value_out_of_range_rejected(self, tmp_path):
        path = tmp_path / "fv.jsonl"
        path.write_text('{"layer": "initial", "word": "x", "value": 1.2}\n')
        with pytest.raises(DatabaseError, match="outside"):
            FavoriteValueDB.load(path)

    def test_unknown_flag_requires_neutral_value(self, tmp_path):
        path = tmp_path / "fv.jsonl"
        path.write_text('{"layer": "initial", "word": "x", "value": 0.2, "known": false}\n')
        with pytest.raises(DatabaseError, match="known=false"):
            FavoriteValueDB.load(path)

    def test_duplicates_rejected(self, tmp_path):
        path = tmp_path / "fv.jsonl"
        rec = {"layer": "initial", "word": "x", "value": 0.2}
        path.write_text(json.dumps(rec) + "\n" + json.dumps(rec) + "\n")
        with pytest.raises(DatabaseError, match="duplicate"):
            FavoriteValueDB.load(path)


class TestCaseFrameValidation:
    def test_valid_frame_passes(self):
        validate_case_frame(frame("V(S,O)", S="I", O="dog", P="walk"))

    def test_missing_slot(self):
        with pytest.raises(MissingSlot) as err:
            validate_case_frame(frame("V(S,O)", S="I", P="walk"))
        assert err.value.role is SlotRole.O

    def test_unknown_event_type(self):
        with pytest.raises(UnknownEventType):
            validate_case_frame(frame("V(X)", S="I", P="walk"))

    def test_unexpected_slot(self):
        with pytest.raises(UnexpectedSlot) as err:
            validate_case_frame(frame("V(S)", S="I", O="dog", P="walk"))
        assert err.value.role is SlotRole.O

    def test_missing_predicate(self):
        with pytest.raises(MissingSlot) as err:
            validate_case_frame(frame("V(S)", S="I"))
        assert err.value.role is SlotRole.P

    def test_predicate_kind_derived(self):
        assert frame("V(S)", S="I", P="run").predicate_kind is PredicateKind.VERB
        assert frame("A(S,C)", S="sky", C="blue", P="is").predicate_kind is PredicateKind.ADJECTIVE

    def test_predicate_kind_mismatch(self):
        cf = CaseFrame("A(S,C)", {SlotRole.S: "sky", SlotRole.C: "blue", SlotRole.P: "is"},
                       predicate_kind=PredicateKind.VERB)
        with pytest.raises(CaseFrameError, match="predicate kind"):
            validate_case_frame(cf)

    def test_every_event_type_has_predicate(self):
        for required in EVENT_SLOTS.values():
            assert SlotRole.P in required

    def test_from_dict_round_trip(self):
        cf = frame("V(S,O,I)", S="he", O="nail", I="hammer", P="hit")
        again = CaseFrame.from_dict(cf.to_dict())
        assert again == cf

    def test_from_dict_rejects_bad_role(self):
        with pytest.raises(CaseFrameError, match="unknown slot role"):
            CaseFrame.from_dict({"event_type": "V(S)", "slots": {"Q": "x", "P": "y"}})


class TestEmotionCatalogue:
    def test_every_name_in_exactly_one_group(self):
        assert len(EMOTION_GROUPS) == 28
        for name, group in EMOTION_GROUPS.items():
            assert emotion_label(name).group == group

    def test_group_sizes(self):
        sizes = {}
        for group in EMOTION_GROUPS.values():
            sizes[group] = sizes.get(group, 0) + 1
        assert sizes == {1: 11, 2: 2, 3: 3, 4: 3, 5: 2, 6: 2, 7: 3, 8: 1, 9: 1}

    def test_hyphen_spelling_accepted(self):
        assert emotion_label("sorry-for").name == "sorry_for"
        assert emotion_label("Happy_For").name == "happy_for"

    def test_unknown_emotion(self):
        with pytest.raises(UnknownEmotion):
            emotion_label("melancholy")
