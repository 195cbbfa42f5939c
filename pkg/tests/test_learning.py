import random

import pytest

from egcnet.fpn import NoMatchingRule
from egcnet.learning import (
    FeedbackSample,
    LearningConfig,
    MuSource,
    ZeroMu,
    apply_update,
    delta_known_min,
    delta_unknown_min,
    delta_unknown_other,
    derive_mu,
    effective_lambda,
    learn_direct_expression,
    learn_displeasure_association,
    learn_from_turn,
    tokenize_fv,
)
from egcnet.model import EVENT_SLOTS, FavoriteValue, FavoriteValueDB, SlotRole
from egcnet.mstn import MentalState, default_transition_table, init_from_table
from conftest import frame
from oracles import oracle_token_sequence


class TestTokenize:
    def test_negative_value(self):
        assert tokenize_fv(FavoriteValue(-0.8)) == (0.8, -1)

    def test_zero(self):
        assert tokenize_fv(FavoriteValue(0.0)) == (0.0, +1)

    def test_unknown_reads_agreement_value(self):
        assert tokenize_fv(FavoriteValue(0.0, known=False)) == (0.5, +1)


class TestDeltas:
    def test_unknown_min_example(self):
        assert delta_unknown_min(0.8, 0.56, 0.8) == pytest.approx(0.3, abs=1e-12)

    def test_unknown_min_no_error_no_update(self):
        assert delta_unknown_min(0.56, 0.56, 0.8) == 0.0

    def test_unknown_min_negative_direction(self):
        assert delta_unknown_min(0.2, 0.56, 0.8) == pytest.approx(-0.45, abs=1e-12)

    def test_unknown_other_example(self):
        assert delta_unknown_other(0.9, 0.5, 0.6) == pytest.approx(1.0, abs=1e-12)

    def test_unknown_other_fixed_point(self):
        assert delta_unknown_other(0.3, 0.5, 0.6) == pytest.approx(0.0, abs=1e-12)
        assert delta_unknown_other(0.5, 0.5, 1.0) == 0.0

    def test_known_min_example(self):
        assert delta_known_min(0.7, 0.4, 0.5, True) == pytest.approx(0.6, abs=1e-12)

    def test_known_min_other_places_untouched(self):
        assert delta_known_min(0.7, 0.4, 0.5, False) == 0.0

    @pytest.mark.parametrize("fn,args", [
        (delta_unknown_min, (0.5, 0.2)),
        (delta_unknown_other, (0.5, 0.2)),
    ])
    def test_zero_mu_raises(self, fn, args):
        with pytest.raises(ZeroMu):
            fn(*args, 0.0)


class TestApplyUpdate:
    def test_basic_step(self):
        db = FavoriteValueDB()
        db.set_initial("tea", 0.5)
        old, new = apply_update(db, None, "tea", 0.3, eta=1.0)
        assert (old.value, new.value) == (0.5, 0.8)
        assert db.lookup(None, "tea").value == 0.8

    def test_zero_delta_keeps_value(self):
        db = FavoriteValueDB()
        db.set_initial("tea", -0.4)
        _, new = apply_update(db, None, "tea", 0.0, eta=0.5)
        assert new.value == -0.4

    def test_clamped_at_one(self):
        db = FavoriteValueDB()
        db.set_initial("tea", 0.9)
        _, new = apply_update(db, None, "tea", 0.5, eta=1.0)
        assert new.value == 1.0

    def test_token_crossing_zero_flips_sign(self):
        db = FavoriteValueDB()
        db.set_initial("tea", 0.2)
        _, new = apply_update(db, None, "tea", -0.5, eta=1.0)
        assert new.value == pytest.approx(-0.3, abs=1e-12)
        db.set_initial("mud", -0.2)
        _, flipped = apply_update(db, None, "mud", -0.5, eta=1.0)
        assert flipped.value == pytest.approx(0.3, abs=1e-12)

    def test_updates_mark_known_and_land_in_personal_layer(self):
        db = FavoriteValueDB()
        _, new = apply_update(db, "bob", "zeugma", 0.1, eta=1.0)
        assert new.known
        assert ("bob", "zeugma") in db.personal


class TestMoodCoupling:
    def test_lambda_stretches_with_negativity(self):
        assert effective_lambda(0.1, MentalState.QUIET) == pytest.approx(0.1)
        assert effective_lambda(0.1, MentalState.HAPPY) == pytest.approx(0.1)
        assert effective_lambda(0.1, MentalState.SURPRISE) == pytest.approx(0.125)
        for mood in (MentalState.SAD, MentalState.ANGRY, MentalState.FEAR, MentalState.DISGUST):
            assert effective_lambda(0.1, mood) == pytest.approx(0.15)

    def test_mu_derived_from_transition_probability(self):
        model = init_from_table(default_transition_table())
        mu = derive_mu(model, MentalState.QUIET, dominant_group=2)
        assert mu == pytest.approx(0.213 / 0.999, abs=1e-9)  # quiet -> happy, row-normalized

    def test_mu_floor(self):
        probs = [[0.0] * 7 for _ in range(7)]
        for i in range(7):
            probs[i][1] = 1.0
        model = init_from_table(probs)
        mu = derive_mu(model, MentalState.QUIET, dominant_group=2)  # p(quiet->happy)=0
        assert mu == 0.05


def convergence_db() -> FavoriteValueDB:
    db = FavoriteValueDB()
    db.set_initial("i", 0.6)
    db.set_initial("walk", 0.8)
    return db  # object word left unknown on purpose


def cfg(eta=1.0, mu=0.9) -> LearningConfig:
    return LearningConfig(eta=eta, mu_source=MuSource.FIXED_TABLE,
                          fixed_mu={"R6": mu}, base_lambda=0.1)


CF = frame("V(S,O)", S="i", O="zeugma", P="walk")


class TestLearnFromTurn:
    def test_unknown_min_converges_in_one_turn_at_full_rate(self):
        db = convergence_db()
        sample = FeedbackSample(cf=CF, ev=0.48, ev_sign=+1, mood=MentalState.QUIET)
        report = learn_from_turn(sample, db, None, cfg())
        assert report.branch == "eq10"
        assert report.rule_name == "R6"
        assert report.min_role is SlotRole.O
        again = learn_from_turn(sample, db, None, cfg())
        assert abs(again.y_k - 0.48) < 1e-9

    def test_all_known_updates_only_min_place(self):
        db = convergence_db()
        db.set_initial("zeugma", 0.5)
        before_i = db.lookup(None, "i").value
        before_walk = db.lookup(None, "walk").value
        sample = FeedbackSample(cf=CF, ev=0.48, mood=MentalState.QUIET)
        report = learn_from_turn(sample, db, None, cfg())
        assert report.branch == "eq14"
        assert [entry.word for entry in report.entries] == ["zeugma"]
        assert db.lookup(None, "i").value == before_i
        assert db.lookup(None, "walk").value == before_walk

    def test_matching_feedback_changes_nothing(self):
        db = convergence_db()
        db.set_initial("zeugma", 0.5)
        y_k = 0.5 * 0.9
        sample = FeedbackSample(cf=CF, ev=y_k, mood=MentalState.QUIET)
        report = learn_from_turn(sample, db, None, cfg())
        assert all(entry.delta == 0.0 for entry in report.entries)
        assert db.lookup(None, "zeugma").value == 0.5

    def test_min_known_other_unknown_takes_eq12(self):
        db = FavoriteValueDB()
        db.set_initial("i", 0.2)      # the min place, known
        db.set_initial("walk", 0.8)
        sample = FeedbackSample(cf=CF, ev=0.9, mood=MentalState.QUIET)
        report = learn_from_turn(sample, db, None, cfg())
        assert report.branch == "eq12"
        assert [entry.word for entry in report.entries] == ["zeugma"]
        # y_u = 0.5 for the unknown place
        assert report.entries[0].delta == pytest.approx((0.9 - 0.5 * 0.9) / 0.9, abs=1e-12)

    def test_two_negatives_skip_update(self):
        db = FavoriteValueDB()
        db.set_initial("i", -0.3)
        db.set_initial("walk", -0.6)
        db.set_initial("zeugma", 0.4)
        sample = FeedbackSample(cf=CF, ev=0.9, mood=MentalState.QUIET)
        report = learn_from_turn(sample, db, None, cfg())
        assert report.branch == "skipped"
        assert report.entries == ()
        assert db.lookup(None, "i").value == -0.3
        assert db.lookup(None, "zeugma").value == 0.4

    def test_split_rule_uses_winning_branch(self):
        db = FavoriteValueDB()
        db.set_initial("i", 0.2)
        db.set_initial("leave", 0.9)
        db.set_initial("home", 0.8)
        cf = frame("V(S,OS)", S="i", OS="home", P="leave")
        config = LearningConfig(fixed_mu={"R51": 0.9, "R52": 0.9}, base_lambda=0.1)
        sample = FeedbackSample(cf=cf, ev=0.5, mood=MentalState.QUIET)
        report = learn_from_turn(sample, db, None, config)
        # R52 (OS,V) yields 0.8*0.9 > R51 (S,V) 0.2*0.9
        assert report.rule_name == "R52"
        assert report.y_k == pytest.approx(0.72, abs=1e-12)

    def test_gated_turn_still_learns(self):
        db = FavoriteValueDB()
        db.set_initial("i", 0.05)  # below threshold, rule never fires
        db.set_initial("walk", 0.9)
        db.set_initial("zeugma", 0.9)
        sample = FeedbackSample(cf=CF, ev=0.45, mood=MentalState.QUIET)
        report = learn_from_turn(sample, db, None, cfg())
        assert report.y_k == 0.0
        assert report.branch == "eq14"
        assert report.entries[0].word == "i"

    def test_mstn_derived_mu(self):
        db = convergence_db()
        model = init_from_table(default_transition_table())
        config = LearningConfig(mu_source=MuSource.MSTN_DERIVED, base_lambda=0.1)
        sample = FeedbackSample(cf=CF, ev=0.4, mood=MentalState.QUIET)
        report = learn_from_turn(sample, db, model, config, dominant_group=2)
        assert report.mu == pytest.approx(0.213 / 0.999, abs=1e-9)

    def test_unvalidated_frame_rejected(self):
        db = convergence_db()
        bad = frame("V(S,O)", S="i", P="walk")
        with pytest.raises(Exception):
            learn_from_turn(FeedbackSample(cf=bad, ev=0.5), db, None, cfg())

    def test_ev_range_enforced(self):
        with pytest.raises(ValueError):
            FeedbackSample(cf=CF, ev=1.2)
        with pytest.raises(ValueError):
            FeedbackSample(cf=CF, ev=0.5, ev_sign=0)


class TestThinEntryPoints:
    def test_direct_expression_moves_toward_liking(self):
        db = FavoriteValueDB()
        _, new = learn_direct_expression(db, None, "jazz", liked=True, degree=0.4)
        assert new.value == pytest.approx(0.9, abs=1e-12)  # unknown starts at 0.5
        _, disliked = learn_direct_expression(db, None, "mud", liked=False, degree=0.7)
        assert disliked.value == pytest.approx(-0.2, abs=1e-12)

    def test_displeasure_association_drags_down(self):
        db = FavoriteValueDB()
        db.set_initial("queue", 0.1)
        _, new = learn_displeasure_association(db, None, "queue", displeasure=0.6)
        assert new.value == pytest.approx(-0.5, abs=1e-12)

    def test_degree_ranges_enforced(self):
        db = FavoriteValueDB()
        with pytest.raises(ValueError):
            learn_direct_expression(db, None, "x", liked=True, degree=1.5)
        with pytest.raises(ValueError):
            learn_displeasure_association(db, None, "x", displeasure=-0.1)


class TestConvergence:
    def test_geometric_error_contraction_matches_scalar_oracle(self):
        for eta in (1.0, 0.5, 0.25):
            db = convergence_db()
            sample = FeedbackSample(cf=CF, ev=0.48, mood=MentalState.QUIET)
            expected_ys = oracle_token_sequence(
                token0=0.5, others_min=0.6, ev=0.48, mu=0.9, eta=eta, steps=12)
            for step in range(12):
                report = learn_from_turn(sample, db, None, cfg(eta=eta))
                assert report.y_k == pytest.approx(expected_ys[step], abs=1e-9)

    def test_half_rate_halves_error_each_turn(self):
        db = convergence_db()
        sample = FeedbackSample(cf=CF, ev=0.48, mood=MentalState.QUIET)
        errors = []
        for _ in range(11):
            report = learn_from_turn(sample, db, None, cfg(eta=0.5))
            errors.append(abs(0.48 - report.y_k))
        for first, second in zip(errors, errors[1:]):
            assert second / first == pytest.approx(0.5, abs=1e-6)


class TestFuzz:
    def test_clamp_and_branch_exclusivity(self):
        rng = random.Random(20240817)
        db = FavoriteValueDB()
        words = [f"w{i}" for i in range(12)]
        for word in words[:6]:
            db.set_initial(word, rng.uniform(-1, 1))
        event_types = sorted(EVENT_SLOTS)
        for _ in range(1500):
            event_type = rng.choice(event_types)
            slots = {role.value: rng.choice(words)
                     for role in EVENT_SLOTS[event_type]}
            cf = frame(event_type, **slots)
            sample = FeedbackSample(
                cf=cf, ev=rng.random(), ev_sign=rng.choice([1, -1]),
                mood=MentalState(rng.randint(1, 7)))
            config = LearningConfig(eta=rng.choice([0.25, 0.5, 1.0]), base_lambda=0.1)
            report = learn_from_turn(sample, db, None, config)
            assert report.branch in {"eq10", "eq12", "eq14", "skipped"}
            for entry in report.entries:
                assert -1.0 <= entry.new_value <= 1.0
        for fv in list(db.initial.values()) + list(db.personal.values()):
            assert -1.0 <= fv.value <= 1.0
