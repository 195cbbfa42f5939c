"""Learns favorite values from emotion feedback by backward calculation
through the matched case-frame rule.

A turn's antecedent words are tokenized to [0, 1] agreement values (the
absolute FV, with the sign kept aside; an unrated word reads 0.5). The rule
net then yields the computed agreement y_k for the LIKE goal. Comparing y_k
with the user's real emotion value EV gives a correction:

  unknown FV at the min place:      delta = (EV - y_k) / mu
  unknown FV elsewhere (place u):   delta = (EV - y_u * mu) / mu
  everything known:                 delta = (EV - y_k) / mu, min place only,
                                    skipped when two or more antecedent
                                    words carry negative FVs

Updates move the token by eta * delta, clamp into [-1, 1], and flip the
sign only when the token crosses zero. The certainty factor mu either comes
from the rule table or is derived from the current mood's transition
probability; the firing threshold stretches with mood negativity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .model import CaseFrame, DEFAULT_PERSONA, FavoriteValueDB, FavoriteValue, SlotRole, clamp, validate_case_frame
from .mstn import DEFAULT_GROUP_STATE_MAP, GroupStateMap, MentalState, TransitionModel, probability
from .fpn import (
    FuzzyRule,
    GOAL_PROPOSITION,
    NoMatchingRule,
    compile_rules,
    egc_rule_base,
    infer,
    role_for_prop,
)

MU_FLOOR = 0.05  # keeps the mood-derived certainty factor strictly positive


class ZeroMu(ValueError):
    def __init__(self):
        super().__init__("certainty factor must be positive (it divides the correction)")


class MuSource(Enum):
    FIXED_TABLE = "fixed"
    MSTN_DERIVED = "mstn"


@dataclass(frozen=True)
class LearningConfig:
    eta: float = 1.0
    mu_source: MuSource = MuSource.FIXED_TABLE
    fixed_mu: dict[str, float] | None = None  # per-rule overrides of the file values
    base_lambda: float = 0.1

    def __post_init__(self):
        if not 0.0 < self.eta <= 1.0:
            raise ValueError(f"eta {self.eta} outside (0, 1]")
        for name, mu in (self.fixed_mu or {}).items():
            if not 0.0 < mu <= 1.0:
                raise ValueError(f"fixed mu for {name} must be in (0, 1], got {mu}")


@dataclass(frozen=True)
class FeedbackSample:
    """One observed reaction: the event, the user's real emotion value in
    token space [0, 1] with its sign kept separately, and the mood the
    agent was in when the feedback arrived."""

    cf: CaseFrame
    ev: float
    ev_sign: int = +1
    mood: MentalState = MentalState.QUIET

    def __post_init__(self):
        if not 0.0 <= self.ev <= 1.0:
            raise ValueError(f"ev {self.ev} outside [0, 1]")
        if self.ev_sign not in (+1, -1):
            raise ValueError("ev_sign must be +1 or -1")


def tokenize_fv(fv: FavoriteValue) -> tuple[float, int]:
    """FV -> (token in [0, 1], sign). Unrated words read (0.5, +)."""
    if not fv.known:
        return 0.5, +1
    return abs(fv.value), (+1 if fv.value >= 0 else -1)


def delta_unknown_min(ev: float, y_k: float, mu: float) -> float:
    """Correction when the minimum-token place holds an unknown FV."""
    if mu <= 0:
        raise ZeroMu()
    return (ev - y_k) / mu


def delta_unknown_other(ev: float, y_u: float, mu: float) -> float:
    """Correction for an unknown place u when the min place is known."""
    if mu <= 0:
        raise ZeroMu()
    return (ev - y_u * mu) / mu


def delta_known_min(ev: float, y_k: float, mu: float, is_min_place: bool) -> float:
    """All-known correction: only the minimum-token place moves."""
    if mu <= 0:
        raise ZeroMu()
    return (ev - y_k) / mu if is_min_place else 0.0


def apply_update(db: FavoriteValueDB, person: str | None, word: str,
                 delta: float, eta: float) -> tuple[FavoriteValue, FavoriteValue]:
    """Move a word's FV by eta * delta in token space and store it.

    The sign rides along: a token pushed through zero flips the stored
    sign. The result is clamped into [-1, 1] and always marked known.
    Returns (old, new).
    """
    old = db.lookup(person, word)
    token, sign = tokenize_fv(old)
    new_value = clamp(sign * (token + eta * delta))
    new = FavoriteValue(new_value, known=True)
    db.set_personal(person, word, new.value, known=True)
    return old, new


# --- mood coupling -------------------------------------------------------

# How far each mood sits from equanimity; stretches the firing threshold.
_NEGATIVITY = {
    MentalState.HAPPY: 0.0,
    MentalState.QUIET: 0.0,
    MentalState.SAD: 1.0,
    MentalState.SURPRISE: 0.5,
    MentalState.ANGRY: 1.0,
    MentalState.FEAR: 1.0,
    MentalState.DISGUST: 1.0,
}


def effective_lambda(base_lambda: float, mood: MentalState) -> float:
    """Darker moods demand stronger agreement before rules fire."""
    return base_lambda * (1.0 + 0.5 * _NEGATIVITY[mood])


def derive_mu(model: TransitionModel, mood: MentalState, dominant_group: int,
              gmap: GroupStateMap = DEFAULT_GROUP_STATE_MAP) -> float:
    """Mood-derived certainty factor: the transition probability from the
    current mood toward the dominant emotion group's state, floored so the
    backward division stays defined."""
    p = probability(model, mood, gmap.state_for(dominant_group))
    return max(p, MU_FLOOR)


def resolve_mu(rule: FuzzyRule, cfg: LearningConfig, model: TransitionModel | None,
               mood: MentalState, dominant_group: int | None,
               gmap: GroupStateMap = DEFAULT_GROUP_STATE_MAP) -> float:
    if cfg.mu_source is MuSource.MSTN_DERIVED:
        if model is None or dominant_group is None:
            raise ValueError("mood-derived mu needs a transition model and a dominant group")
        return derive_mu(model, mood, dominant_group, gmap)
    if cfg.fixed_mu and rule.name in cfg.fixed_mu:
        return cfg.fixed_mu[rule.name]
    mu = rule.cf if isinstance(rule.cf, float) else min(rule.cf)
    if mu <= 0:
        raise ZeroMu()
    return mu


# --- the per-turn learning step -------------------------------------------


@dataclass(frozen=True)
class UpdateEntry:
    role: SlotRole
    word: str
    old_value: float
    old_known: bool
    new_value: float
    delta: float

    def to_dict(self) -> dict:
        return {
            "role": self.role.value,
            "word": self.word,
            "old_value": self.old_value,
            "old_known": self.old_known,
            "new_value": self.new_value,
            "delta": self.delta,
        }


@dataclass(frozen=True)
class LearnReport:
    """What one feedback turn did: the branch taken ('eq10', 'eq12',
    'eq14', or 'skipped'), the matched rule, and every FV it touched."""

    branch: str
    rule_name: str
    mu: float
    y_k: float
    ev: float
    ev_sign: int
    lambda_used: float
    min_role: SlotRole
    entries: tuple[UpdateEntry, ...]
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "branch": self.branch,
            "rule": self.rule_name,
            "mu": self.mu,
            "y_k": self.y_k,
            "ev": self.ev,
            "ev_sign": self.ev_sign,
            "lambda_used": self.lambda_used,
            "min_role": self.min_role.value,
            "entries": [entry.to_dict() for entry in self.entries],
            "note": self.note,
        }


def _applicable_rules(cf: CaseFrame, rules: list[FuzzyRule]) -> list[FuzzyRule]:
    """Split variants only apply when every antecedent role is filled."""
    usable = []
    for rule in rules:
        roles = [role_for_prop(p) for p in rule.antecedents]
        if all(role in cf.slots for role in roles):
            usable.append(rule)
    return usable


def learn_from_turn(sample: FeedbackSample, db: FavoriteValueDB, model: TransitionModel | None,
                    cfg: LearningConfig, person: str | None = None,
                    dominant_group: int | None = None,
                    gmap: GroupStateMap = DEFAULT_GROUP_STATE_MAP,
                    rule_base: dict[str, FuzzyRule] | None = None) -> LearnReport:
    """Run one backward-calculation step and update the database.

    The matched rule's antecedents are tokenized, the rule net computes
    y_k, and the branch is picked by the knowledge status of the minimum
    place and the others. Exactly one branch is reported per turn.
    """
    person = person or DEFAULT_PERSONA
    validate_case_frame(sample.cf)
    candidates = _applicable_rules(sample.cf, egc_rule_base(sample.cf.event_type, rule_base))
    if not candidates:
        raise NoMatchingRule(f"no applicable rule variant for {sample.cf.event_type}")

    lam = effective_lambda(cfg.base_lambda, sample.mood)

    # Tokenize each candidate's antecedents from the current database.
    def tokens_for(rule: FuzzyRule) -> dict[str, float]:
        out = {}
        for prop in rule.antecedents:
            word = sample.cf.slots[role_for_prop(prop)]
            out[prop] = tokenize_fv(db.lookup(person, word))[0]
        return out

    resolved = [
        (rule, resolve_mu(rule, cfg, model, sample.mood, dominant_group, gmap), tokens_for(rule))
        for rule in candidates
    ]

    # One net holding every applicable variant; LIKE combines them by max.
    net = compile_rules([rule.with_cf(mu) for rule, mu, _ in resolved], lam=lam)
    initial: dict[str, float] = {}
    for _, _, tokens in resolved:
        initial.update(tokens)
    result = infer(net, initial, GOAL_PROPOSITION)
    y_k = result.goal_value

    # The branch to invert: the fired variant that won the max, else the
    # one whose weakest antecedent is strongest (everything was gated).
    winner_name = None
    best = -1.0
    for fired in result.trace:
        if fired.value > best:
            best = fired.value
            winner_name = fired.rule_name
    if winner_name is not None:
        rule, mu, tokens = next(r for r in resolved if r[0].name == winner_name)
    else:
        rule, mu, tokens = max(resolved, key=lambda r: min(r[2].values()))

    roles = {prop: role_for_prop(prop) for prop in rule.antecedents}
    words = {prop: sample.cf.slots[roles[prop]] for prop in rule.antecedents}
    fvs = {prop: db.lookup(person, words[prop]) for prop in rule.antecedents}

    min_prop = min(rule.antecedents, key=lambda prop: (tokens[prop], roles[prop].value))
    min_role = roles[min_prop]

    def entry(prop: str, delta: float) -> UpdateEntry:
        old, new = apply_update(db, person, words[prop], delta, cfg.eta)
        return UpdateEntry(role=roles[prop], word=words[prop], old_value=old.value,
                           old_known=old.known, new_value=new.value, delta=delta)

    unknown_others = [p for p in rule.antecedents if p != min_prop and not fvs[p].known]

    if not fvs[min_prop].known:
        branch = "eq10"
        entries = (entry(min_prop, delta_unknown_min(sample.ev, y_k, mu)),)
        note = "unknown FV at the min place"
    elif unknown_others:
        branch = "eq12"
        entries = tuple(
            entry(p, delta_unknown_other(sample.ev, tokens[p], mu)) for p in unknown_others)
        note = "min place known; unknown FV elsewhere"
    else:
        negatives = sum(1 for p in rule.antecedents if fvs[p].value < 0.0)
        if negatives >= 2:
            branch = "skipped"
            entries = ()
            note = f"{negatives} antecedent words with negative FVs"
        else:
            branch = "eq14"
            entries = (entry(min_prop, delta_known_min(sample.ev, y_k, mu, True)),)
            note = "all FVs known; min place adjusted"

    return LearnReport(
        branch=branch,
        rule_name=rule.name or "?",
        mu=mu,
        y_k=y_k,
        ev=sample.ev,
        ev_sign=sample.ev_sign,
        lambda_used=lam,
        min_role=min_role,
        entries=entries,
        note=note)


# --- thin entry points for the other learning procedures -------------------
# Direct expression and displeasure association are stated without competing
# formulas; both funnel into the same clamped token update.


def learn_direct_expression(db: FavoriteValueDB, person: str | None, word: str,
                            liked: bool, degree: float = 0.5, eta: float = 1.0) -> tuple[FavoriteValue, FavoriteValue]:
    """A like/dislike statement about a word nudges its FV directly."""
    if not 0.0 <= degree <= 1.0:
        raise ValueError("degree must be in [0, 1]")
    return apply_update(db, person, word, degree if liked else -degree, eta)


def learn_displeasure_association(db: FavoriteValueDB, person: str | None, word: str,
                                  displeasure: float, eta: float = 1.0) -> tuple[FavoriteValue, FavoriteValue]:
    """A word seen inside an unpleasant event drifts toward dislike."""
    if not 0.0 <= displeasure <= 1.0:
        raise ValueError("displeasure must be in [0, 1]")
    return apply_update(db, person, word, -displeasure, eta)
