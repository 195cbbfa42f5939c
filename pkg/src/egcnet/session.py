"""Session engine: runs the per-turn loop (evaluate event, classify,
move the mood, learn from feedback) and keeps a replayable trace.

The CLI and the HTTP service both drive this class, so behaviour cannot
diverge between them. Records carry no timestamps; a session replayed from
the same inputs and config produces byte-identical trace lines.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .egc import DEFAULT_CONFIG as DEFAULT_EGC_CONFIG, EgcConfig, EmotionResult, egc_eval
from .emotions import (
    DecisionTable,
    ElicitingContext,
    GroupStrengthVector,
    classify,
    group_strengths,
)
from .fpn import FuzzyRule
from .learning import FeedbackSample, LearnReport, LearningConfig, MuSource, learn_from_turn
from .model import CaseFrame, DEFAULT_PERSONA, FavoriteValueDB
from .mstn import (
    DEFAULT_GROUP_STATE_MAP,
    DEFAULT_PSEUDO_COUNT,
    GroupStateMap,
    MentalState,
    TransitionModel,
    apply_selection,
    cost,
    default_transition_table,
    init_from_table,
    peek_selection,
)

FALLBACK_GROUP_POSITIVE = 2  # well-being groups stand in when no emotion was elicited
FALLBACK_GROUP_NEGATIVE = 5


class FeedbackOrderError(RuntimeError):
    """Feedback arrived without a committed event to attach to."""


@dataclass
class EngineConfig:
    persona: str = DEFAULT_PERSONA
    learning: LearningConfig = field(default_factory=LearningConfig)
    egc: EgcConfig = DEFAULT_EGC_CONFIG
    pseudo_count: float = DEFAULT_PSEUDO_COUNT
    transition_probs: list[list[float]] | None = None  # None = packaged table
    gmap: GroupStateMap = DEFAULT_GROUP_STATE_MAP
    decision_table: DecisionTable | None = None  # None = packaged table
    rule_base: dict[str, FuzzyRule] | None = None  # None = packaged rules

    def make_model(self) -> TransitionModel:
        probs = self.transition_probs if self.transition_probs is not None else default_transition_table()
        return init_from_table(probs, self.pseudo_count)


@dataclass
class TurnRecord:
    turn: int | None  # None for dry runs
    event: dict
    context: dict
    resolved_fvs: dict
    egc: dict
    emotions: list
    e_vector: list[float]
    selected_group: int | None
    state_before: str
    state_after: str
    cost_used: float
    feedback: dict | None = None
    learning: dict | None = None
    dry_run: bool = False

    def to_dict(self) -> dict:
        return {
            "turn": self.turn,
            "event": self.event,
            "context": self.context,
            "resolved_fvs": self.resolved_fvs,
            "egc": self.egc,
            "emotions": self.emotions,
            "e_vector": self.e_vector,
            "selected_group": self.selected_group,
            "state_before": self.state_before,
            "state_after": self.state_after,
            "cost_used": self.cost_used,
            "feedback": self.feedback,
            "learning": self.learning,
            "dry_run": self.dry_run,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


class Session:
    """One dialog: a working FV database copy, a mood model, and the
    append-only turn log. All mutation must come from a single caller at a
    time; the service serializes per-session access."""

    def __init__(self, db: FavoriteValueDB, config: EngineConfig | None = None,
                 session_id: str | None = None):
        self.config = config or EngineConfig()
        self.id = session_id
        self.persona = self.config.persona
        self.db = db.copy()
        self.model = self.config.make_model()
        self.records: list[TurnRecord] = []
        self._fv_before: dict[str, float] = {}  # word -> value at first touch

    # --- the loop ------------------------------------------------------

    def submit_event(self, cf: CaseFrame, ctx: ElicitingContext | None = None,
                     dry_run: bool = False) -> TurnRecord:
        """Evaluate one case-frame event and (unless dry_run) step the mood.

        Raises CaseFrameError subclasses for invalid frames.
        """
        ctx = ctx or ElicitingContext()
        result = egc_eval(cf, self.db, self.persona, self.config.egc)
        emotions = classify(result.signed_value, ctx, self.config.decision_table)
        e = group_strengths(emotions)
        before = self.model.current
        sel = peek_selection(self.model, e, self.config.gmap)
        group, after, cost_used = sel.group, sel.next_state, sel.cost_used
        if not dry_run:
            apply_selection(self.model, sel)
        record = TurnRecord(
            turn=None if dry_run else len(self.records),
            event=cf.to_dict(),
            context=ctx.to_dict(),
            resolved_fvs=self._resolved(cf),
            egc=result.to_dict(),
            emotions=[[label.name, strength] for label, strength in emotions],
            e_vector=e.to_list(),
            selected_group=group,
            state_before=before.label,
            state_after=after.label,
            cost_used=cost_used,
            dry_run=dry_run,
        )
        if not dry_run:
            self.records.append(record)
        return record

    def submit_feedback(self, ev: float, sign: int = +1) -> LearnReport:
        """Attach the user's real emotion value to the latest event and
        learn from it. Exactly one feedback per committed event."""
        last = self._last_committed()
        if last is None:
            raise FeedbackOrderError("no committed event to attach feedback to")
        if last.feedback is not None:
            raise FeedbackOrderError(f"turn {last.turn} already received feedback")
        cf = CaseFrame.from_dict(last.event)
        sample = FeedbackSample(cf=cf, ev=ev, ev_sign=sign, mood=self.model.current)
        dominant = last.selected_group
        if dominant is None:
            dominant = FALLBACK_GROUP_POSITIVE if sign >= 0 else FALLBACK_GROUP_NEGATIVE
        report = learn_from_turn(
            sample, self.db, self.model, self.config.learning,
            person=self.persona, dominant_group=dominant,
            gmap=self.config.gmap, rule_base=self.config.rule_base)
        for entry in report.entries:
            self._fv_before.setdefault(entry.word, entry.old_value)
        last.feedback = {"ev": ev, "sign": "+" if sign >= 0 else "-"}
        last.learning = report.to_dict()
        return report

    def _last_committed(self) -> TurnRecord | None:
        return self.records[-1] if self.records else None

    def _resolved(self, cf: CaseFrame) -> dict:
        out = {}
        for role, word in sorted(cf.slots.items(), key=lambda kv: kv[0].value):
            fv = self.db.lookup(self.persona, word)
            out[role.value] = {"word": word, "value": fv.value, "known": fv.known}
        return out

    # --- views ----------------------------------------------------------

    def fv_deltas(self) -> list[dict]:
        """Words the session's learning touched, oldest first value vs now."""
        out = []
        for word in sorted(self._fv_before):
            now = self.db.lookup(self.persona, word)
            out.append({
                "word": word,
                "initial_value": self._fv_before[word],
                "current_value": now.value,
                "known": now.known,
            })
        return out

    def state_view(self) -> dict:
        current = self.model.current
        return {
            "id": self.id,
            "persona": self.persona,
            "turns": len(self.records),
            "mood": current.label,
            "cost_row": {s.label: cost(self.model, current, s) for s in MentalState},
            "fv_deltas": self.fv_deltas(),
            "last_turn": self.records[-1].to_dict() if self.records else None,
        }

    def trace_lines(self) -> list[str]:
        return [record.to_json() for record in self.records]

    def trace_text(self) -> str:
        lines = self.trace_lines()
        return "\n".join(lines) + ("\n" if lines else "")


# --- scripted sessions ------------------------------------------------


class ScriptError(ValueError):
    def __init__(self, turn: int, message: str):
        super().__init__(f"turn {turn}: {message}")
        self.turn = turn


def parse_script_line(raw: str) -> dict | None:
    line = raw.strip()
    if not line or line.startswith("#"):
        return None
    return json.loads(line)


def run_script(session: Session, lines: list[str]) -> Session:
    """Drive a session from JSONL turns: {"event": {...}, "context": {...}?,
    "feedback": {"ev": .., "sign": "+"|"-"}?}. Trace files are themselves
    valid scripts, which is what makes traces replayable."""
    turn = 0
    for raw in lines:
        try:
            payload = parse_script_line(raw)
        except json.JSONDecodeError as exc:
            raise ScriptError(turn, f"bad JSON: {exc}") from exc
        if payload is None:
            continue
        if not isinstance(payload, dict) or "event" not in payload:
            raise ScriptError(turn, "script line needs an 'event' object")
        try:
            cf = CaseFrame.from_dict(payload["event"])
            ctx = ElicitingContext.from_dict(payload.get("context"))
            session.submit_event(cf, ctx)
            feedback = payload.get("feedback")
            if feedback is not None:
                ev = float(feedback["ev"])
                sign = -1 if str(feedback.get("sign", "+")).startswith("-") else +1
                session.submit_feedback(ev, sign)
        except ScriptError:
            raise
        except Exception as exc:
            raise ScriptError(turn, str(exc)) from exc
        turn += 1
    return session
