"""Maps a signed emotion value plus discourse flags to emotion labels and
the 9-element group-strength vector that drives mood transitions.

The label choice comes from an ordered decision table (first match wins)
shipped as package data; deployments can supply their own file. Strength is
always the absolute emotion value, so scaling the input scales every
emitted strength linearly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path

from .model import (
    EMOTION_GROUPS,
    GROUP_COUNT,
    EmotionLabel,
    emotion_label,
)


class Target(Enum):
    SELF = "Self"
    OTHER = "Other"
    NONE = "None"


class OtherFortune(Enum):
    GOOD = "Good"
    BAD = "Bad"
    NONE = "None"


class Temporal(Enum):
    PROSPECT = "Prospect"
    CONFIRMED = "Confirmed"
    DISCONFIRMED = "Disconfirmed"
    NONE = "None"


class Agency(Enum):
    SELF_ACT = "SelfAct"
    OTHER_ACT = "OtherAct"
    NONE = "None"


class Approval(Enum):
    APPROVE = "Approve"
    DISAPPROVE = "Disapprove"
    NONE = "None"


@dataclass(frozen=True)
class ElicitingContext:
    """Discourse flags refining a plain pleasure/displeasure reading."""

    target: Target = Target.NONE
    other_fortune: OtherFortune = OtherFortune.NONE
    temporal: Temporal = Temporal.NONE
    agency: Agency = Agency.NONE
    approval: Approval = Approval.NONE

    def to_dict(self) -> dict:
        return {
            "target": self.target.value,
            "other_fortune": self.other_fortune.value,
            "temporal": self.temporal.value,
            "agency": self.agency.value,
            "approval": self.approval.value,
        }

    @classmethod
    def from_dict(cls, data: dict | None) -> "ElicitingContext":
        if not data:
            return cls()
        return cls(
            target=Target(data.get("target", "None")),
            other_fortune=OtherFortune(data.get("other_fortune", "None")),
            temporal=Temporal(data.get("temporal", "None")),
            agency=Agency(data.get("agency", "None")),
            approval=Approval(data.get("approval", "None")),
        )


NEUTRAL_CONTEXT = ElicitingContext()

_CTX_FIELDS = ("target", "other_fortune", "temporal", "agency", "approval")
_FIELD_ENUMS = {
    "target": Target,
    "other_fortune": OtherFortune,
    "temporal": Temporal,
    "agency": Agency,
    "approval": Approval,
}


class DecisionTableError(ValueError):
    """Raised when a decision-table file fails validation."""


@dataclass(frozen=True)
class DecisionRule:
    """One row: a sign, five context patterns ("*" wildcard), and a label."""

    sign: str  # "+" or "-"
    patterns: dict[str, str]
    label: str

    def matches(self, sign: str, ctx: ElicitingContext) -> bool:
        if sign != self.sign:
            return False
        for name in _CTX_FIELDS:
            want = self.patterns[name]
            if want != "*" and getattr(ctx, name).value != want:
                return False
        return True


class DecisionTable:
    """Ordered rule list; classify() takes the first matching row."""

    def __init__(self, rules: list[DecisionRule]):
        self.rules = list(rules)

    def pick(self, sign: str, ctx: ElicitingContext) -> EmotionLabel | None:
        for rule in self.rules:
            if rule.matches(sign, ctx):
                return emotion_label(rule.label)
        return None

    @classmethod
    def from_json(cls, payload: object) -> "DecisionTable":
        if not isinstance(payload, dict) or "rules" not in payload:
            raise DecisionTableError("decision table must be an object with a 'rules' list")
        raw_rules = payload["rules"]
        if not isinstance(raw_rules, list) or not raw_rules:
            raise DecisionTableError("'rules' must be a non-empty list")
        rules = []
        for idx, raw in enumerate(raw_rules):
            if not isinstance(raw, dict):
                raise DecisionTableError(f"rule {idx}: expected an object")
            sign = raw.get("sign")
            if sign not in ("+", "-"):
                raise DecisionTableError(f"rule {idx}: sign must be '+' or '-'")
            label = raw.get("label")
            if not isinstance(label, str) or label not in EMOTION_GROUPS:
                raise DecisionTableError(f"rule {idx}: label {label!r} is not a known emotion")
            patterns = {}
            for name in _CTX_FIELDS:
                value = raw.get(name, "*")
                if value != "*" and value not in {m.value for m in _FIELD_ENUMS[name]}:
                    raise DecisionTableError(f"rule {idx}: bad {name} pattern {value!r}")
                patterns[name] = value
            extra = set(raw) - set(_CTX_FIELDS) - {"sign", "label"}
            if extra:
                raise DecisionTableError(f"rule {idx}: unknown fields {sorted(extra)}")
            rules.append(DecisionRule(sign=sign, patterns=patterns, label=label))
        return cls(rules)

    @classmethod
    def load(cls, path: str | Path) -> "DecisionTable":
        try:
            payload = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise DecisionTableError(f"not valid JSON: {exc}") from exc
        return cls.from_json(payload)


def default_decision_table() -> DecisionTable:
    text = resources.files("egcnet.data").joinpath("decision_table.json").read_text(encoding="utf-8")
    return DecisionTable.from_json(json.loads(text))


_DEFAULT_TABLE: DecisionTable | None = None


def _table(table: DecisionTable | None) -> DecisionTable:
    global _DEFAULT_TABLE
    if table is not None:
        return table
    if _DEFAULT_TABLE is None:
        _DEFAULT_TABLE = default_decision_table()
    return _DEFAULT_TABLE


def classify(value: float, ctx: ElicitingContext = NEUTRAL_CONTEXT,
             table: DecisionTable | None = None) -> list[tuple[EmotionLabel, float]]:
    """Label a signed emotion value under the given discourse flags.

    Zero raises nothing. Otherwise the matching decision row names the
    emotion and the strength is |value|.
    """
    if value == 0.0:
        return []
    sign = "+" if value > 0 else "-"
    label = _table(table).pick(sign, ctx)
    if label is None:
        return []
    return [(label, abs(value))]


def group_of(label: EmotionLabel | str) -> int:
    """Group number (1..9) of a catalogued emotion."""
    if isinstance(label, EmotionLabel):
        return label.group
    return emotion_label(label).group


@dataclass(frozen=True)
class GroupStrengthVector:
    """Per-group emotion strength, groups 1..9."""

    e: tuple[float, ...] = field(default=(0.0,) * GROUP_COUNT)

    def __post_init__(self):
        if len(self.e) != GROUP_COUNT:
            raise ValueError(f"expected {GROUP_COUNT} strengths, got {len(self.e)}")
        for value in self.e:
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"group strength {value} outside [0, 1]")

    def of_group(self, k: int) -> float:
        return self.e[k - 1]

    def any_positive(self) -> bool:
        return any(v > 0.0 for v in self.e)

    def to_list(self) -> list[float]:
        return list(self.e)


def group_strengths(emotions: list[tuple[EmotionLabel, float]]) -> GroupStrengthVector:
    """Fold labelled strengths into the 9-group vector, max per group."""
    e = [0.0] * GROUP_COUNT
    for label, strength in emotions:
        k = label.group
        if strength > e[k - 1]:
            e[k - 1] = strength
    return GroupStrengthVector(tuple(e))
