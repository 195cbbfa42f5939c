"""Shared domain vocabulary: favorite values, the layered FV database,
case frames, and the emotion label catalogue.

A favorite value (FV) is a signed taste intensity in [-1, 1] attached to a
word. The database keeps two layers: per-person values and agent-wide
initial values. A lookup never fails; a word nobody ever rated reads as the
neutral agreement value +0.5 with known=False, so learning code can tell
"never set" apart from "learned to be 0.5".
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

DEFAULT_PERSONA = "default"
UNKNOWN_FV_VALUE = 0.5


def clamp(x: float, lo: float = -1.0, hi: float = 1.0) -> float:
    return lo if x < lo else hi if x > hi else x


class DatabaseError(ValueError):
    """Raised for malformed FV database files."""


@dataclass(frozen=True)
class FavoriteValue:
    """Taste intensity for one word.

    known=False always carries value +0.5; the pair is normalized at
    construction so every read sees a consistent evaluation value.
    """

    value: float
    known: bool = True

    def __post_init__(self):
        v = UNKNOWN_FV_VALUE if not self.known else clamp(float(self.value))
        object.__setattr__(self, "value", v)


UNKNOWN_FV = FavoriteValue(UNKNOWN_FV_VALUE, known=False)


class FavoriteValueDB:
    """Two-layer word -> FavoriteValue store.

    Lookup order is personal, then initial, then the unknown value. Words
    are case-folded on write and read; person ids are kept verbatim.
    Mutations must be serialized by the caller (single writer); reads are
    pure.
    """

    def __init__(self):
        self.initial: dict[str, FavoriteValue] = {}
        self.personal: dict[tuple[str, str], FavoriteValue] = {}

    @staticmethod
    def _norm_word(word: str) -> str:
        return word.casefold()

    def set_initial(self, word: str, value: float, known: bool = True) -> None:
        self.initial[self._norm_word(word)] = FavoriteValue(value, known)

    def set_personal(self, person: str | None, word: str, value: float, known: bool = True) -> None:
        person = person or DEFAULT_PERSONA
        self.personal[(person, self._norm_word(word))] = FavoriteValue(value, known)

    def lookup(self, person: str | None, word: str) -> FavoriteValue:
        """Total lookup: personal layer, then initial, then unknown (+0.5)."""
        person = person or DEFAULT_PERSONA
        key = self._norm_word(word)
        hit = self.personal.get((person, key))
        if hit is not None:
            return hit
        hit = self.initial.get(key)
        if hit is not None:
            return hit
        return UNKNOWN_FV

    def copy(self) -> "FavoriteValueDB":
        dup = FavoriteValueDB()
        dup.initial = dict(self.initial)
        dup.personal = dict(self.personal)
        return dup

    # --- persistence -------------------------------------------------
    # One JSON object per line. Fields: layer ("initial"|"personal"),
    # word, value, known, and person (personal layer only). Anything else
    # is rejected so typos never pass silently.

    def save(self, path: str | Path) -> None:
        lines = []
        for word in sorted(self.initial):
            fv = self.initial[word]
            lines.append(json.dumps(
                {"layer": "initial", "word": word, "value": fv.value, "known": fv.known},
                sort_keys=True))
        for person, word in sorted(self.personal):
            fv = self.personal[(person, word)]
            lines.append(json.dumps(
                {"layer": "personal", "person": person, "word": word,
                 "value": fv.value, "known": fv.known},
                sort_keys=True))
        Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "FavoriteValueDB":
        db = cls()
        for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
            raw = raw.strip()
            if not raw or raw.startswith("#"):
                continue
            try:
                rec = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise DatabaseError(f"line {lineno}: not valid JSON: {exc}") from exc
            db._ingest(rec, lineno)
        return db

    def _ingest(self, rec: dict, lineno: int) -> None:
        if not isinstance(rec, dict):
            raise DatabaseError(f"line {lineno}: expected an object")
        layer = rec.get("layer")
        if layer not in ("initial", "personal"):
            raise DatabaseError(f"line {lineno}: layer must be 'initial' or 'personal'")
        allowed = {"layer", "word", "value", "known"} | ({"person"} if layer == "personal" else set())
        extra = set(rec) - allowed
        if extra:
            raise DatabaseError(f"line {lineno}: unknown fields {sorted(extra)}")
        missing = {"word", "value"} - set(rec)
        if missing:
            raise DatabaseError(f"line {lineno}: missing fields {sorted(missing)}")
        word = rec["word"]
        value = rec["value"]
        known = rec.get("known", True)
        if not isinstance(word, str) or not word:
            raise DatabaseError(f"line {lineno}: word must be a non-empty string")
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise DatabaseError(f"line {lineno}: value must be a number")
        if not -1.0 <= value <= 1.0:
            raise DatabaseError(f"line {lineno}: value {value} outside [-1, 1]")
        if not isinstance(known, bool):
            raise DatabaseError(f"line {lineno}: known must be a boolean")
        if not known and value != UNKNOWN_FV_VALUE:
            raise DatabaseError(f"line {lineno}: known=false requires value {UNKNOWN_FV_VALUE}")
        key = self._norm_word(word)
        if layer == "initial":
            if key in self.initial:
                raise DatabaseError(f"line {lineno}: duplicate initial entry for {word!r}")
            self.initial[key] = FavoriteValue(value, known)
        else:
            person = rec.get("person")
            if not isinstance(person, str) or not person:
                raise DatabaseError(f"line {lineno}: personal entry needs a person id")
            if (person, key) in self.personal:
                raise DatabaseError(f"line {lineno}: duplicate personal entry for {person!r}/{word!r}")
            self.personal[(person, key)] = FavoriteValue(value, known)


def lookup_fv(db: FavoriteValueDB, person: str | None, word: str) -> FavoriteValue:
    """Functional form of FavoriteValueDB.lookup."""
    return db.lookup(person, word)


# --- case frames ------------------------------------------------------


class PredicateKind(Enum):
    VERB = "verb"
    ADJECTIVE = "adjective"


class SlotRole(Enum):
    S = "S"    # subject
    O = "O"    # object
    OF = "OF"  # object-from
    OT = "OT"  # object-to
    OM = "OM"  # object-mutual
    OS = "OS"  # object-source
    OC = "OC"  # object-content
    I = "I"    # instrument
    C = "C"    # complement
    P = "P"    # predicate word


_R = SlotRole

# Required slot set per event type. The predicate word P is required
# everywhere; extra slots are rejected outright.
EVENT_SLOTS: dict[str, frozenset[SlotRole]] = {
    "V(S)":       frozenset({_R.S, _R.P}),
    "A(S,C)":     frozenset({_R.S, _R.C, _R.P}),
    "A(S,OF,C)":  frozenset({_R.S, _R.OF, _R.C, _R.P}),
    "A(S,OT,C)":  frozenset({_R.S, _R.OT, _R.C, _R.P}),
    "A(S,OM,C)":  frozenset({_R.S, _R.OM, _R.C, _R.P}),
    "A(S,OS,C)":  frozenset({_R.S, _R.OS, _R.C, _R.P}),
    "V(S,OF)":    frozenset({_R.S, _R.OF, _R.P}),
    "V(S,OT)":    frozenset({_R.S, _R.OT, _R.P}),
    "V(S,OM)":    frozenset({_R.S, _R.OM, _R.P}),
    "V(S,OS)":    frozenset({_R.S, _R.OS, _R.P}),
    "V(S,O)":     frozenset({_R.S, _R.O, _R.P}),
    "V(S,O,OF)":  frozenset({_R.S, _R.O, _R.OF, _R.P}),
    "V(S,O,OT)":  frozenset({_R.S, _R.O, _R.OT, _R.P}),
    "V(S,O,OM)":  frozenset({_R.S, _R.O, _R.OM, _R.P}),
    "V(S,O,I)":   frozenset({_R.S, _R.O, _R.I, _R.P}),
    "V(S,O,OC)":  frozenset({_R.S, _R.O, _R.OC, _R.P}),
    "A(S,O,C)":   frozenset({_R.S, _R.O, _R.C, _R.P}),
}

EVENT_TYPES = tuple(EVENT_SLOTS)


class CaseFrameError(ValueError):
    """Base class for case frame validation failures."""


class UnknownEventType(CaseFrameError):
    def __init__(self, event_type: str):
        super().__init__(f"unknown event type {event_type!r}")
        self.event_type = event_type


class MissingSlot(CaseFrameError):
    def __init__(self, role: SlotRole):
        super().__init__(f"missing slot {role.value}")
        self.role = role


class UnexpectedSlot(CaseFrameError):
    def __init__(self, role: SlotRole):
        super().__init__(f"unexpected slot {role.value}")
        self.role = role


def _kind_for(event_type: str) -> PredicateKind:
    return PredicateKind.ADJECTIVE if event_type.startswith("A") else PredicateKind.VERB


@dataclass
class CaseFrame:
    """A typed dialog event: predicate plus role-labelled slot fillers.

    event_type names the calculation row the event belongs to, e.g.
    "V(S,O)" or "A(S,C)". predicate_kind is derived from the label when
    not given.
    """

    event_type: str
    slots: dict[SlotRole, str]
    predicate_kind: PredicateKind | None = None

    def __post_init__(self):
        if self.predicate_kind is None and self.event_type in EVENT_SLOTS:
            self.predicate_kind = _kind_for(self.event_type)

    @property
    def predicate(self) -> str | None:
        return self.slots.get(SlotRole.P)

    def to_dict(self) -> dict:
        return {
            "event_type": self.event_type,
            "predicate_kind": self.predicate_kind.value if self.predicate_kind else None,
            "slots": {role.value: word for role, word in sorted(self.slots.items(), key=lambda kv: kv[0].value)},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CaseFrame":
        if not isinstance(data, dict):
            raise CaseFrameError("case frame must be an object")
        event_type = data.get("event_type")
        if not isinstance(event_type, str):
            raise CaseFrameError("event_type must be a string")
        raw_slots = data.get("slots")
        if not isinstance(raw_slots, dict):
            raise CaseFrameError("slots must be an object")
        slots: dict[SlotRole, str] = {}
        for key, word in raw_slots.items():
            try:
                role = SlotRole(key)
            except ValueError:
                raise CaseFrameError(f"unknown slot role {key!r}") from None
            if not isinstance(word, str) or not word:
                raise CaseFrameError(f"slot {key} must hold a non-empty word")
            slots[role] = word
        kind = data.get("predicate_kind")
        predicate_kind = None
        if kind is not None:
            try:
                predicate_kind = PredicateKind(kind)
            except ValueError:
                raise CaseFrameError(f"unknown predicate kind {kind!r}") from None
        return cls(event_type=event_type, slots=slots, predicate_kind=predicate_kind)


def validate_case_frame(cf: CaseFrame) -> None:
    """Check cf against its declared event type; raise on any mismatch.

    The slot set must exactly match the event type's requirements: every
    required role present, no extras, and the predicate kind (when given)
    must agree with the V/A prefix.
    """
    required = EVENT_SLOTS.get(cf.event_type)
    if required is None:
        raise UnknownEventType(cf.event_type)
    present = set(cf.slots)
    for role in sorted(required - present, key=lambda r: r.value):
        raise MissingSlot(role)
    for role in sorted(present - required, key=lambda r: r.value):
        raise UnexpectedSlot(role)
    if cf.predicate_kind is not None and cf.predicate_kind != _kind_for(cf.event_type):
        raise CaseFrameError(
            f"predicate kind {cf.predicate_kind.value} does not match event type {cf.event_type}")


# --- emotion labels ---------------------------------------------------

# The 28 emotions and their group number (1..9). Group strengths drive
# mental state selection, so the grouping is load-bearing.
EMOTION_GROUPS: dict[str, int] = {
    "gloating": 1, "hope": 1, "satisfaction": 1, "relief": 1, "pride": 1,
    "admiration": 1, "liking": 1, "gratitude": 1, "gratification": 1,
    "love": 1, "shy": 1,
    "joy": 2, "happy_for": 2,
    "sorry_for": 3, "shame": 3, "remorse": 3,
    "fear_confirmed": 4, "disappointment": 4, "sadness": 4,
    "distress": 5, "perplexity": 5,
    "disliking": 6, "hate": 6,
    "resentment": 7, "reproach": 7, "anger": 7,
    "fear": 8, "surprise": 9,
}

EMOTION_NAMES = tuple(EMOTION_GROUPS)
GROUP_COUNT = 9


class UnknownEmotion(ValueError):
    def __init__(self, name: str):
        super().__init__(f"unknown emotion {name!r}")
        self.name = name


def canonical_emotion_name(name: str) -> str:
    return name.strip().casefold().replace("-", "_").replace(" ", "_")


@dataclass(frozen=True)
class EmotionLabel:
    name: str
    group: int

    def __post_init__(self):
        expected = EMOTION_GROUPS.get(self.name)
        if expected is None:
            raise UnknownEmotion(self.name)
        if self.group != expected:
            raise ValueError(f"{self.name} belongs to group {expected}, not {self.group}")


def emotion_label(name: str) -> EmotionLabel:
    key = canonical_emotion_name(name)
    group = EMOTION_GROUPS.get(key)
    if group is None:
        raise UnknownEmotion(name)
    return EmotionLabel(key, group)
