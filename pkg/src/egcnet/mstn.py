"""Mental state transition network: seven mood states, a learned transition
count matrix, the derived cost matrix, and emotion-driven state selection.

Costs come straight from normalized counts: cost(i, j) = 1 - p(i, j). The
count matrix is seeded from an empirical probability table scaled by a
pseudo count, so observed transitions perturb the prior gradually. Given a
group-strength vector e, the next state maximizes e_k / cost(current,
state-for-group-k); a zero cost makes that candidate infinitely preferred.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import IntEnum
from importlib import resources
from pathlib import Path

from .emotions import GroupStrengthVector
from .model import GROUP_COUNT

STATE_COUNT = 7
ROW_SUM_TOLERANCE = 0.01  # published rows sum to 0.997..0.999
DEFAULT_PSEUDO_COUNT = 1000.0


class MentalState(IntEnum):
    HAPPY = 1
    QUIET = 2
    SAD = 3
    SURPRISE = 4
    ANGRY = 5
    FEAR = 6
    DISGUST = 7

    @property
    def label(self) -> str:
        return self.name.lower()

    @property
    def code(self) -> str:
        return f"s{int(self)}"

    @classmethod
    def parse(cls, text: str) -> "MentalState":
        key = text.strip().lower()
        for state in cls:
            if key in (state.label, state.code):
                return state
        raise ValueError(f"unknown mental state {text!r}")


INITIAL_STATE = MentalState.QUIET


class TransitionTableError(ValueError):
    """Base class for transition table rejections."""


class NegativeProbability(TransitionTableError):
    def __init__(self, i: int, j: int, value: float):
        super().__init__(f"probability[{i}][{j}] = {value} outside [0, 1]")


class RowSumOutOfTolerance(TransitionTableError):
    def __init__(self, i: int, total: float):
        super().__init__(f"row {i} sums to {total:.4f}, outside 1.0 +/- {ROW_SUM_TOLERANCE}")


class ZeroRowSum(TransitionTableError):
    pass


@dataclass
class TransitionModel:
    """Transition counts plus the current state. Single writer per session."""

    counts: list[list[float]]
    current: MentalState = INITIAL_STATE

    def row_sum(self, i: MentalState) -> float:
        return math.fsum(self.counts[int(i) - 1])


def init_from_table(probabilities: list[list[float]],
                    pseudo_count: float = DEFAULT_PSEUDO_COUNT) -> TransitionModel:
    """Seed counts from a 7x7 probability table scaled by pseudo_count.

    Every row must sum to 1 within the published rounding tolerance and
    every entry must lie in [0, 1].
    """
    if pseudo_count <= 0:
        raise ValueError("pseudo_count must be positive")
    if len(probabilities) != STATE_COUNT or any(len(row) != STATE_COUNT for row in probabilities):
        raise TransitionTableError(f"expected a {STATE_COUNT}x{STATE_COUNT} table")
    counts: list[list[float]] = []
    for i, row in enumerate(probabilities):
        for j, p in enumerate(row):
            if not 0.0 <= p <= 1.0:
                raise NegativeProbability(i, j, p)
        total = math.fsum(row)
        if abs(total - 1.0) > ROW_SUM_TOLERANCE:
            raise RowSumOutOfTolerance(i, total)
        counts.append([p * pseudo_count for p in row])
    return TransitionModel(counts=counts, current=INITIAL_STATE)


def probability_row(model: TransitionModel, i: MentalState) -> list[float]:
    """Normalized row i of the count matrix; sums to exactly 1.0.

    The float rounding residual is folded into the row's largest entry so
    the distribution invariant holds bit-exactly.
    """
    row = model.counts[int(i) - 1]
    total = math.fsum(row)
    if total <= 0:
        raise ZeroRowSum(f"row {i.code} has no mass")
    probs = [c / total for c in row]
    residual = 1.0 - math.fsum(probs)
    if residual != 0.0:
        probs[max(range(STATE_COUNT), key=lambda j: probs[j])] += residual
    return probs


def probability(model: TransitionModel, i: MentalState, j: MentalState) -> float:
    return probability_row(model, i)[int(j) - 1]


def cost(model: TransitionModel, i: MentalState, j: MentalState) -> float:
    """Transition cost: 1 minus the normalized count. Always in [0, 1]."""
    return 1.0 - probability(model, i, j)


def record_transition(model: TransitionModel, i: MentalState, j: MentalState) -> None:
    model.counts[int(i) - 1][int(j) - 1] += 1.0


@dataclass(frozen=True)
class GroupStateMap:
    """Which mental state each emotion group (1..9) pulls toward."""

    mapping: dict[int, MentalState]

    def __post_init__(self):
        missing = set(range(1, GROUP_COUNT + 1)) - set(self.mapping)
        if missing:
            raise ValueError(f"group map missing groups {sorted(missing)}")

    def state_for(self, group: int) -> MentalState:
        return self.mapping[group]


DEFAULT_GROUP_STATE_MAP = GroupStateMap({
    1: MentalState.HAPPY,
    2: MentalState.HAPPY,
    3: MentalState.SAD,
    4: MentalState.SAD,
    5: MentalState.SAD,
    6: MentalState.DISGUST,
    7: MentalState.ANGRY,
    8: MentalState.FEAR,
    9: MentalState.SURPRISE,
})


@dataclass(frozen=True)
class Selection:
    group: int | None  # None when no emotion was elicited (quiet decay)
    next_state: MentalState
    cost_used: float


def peek_selection(model: TransitionModel, e: GroupStrengthVector,
                   gmap: GroupStateMap = DEFAULT_GROUP_STATE_MAP) -> Selection:
    """Compute the selection without touching the model.

    With all strengths zero the state drifts along the most probable row
    entry (no-stimulus decay). A candidate whose cost is exactly zero wins
    outright; ties always break toward the lowest group number.
    """
    cur = model.current
    if not e.any_positive():
        probs = probability_row(model, cur)
        best_j = max(range(STATE_COUNT), key=lambda j: (probs[j], -j))
        nxt = MentalState(best_j + 1)
        return Selection(group=None, next_state=nxt, cost_used=cost(model, cur, nxt))

    best_k: int | None = None
    best_score = -math.inf
    for k in range(1, GROUP_COUNT + 1):
        ek = e.of_group(k)
        if ek <= 0.0:
            continue
        c = cost(model, cur, gmap.state_for(k))
        score = math.inf if c == 0.0 else ek / c
        if score > best_score:
            best_score = score
            best_k = k
    nxt = gmap.state_for(best_k)
    return Selection(group=best_k, next_state=nxt, cost_used=cost(model, cur, nxt))


def apply_selection(model: TransitionModel, sel: Selection) -> None:
    """Commit a peeked selection: count the transition and move the state."""
    record_transition(model, model.current, sel.next_state)
    model.current = sel.next_state


def select_emotion_and_next(model: TransitionModel, e: GroupStrengthVector,
                            gmap: GroupStateMap = DEFAULT_GROUP_STATE_MAP) -> tuple[int | None, MentalState]:
    """Pick the winning group and move the model to its state.

    The chosen transition is recorded into the count matrix, so repeated
    selections reshape future costs.
    """
    sel = peek_selection(model, e, gmap)
    apply_selection(model, sel)
    return sel.group, sel.next_state


# --- transition table file ---------------------------------------------

def parse_transition_table(text: str) -> list[list[float]]:
    """Parse a 7x7 whitespace-separated probability table.

    Blank lines and '#' comments are ignored. Validation happens in
    init_from_table.
    """
    rows: list[list[float]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            row = [float(tok) for tok in line.split()]
        except ValueError as exc:
            raise TransitionTableError(f"line {lineno}: {exc}") from exc
        if len(row) != STATE_COUNT:
            raise TransitionTableError(f"line {lineno}: expected {STATE_COUNT} values, got {len(row)}")
        rows.append(row)
    if len(rows) != STATE_COUNT:
        raise TransitionTableError(f"expected {STATE_COUNT} rows, got {len(rows)}")
    return rows


def load_transition_table(path: str | Path) -> list[list[float]]:
    return parse_transition_table(Path(path).read_text(encoding="utf-8"))


def default_transition_table() -> list[list[float]]:
    text = resources.files("egcnet.data").joinpath("transition_table.txt").read_text(encoding="utf-8")
    return parse_transition_table(text)
