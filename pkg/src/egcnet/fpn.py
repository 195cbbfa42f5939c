"""Fuzzy Petri net engine: places carrying truth tokens in [0, 1],
transitions carrying certainty factors, threshold-gated firing, and
goal-driven inference over acyclic rule nets.

Rule kinds supported:

  Type1  IF a1 and ... and an THEN c        one transition, y = min(inputs) * mu
  Type2  IF a THEN c1 and ... and cn        one transition, every output gets y = a * mu
  Type3  IF a1 or ... or an THEN c          n transitions (one per branch, own mu),
                                            outputs combine by max
  Type4  (or-consequents)                   rejected: no clear implication

After compilation every transition computes min(input tokens) * mu, so the
single-input product rule is just the n=1 case of the min rule. When several
transitions feed one place the place keeps the maximum of the deposited
values.

fire() follows token-game semantics: it reads the current marking, zeroes
the input places and max-deposits into the outputs. infer() instead
evaluates each transition once, in dependency order, against the tokens its
input places received from their own producers, so sibling consumers of a
shared place never race; consumption only shows up in the final marking.
That makes the goal value independent of the firing order on any acyclic
net.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path

from .model import SlotRole, UnknownEventType

DEFAULT_LAMBDA = 0.1


class FpnError(ValueError):
    """Base class for net construction and inference failures."""


class Type4Rejected(FpnError):
    pass


class DuplicateProposition(FpnError):
    pass


class CyclicNet(FpnError):
    pass


class UnknownGoal(FpnError):
    pass


class NotEnabled(FpnError):
    pass


class NoMatchingRule(FpnError):
    pass


class RuleKind(Enum):
    TYPE1 = "type1"
    TYPE2 = "type2"
    TYPE3 = "type3"


@dataclass(frozen=True)
class FuzzyRule:
    """A validated IF-THEN rule. cf is a single certainty factor for
    Type1/Type2 and a per-antecedent tuple for Type3."""

    kind: RuleKind
    antecedents: tuple[str, ...]
    consequents: tuple[str, ...]
    cf: float | tuple[float, ...]
    name: str | None = None

    def __post_init__(self):
        if not self.antecedents or not self.consequents:
            raise FpnError("rules need at least one antecedent and one consequent")
        if len(set(self.antecedents)) != len(self.antecedents):
            raise DuplicateProposition(f"rule {self.name or ''} repeats an antecedent")
        if len(set(self.consequents)) != len(self.consequents):
            raise DuplicateProposition(f"rule {self.name or ''} repeats a consequent")
        if self.kind is RuleKind.TYPE1:
            if len(self.consequents) != 1:
                raise FpnError("Type1 rules have exactly one consequent")
            self._check_scalar_cf()
        elif self.kind is RuleKind.TYPE2:
            if len(self.antecedents) != 1:
                raise FpnError("Type2 rules have exactly one antecedent")
            self._check_scalar_cf()
        elif self.kind is RuleKind.TYPE3:
            if len(self.consequents) != 1:
                raise FpnError("Type3 rules have exactly one consequent")
            if not isinstance(self.cf, tuple) or len(self.cf) != len(self.antecedents):
                raise FpnError("Type3 rules need one certainty factor per antecedent")
            for mu in self.cf:
                _check_cf(mu)

    def _check_scalar_cf(self):
        if isinstance(self.cf, tuple):
            raise FpnError(f"{self.kind.value} rules take a single certainty factor")
        _check_cf(self.cf)

    def with_cf(self, cf: float | tuple[float, ...]) -> "FuzzyRule":
        return FuzzyRule(self.kind, self.antecedents, self.consequents, cf, self.name)


def _check_cf(mu: object) -> None:
    if not isinstance(mu, (int, float)) or isinstance(mu, bool) or not 0.0 <= mu <= 1.0:
        raise FpnError(f"certainty factor {mu!r} outside [0, 1]")


@dataclass(frozen=True)
class Transition:
    tid: str
    inputs: tuple[str, ...]   # place ids
    outputs: tuple[str, ...]  # place ids
    mu: float
    rule_name: str | None = None


@dataclass(frozen=True)
class FuzzyPetriNet:
    """Immutable compiled net. Markings live outside the net and map place
    id -> token value; helpers translate to and from proposition names."""

    places: tuple[str, ...]
    propositions: tuple[str, ...]
    place_of: dict[str, str]   # proposition -> place id
    prop_of: dict[str, str]    # place id -> proposition (the bijection)
    transitions: tuple[Transition, ...]
    lam: float = DEFAULT_LAMBDA

    def marking_from_tokens(self, tokens: dict[str, float]) -> dict[str, float]:
        marking = {p: 0.0 for p in self.places}
        for prop, value in tokens.items():
            place = self.place_of.get(prop)
            if place is None:
                raise UnknownGoal(f"unknown proposition {prop!r}")
            if not 0.0 <= value <= 1.0:
                raise FpnError(f"token for {prop!r} outside [0, 1]: {value}")
            marking[place] = float(value)
        return marking

    def tokens_from_marking(self, marking: dict[str, float]) -> dict[str, float]:
        return {self.prop_of[p]: v for p, v in marking.items()}


def compile_rules(rules: list[FuzzyRule], lam: float = DEFAULT_LAMBDA) -> FuzzyPetriNet:
    """Build a net from rules: one place per distinct proposition, one
    transition per rule (per branch for Type3). Cyclic rule sets are
    rejected here so inference can assume a DAG."""
    if not 0.0 <= lam <= 1.0:
        raise FpnError(f"threshold {lam} outside [0, 1]")
    propositions: list[str] = []
    place_of: dict[str, str] = {}

    def place_for(prop: str) -> str:
        if prop not in place_of:
            place_of[prop] = f"p{len(propositions) + 1}"
            propositions.append(prop)
        return place_of[prop]

    transitions: list[Transition] = []
    for rule in rules:
        in_places = tuple(place_for(a) for a in rule.antecedents)
        out_places = tuple(place_for(c) for c in rule.consequents)
        if rule.kind is RuleKind.TYPE3:
            for idx, (ant_place, mu) in enumerate(zip(in_places, rule.cf), start=1):
                transitions.append(Transition(
                    tid=f"t{len(transitions) + 1}",
                    inputs=(ant_place,),
                    outputs=out_places,
                    mu=float(mu),
                    rule_name=rule.name))
        else:
            transitions.append(Transition(
                tid=f"t{len(transitions) + 1}",
                inputs=in_places,
                outputs=out_places,
                mu=float(rule.cf),
                rule_name=rule.name))

    net = FuzzyPetriNet(
        places=tuple(place_of[p] for p in propositions),
        propositions=tuple(propositions),
        place_of=dict(place_of),
        prop_of={place: prop for prop, place in place_of.items()},
        transitions=tuple(transitions),
        lam=lam)
    _check_acyclic(net)
    return net


def _check_acyclic(net: FuzzyPetriNet) -> None:
    successors: dict[str, set[str]] = {p: set() for p in net.places}
    for t in net.transitions:
        for src in t.inputs:
            successors[src].update(t.outputs)
    WHITE, GREY, BLACK = 0, 1, 2
    color = {p: WHITE for p in net.places}

    def visit(p: str) -> None:
        color[p] = GREY
        for q in successors[p]:
            if color[q] == GREY:
                raise CyclicNet(f"cycle through proposition {net.prop_of[q]!r}")
            if color[q] == WHITE:
                visit(q)
        color[p] = BLACK

    for p in net.places:
        if color[p] == WHITE:
            visit(p)


def transition_order(net: FuzzyPetriNet) -> list[Transition]:
    """Deterministic dependency order: by longest producer chain, then id."""
    depth: dict[str, int] = {}

    def place_depth(p: str) -> int:
        if p in depth:
            return depth[p]
        producers = [t for t in net.transitions if p in t.outputs]
        d = 0 if not producers else 1 + max(
            max((place_depth(q) for q in t.inputs), default=0) for t in producers)
        depth[p] = d
        return d

    def t_depth(t: Transition) -> int:
        return max((place_depth(p) for p in t.inputs), default=0)

    return sorted(net.transitions, key=lambda t: (t_depth(t), int(t.tid[1:])))


def enabled(net: FuzzyPetriNet, marking: dict[str, float], t: Transition) -> bool:
    """A transition is enabled when every input token meets the threshold."""
    return all(marking[p] >= net.lam for p in t.inputs)


def fire(net: FuzzyPetriNet, marking: dict[str, float], t: Transition) -> tuple[dict[str, float], float]:
    """Token-game firing: consume inputs, deposit min(inputs) * mu.

    Returns the new marking and the deposited value. Output places keep
    the max of their old and new tokens.
    """
    if not enabled(net, marking, t):
        raise NotEnabled(f"transition {t.tid} has an input below threshold {net.lam}")
    y = min(marking[p] for p in t.inputs) * t.mu
    out = dict(marking)
    for p in t.inputs:
        out[p] = 0.0
    for p in t.outputs:
        out[p] = max(out[p], y)
    return out, y


@dataclass(frozen=True)
class FiredTransition:
    tid: str
    rule_name: str | None
    inputs_seen: tuple[float, ...]
    value: float


@dataclass(frozen=True)
class InferenceResult:
    goal_value: float
    trace: tuple[FiredTransition, ...]
    tokens: dict[str, float]  # final marking keyed by proposition


def infer(net: FuzzyPetriNet, initial_tokens: dict[str, float], goal: str) -> InferenceResult:
    """Propagate tokens from the initial marking and read off the goal.

    Transitions are evaluated once each, in dependency order, against the
    values produced into their input places (initial marking for source
    places). A transition below threshold on any input simply never fires.
    The final marking zeroes every consumed place; the goal keeps the max
    of everything deposited into it.
    """
    if goal not in net.place_of:
        raise UnknownGoal(f"unknown goal proposition {goal!r}")
    available = net.marking_from_tokens(initial_tokens)
    consumed: set[str] = set()
    trace: list[FiredTransition] = []
    for t in transition_order(net):
        inputs_seen = tuple(available[p] for p in t.inputs)
        if any(v < net.lam for v in inputs_seen):
            continue
        y = min(inputs_seen) * t.mu
        consumed.update(t.inputs)
        for p in t.outputs:
            available[p] = max(available[p], y)
        trace.append(FiredTransition(t.tid, t.rule_name, inputs_seen, y))
    final = {p: (0.0 if p in consumed else available[p]) for p in net.places}
    goal_place = net.place_of[goal]
    final[goal_place] = available[goal_place]
    return InferenceResult(
        goal_value=available[goal_place],
        trace=tuple(trace),
        tokens=net.tokens_from_marking(final))


# --- rule files ---------------------------------------------------------
# One rule per line:
#   <name> <kind> <ant1,ant2,...> <cons1,cons2,...> <cf[,cf2,...]>
# e.g.  R6 type1 S,V,O LIKE 0.9
# Blank lines and '#' comments are skipped.


class RuleFileError(ValueError):
    pass


def parse_rule_line(line: str, lineno: int = 0) -> FuzzyRule:
    parts = line.split()
    if len(parts) != 5:
        raise RuleFileError(f"line {lineno}: expected 5 fields, got {len(parts)}")
    name, kind_text, ants_text, cons_text, cf_text = parts
    kind_key = kind_text.strip().lower()
    if kind_key == "type4":
        raise Type4Rejected(f"line {lineno}: Type4 rules have no clear implication")
    try:
        kind = RuleKind(kind_key)
    except ValueError:
        raise RuleFileError(f"line {lineno}: unknown rule kind {kind_text!r}") from None
    antecedents = tuple(a for a in ants_text.split(",") if a)
    consequents = tuple(c for c in cons_text.split(",") if c)
    try:
        cfs = tuple(float(x) for x in cf_text.split(",") if x)
    except ValueError as exc:
        raise RuleFileError(f"line {lineno}: bad certainty factor: {exc}") from exc
    cf: float | tuple[float, ...] = cfs if kind is RuleKind.TYPE3 else cfs[0] if len(cfs) == 1 else None
    if cf is None:
        raise RuleFileError(f"line {lineno}: {kind.value} takes exactly one certainty factor")
    try:
        return FuzzyRule(kind=kind, antecedents=antecedents, consequents=consequents, cf=cf, name=name)
    except FpnError as exc:
        raise RuleFileError(f"line {lineno}: {exc}") from exc


def parse_rules(text: str) -> dict[str, FuzzyRule]:
    rules: dict[str, FuzzyRule] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        rule = parse_rule_line(line, lineno)
        if rule.name in rules:
            raise RuleFileError(f"line {lineno}: duplicate rule name {rule.name!r}")
        rules[rule.name] = rule
    return rules


def load_rules(path: str | Path) -> dict[str, FuzzyRule]:
    return parse_rules(Path(path).read_text(encoding="utf-8"))


def default_rule_base() -> dict[str, FuzzyRule]:
    text = resources.files("egcnet.data").joinpath("egc_rules.txt").read_text(encoding="utf-8")
    return parse_rules(text)


# --- case-frame rule base ------------------------------------------------
# Rule antecedents name slot roles, with V standing for the predicate word.
# The or-form rules ship pre-split into their Type1 variants.

GOAL_PROPOSITION = "LIKE"
PREDICATE_PROP = "V"

EVENT_RULE_IDS: dict[str, tuple[str, ...]] = {
    "V(S)":       ("R1",),
    "A(S,C)":     ("R1",),
    "A(S,OF,C)":  ("R2",),
    "A(S,OT,C)":  ("R3",),
    "A(S,OM,C)":  ("R4",),
    "A(S,OS,C)":  ("R51", "R52"),
    "V(S,OF)":    ("R2",),
    "V(S,OT)":    ("R3",),
    "V(S,OM)":    ("R4",),
    "V(S,OS)":    ("R51", "R52"),
    "V(S,O)":     ("R6",),
    "V(S,O,OF)":  ("R71", "R72"),
    "V(S,O,OT)":  ("R81", "R82"),
    "V(S,O,OM)":  ("R9",),
    "V(S,O,I)":   ("R10",),
    "V(S,O,OC)":  ("R11",),
    "A(S,O,C)":   ("R10",),
}

_DEFAULT_RULE_BASE: dict[str, FuzzyRule] | None = None


def _rule_base(rule_base: dict[str, FuzzyRule] | None) -> dict[str, FuzzyRule]:
    global _DEFAULT_RULE_BASE
    if rule_base is not None:
        return rule_base
    if _DEFAULT_RULE_BASE is None:
        _DEFAULT_RULE_BASE = default_rule_base()
    return _DEFAULT_RULE_BASE


def egc_rule_base(event_type: str, rule_base: dict[str, FuzzyRule] | None = None) -> list[FuzzyRule]:
    """Rules matching an event type; or-form rows return both split variants."""
    ids = EVENT_RULE_IDS.get(event_type)
    if ids is None:
        raise NoMatchingRule(f"no rule covers event type {event_type!r}")
    base = _rule_base(rule_base)
    try:
        return [base[rid] for rid in ids]
    except KeyError as exc:
        raise NoMatchingRule(f"rule base lacks {exc.args[0]!r} for {event_type}") from None


def prop_for_role(role: SlotRole) -> str:
    return PREDICATE_PROP if role is SlotRole.P else role.value


def role_for_prop(prop: str) -> SlotRole:
    return SlotRole.P if prop == PREDICATE_PROP else SlotRole(prop)
