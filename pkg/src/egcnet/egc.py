"""Signed emotion value of a case-frame event via the 3D synthetic vector.

Each event type maps its slot favorite values onto three axes (f1, f2, f3).
The octant the vector lands in decides pleasure vs displeasure; the vector
norm, divided by sqrt(3), gives the magnitude. A vector touching any axis
plane raises no emotion at all.

Axis cells an event type leaves empty are filled with the dummy value
beta = +0.5. Difference cells (f_OT - f_OF) can stray outside [-1, 1], so
every axis component is clamped back into [-1, 1] after evaluation; that
keeps the signed value inside [-1, 1] for any database contents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from statistics import fmean

from .model import CaseFrame, FavoriteValueDB, SlotRole, UnknownEventType, clamp, validate_case_frame

DEFAULT_BETA = 0.5
ZERO_TOL = 1e-12  # components smaller than this count as on-axis


@dataclass(frozen=True)
class EgcConfig:
    beta: float = DEFAULT_BETA
    # When a difference cell references an absent slot, substitute beta for
    # it ("beta") or drop the term ("zero").
    missing_diff_term: str = "beta"
    zero_tol: float = ZERO_TOL

    def missing_value(self) -> float:
        if self.missing_diff_term == "beta":
            return self.beta
        if self.missing_diff_term == "zero":
            return 0.0
        raise ValueError(f"missing_diff_term must be 'beta' or 'zero', not {self.missing_diff_term!r}")


DEFAULT_CONFIG = EgcConfig()


@dataclass(frozen=True)
class AxisFormula:
    """One axis cell: a slot FV, a difference, an absolute value, or beta."""

    kind: str  # "fv" | "diff" | "abs" | "beta"
    role: SlotRole | None = None
    minus_role: SlotRole | None = None

    def evaluate(self, fvs: dict[SlotRole, float], cfg: EgcConfig = DEFAULT_CONFIG) -> float:
        if self.kind == "beta":
            value = cfg.beta
        elif self.kind == "fv":
            value = fvs[self.role]
        elif self.kind == "abs":
            value = abs(fvs[self.role])
        elif self.kind == "diff":
            left = fvs.get(self.role, cfg.missing_value())
            right = fvs.get(self.minus_role, cfg.missing_value())
            value = left - right
        else:
            raise ValueError(f"bad axis formula kind {self.kind!r}")
        return clamp(value)

    def describe(self) -> str:
        if self.kind == "beta":
            return "beta"
        if self.kind == "fv":
            return f"f_{self.role.value}"
        if self.kind == "abs":
            return f"|f_{self.role.value}|"
        return f"f_{self.role.value}-f_{self.minus_role.value}"


def _fv(role: SlotRole) -> AxisFormula:
    return AxisFormula("fv", role)


def _diff(role: SlotRole, minus: SlotRole) -> AxisFormula:
    return AxisFormula("diff", role, minus)


_BETA = AxisFormula("beta")
_R = SlotRole


@dataclass(frozen=True)
class AxisAssignment:
    """An (f1, f2, f3) formula triple for one synthetic vector."""

    f1: AxisFormula
    f2: AxisFormula
    f3: AxisFormula

    def evaluate(self, fvs: dict[SlotRole, float], cfg: EgcConfig = DEFAULT_CONFIG) -> tuple[float, float, float]:
        return (self.f1.evaluate(fvs, cfg), self.f2.evaluate(fvs, cfg), self.f3.evaluate(fvs, cfg))

    def describe(self) -> tuple[str, str, str]:
        return (self.f1.describe(), self.f2.describe(), self.f3.describe())


# Axis table. V(S,O) carries two vectors; everything else carries one.
# The merged difference rows evaluate f_OT - f_OF with the absent side
# substituted per EgcConfig.missing_diff_term.
AXIS_TABLE: dict[str, tuple[AxisAssignment, ...]] = {
    "V(S)":      (AxisAssignment(_fv(_R.S), _BETA, _fv(_R.P)),),
    "A(S,C)":    (AxisAssignment(_fv(_R.S), _BETA, _fv(_R.P)),),
    "A(S,OF,C)": (AxisAssignment(_fv(_R.S), _BETA, _fv(_R.P)),),
    "A(S,OT,C)": (AxisAssignment(_fv(_R.S), _BETA, _fv(_R.P)),),
    "A(S,OM,C)": (AxisAssignment(_fv(_R.S), _BETA, _fv(_R.P)),),
    "A(S,OS,C)": (AxisAssignment(_fv(_R.S), _BETA, _fv(_R.P)),),
    "V(S,OF)":   (AxisAssignment(_fv(_R.S), _diff(_R.OT, _R.OF), _fv(_R.P)),),
    "V(S,OT)":   (AxisAssignment(_fv(_R.S), _diff(_R.OT, _R.OF), _fv(_R.P)),),
    "V(S,OM)":   (AxisAssignment(_fv(_R.S), _fv(_R.OM), _fv(_R.P)),),
    "V(S,OS)":   (AxisAssignment(AxisFormula("diff", _R.S, _R.OS), _BETA, _fv(_R.P)),),
    "V(S,O)":    (AxisAssignment(_fv(_R.S), _fv(_R.O), _fv(_R.P)),
                  AxisAssignment(_fv(_R.O), _BETA, _fv(_R.P))),
    "V(S,O,OF)": (AxisAssignment(_fv(_R.O), _diff(_R.OT, _R.OF), _fv(_R.P)),),
    "V(S,O,OT)": (AxisAssignment(_fv(_R.O), _diff(_R.OT, _R.OF), _fv(_R.P)),),
    "V(S,O,OM)": (AxisAssignment(_fv(_R.O), _fv(_R.OM), _fv(_R.P)),),
    "V(S,O,I)":  (AxisAssignment(_fv(_R.O), AxisFormula("abs", _R.I), _fv(_R.P)),),
    "V(S,O,OC)": (AxisAssignment(_fv(_R.O), _BETA, _fv(_R.OC)),),
    "A(S,O,C)":  (AxisAssignment(_fv(_R.O), _BETA, _fv(_R.P)),),
}


class Octant(Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    VI = "VI"
    VII = "VII"
    VIII = "VIII"
    ON_AXIS = "on-axis"


_OCTANT_BY_SIGNS: dict[tuple[int, int, int], Octant] = {
    (+1, +1, +1): Octant.I,
    (-1, +1, +1): Octant.II,
    (-1, -1, +1): Octant.III,
    (+1, -1, +1): Octant.IV,
    (+1, +1, -1): Octant.V,
    (-1, +1, -1): Octant.VI,
    (-1, -1, -1): Octant.VII,
    (+1, -1, -1): Octant.VIII,
}

# Pleasure carries +1, displeasure -1. Mirror-image octants carry opposite
# signs, so negating a vector always flips the reading.
PLEASURE_SIGN: dict[Octant, int] = {
    Octant.I: +1,
    Octant.II: -1,
    Octant.III: +1,
    Octant.IV: -1,
    Octant.V: -1,
    Octant.VI: +1,
    Octant.VII: -1,
    Octant.VIII: +1,
    Octant.ON_AXIS: 0,
}


def octant_of(vector: tuple[float, float, float], zero_tol: float = ZERO_TOL) -> Octant:
    """Locate a vector in the emotional space; any near-zero component is on-axis."""
    if any(abs(c) < zero_tol for c in vector):
        return Octant.ON_AXIS
    signs = tuple(1 if c > 0 else -1 for c in vector)
    return _OCTANT_BY_SIGNS[signs]


def assign_axes(cf: CaseFrame) -> tuple[AxisAssignment, ...]:
    """Return the axis formula triples for cf's event type."""
    try:
        return AXIS_TABLE[cf.event_type]
    except KeyError:
        raise UnknownEventType(cf.event_type) from None


@dataclass(frozen=True)
class EmotionResult:
    """Outcome of evaluating one event.

    vectors/octants/signed_components are per synthetic vector (two for
    V(S,O), one otherwise). signed_value averages the per-vector signed
    values; raw_magnitude is |signed_value| * sqrt(3), which for a single
    vector equals its Euclidean norm.
    """

    vectors: tuple[tuple[float, float, float], ...]
    octants: tuple[Octant, ...]
    signed_components: tuple[float, ...]
    signed_value: float
    raw_magnitude: float

    def to_dict(self) -> dict:
        return {
            "vectors": [list(v) for v in self.vectors],
            "octants": [o.value for o in self.octants],
            "signed_components": list(self.signed_components),
            "signed_value": self.signed_value,
            "raw_magnitude": self.raw_magnitude,
        }


def resolve_slot_fvs(cf: CaseFrame, db: FavoriteValueDB, person: str | None = None) -> dict[SlotRole, float]:
    """Resolve every filled slot's word to its evaluation FV."""
    return {role: db.lookup(person, word).value for role, word in cf.slots.items()}


def egc_eval(cf: CaseFrame, db: FavoriteValueDB, person: str | None = None,
             cfg: EgcConfig = DEFAULT_CONFIG) -> EmotionResult:
    """Evaluate a validated case frame against the FV database.

    Deterministic and side-effect free for a fixed database snapshot.
    """
    validate_case_frame(cf)
    fvs = resolve_slot_fvs(cf, db, person)
    vectors: list[tuple[float, float, float]] = []
    octants: list[Octant] = []
    signed: list[float] = []
    for assignment in assign_axes(cf):
        vec = assignment.evaluate(fvs, cfg)
        oct_ = octant_of(vec, cfg.zero_tol)
        magnitude = math.sqrt(vec[0] ** 2 + vec[1] ** 2 + vec[2] ** 2)
        signed.append(PLEASURE_SIGN[oct_] * magnitude / math.sqrt(3.0))
        vectors.append(vec)
        octants.append(oct_)
    signed_value = fmean(signed)
    return EmotionResult(
        vectors=tuple(vectors),
        octants=tuple(octants),
        signed_components=tuple(signed),
        signed_value=signed_value,
        raw_magnitude=abs(signed_value) * math.sqrt(3.0),
    )
