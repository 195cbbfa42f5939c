"""Emotion-generating calculations over case-frame dialog events, mood
tracking through a mental state transition network, and fuzzy-Petri-net
learning of per-word favorite values."""

from .model import (
    CaseFrame,
    CaseFrameError,
    EmotionLabel,
    FavoriteValue,
    FavoriteValueDB,
    MissingSlot,
    PredicateKind,
    SlotRole,
    UnexpectedSlot,
    UnknownEventType,
    emotion_label,
    lookup_fv,
    validate_case_frame,
)
from .egc import (
    AxisAssignment,
    EgcConfig,
    EmotionResult,
    Octant,
    assign_axes,
    egc_eval,
    octant_of,
)
from .emotions import (
    DecisionTable,
    ElicitingContext,
    GroupStrengthVector,
    classify,
    group_of,
    group_strengths,
)
from .mstn import (
    DEFAULT_GROUP_STATE_MAP,
    GroupStateMap,
    MentalState,
    TransitionModel,
    cost,
    init_from_table,
    record_transition,
    select_emotion_and_next,
)
from .fpn import (
    FuzzyPetriNet,
    FuzzyRule,
    RuleKind,
    compile_rules,
    egc_rule_base,
    enabled,
    fire,
    infer,
)
from .learning import (
    FeedbackSample,
    LearnReport,
    LearningConfig,
    MuSource,
    apply_update,
    delta_known_min,
    delta_unknown_min,
    delta_unknown_other,
    learn_from_turn,
    tokenize_fv,
)
from .session import EngineConfig, Session, TurnRecord, run_script

__version__ = "0.1.0"
