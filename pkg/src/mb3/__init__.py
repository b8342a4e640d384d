"""Maker-Breaker engine for marked hypergraphs of rank 3."""

from .core import (
    DomainError,
    INFINITY,
    MarkedHypergraph,
    PointedMarkedHypergraph,
    ResourceGuardError,
    SubhypergraphRef,
    UnsupportedRankError,
    intersection,
    normalize_rank3,
    removable_vertices,
    strip_marked,
    union,
)
from .structures import (
    CycleWitness,
    EdgeSequence,
    PathWitness,
    TadpoleWitness,
    ThreatWitness,
    detect_threats,
    find_cycle_through,
    find_path,
    find_snake,
    find_tadpole,
    project,
    shortest_nunchaku_length,
)
from .dangers import (
    D0,
    D1,
    SNAKES,
    UNMARKED_CYCLES,
    UNMARKED_TADPOLES,
    danger_exists_at,
    danger_intersection,
    is_trivial_maker_win,
    j1,
    jr,
    maker_forces_threat,
)
from .solver import (
    Position,
    Verdict,
    breaker_best,
    decide,
    decide_forest,
    engine_move,
    forcing_line,
    maker_best,
    play,
    tau_exact,
    tau_upper_bound,
)
from .oracle import OracleResult, canonical_key, enumerate_instances, minimax

__version__ = "0.1.0"
