"""Parity-solving cellular automata: simulation, certification and impossibility searches."""
from .core import (
    BlockDecomposition,
    Configuration,
    LocalRule,
    Outcome,
    OutcomeTag,
    active_positions,
    block_decomposition,
    classify,
    default_max_steps,
    evolve,
    parity,
    step,
)
from .debruijn import (
    CycleWitness,
    DeBruijnGraph,
    ParityCertificate,
    build_debruijn,
    certify_pairwise_parity,
    find_even_length_odd_parity_cycle,
    necklaces,
    preimage_necklaces,
)
from .impossibility import (
    Branch,
    CandidateReport,
    EscalationError,
    Infeasible,
    PartialRule,
    r2_cycle_tables,
    r2_enumerate_candidates,
    r2_forced_assignments,
    r2_search,
    radius1_eliminate,
)
from .rules import (
    BFO_NUMBER,
    RedundantActiveWarning,
    RuleConflictError,
    RuleNumberRangeError,
    TransitionPattern,
    bfo,
    bfo_explicit,
    bfo_minimized,
    compile_patterns,
    elementary,
    rule_from_number,
    wolfram_number,
)
from .sweep import PerfectionReport, SizeResult, verify_perfect

__version__ = "0.1.0"
