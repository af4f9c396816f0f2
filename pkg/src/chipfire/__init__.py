"""chipfire: simulation and verification of the parallel candy-passing game.

Each vertex of an undirected graph holds a pile of candies; every round,
all vertices holding at least their degree pass one candy along each
incident edge simultaneously.  The package simulates that dynamic,
classifies orbits exactly, and checks the quantitative stabilization
theory (the 4m - n threshold, the n * d * c round bound, pass-count
gaps) against exhaustive and sampled corpora.  A sequential variant with
the abelian (order-independence) property is included for contrast.
"""

from .errors import (
    ChipfireError,
    Disconnected,
    EmptyGraph,
    InvalidGraph,
    ParseError,
    ResourceExhausted,
    SizeMismatch,
    Unsatisfiable,
)
from .graph import (
    GENERATOR_KINDS,
    Graph,
    ValidationReport,
    generate,
    parse_edge_list,
    stabilization_threshold,
    to_dot,
    validate,
)
from .parallel import (
    Configuration,
    EventuallyPeriodic,
    GameTrace,
    Outcome,
    RoundRecord,
    Stabilized,
    StopReason,
    classify,
    is_fixed_point,
    run,
    step,
    trace_csv,
)
from .sequential import (
    POLICIES,
    AbelianReport,
    Infinite,
    SeqOutcome,
    Terminated,
    Unknown,
    check_abelian,
    move_log_csv,
    seq_run,
)
from .oracle import (
    CompositionCursor,
    Counterexample,
    ExhaustiveResult,
    compositions_count,
    enumerate_configs,
    exhaustive_verify,
    random_config,
    rank_composition,
    unrank_composition,
)
from .analysis import (
    CHECK_ORDER,
    CheckResult,
    NAMED_CHECKS,
    ProbeResult,
    SuiteResult,
    VerificationReport,
    check_always_firing,
    check_core_invariants,
    check_pass_count_gaps,
    check_stabilization_bound,
    random_instance_suite,
    suite_csv,
    sweep_csv,
    sweep_experiment,
    threshold_probe,
    verify_battery,
    verify_corpus,
)
from .rng import SplitMix64, derive_seed, keyed_u64

__version__ = "0.1.0"

__all__ = [
    "ChipfireError",
    "Disconnected",
    "EmptyGraph",
    "InvalidGraph",
    "ParseError",
    "ResourceExhausted",
    "SizeMismatch",
    "Unsatisfiable",
    "GENERATOR_KINDS",
    "Graph",
    "ValidationReport",
    "generate",
    "parse_edge_list",
    "stabilization_threshold",
    "to_dot",
    "validate",
    "Configuration",
    "EventuallyPeriodic",
    "GameTrace",
    "Outcome",
    "RoundRecord",
    "Stabilized",
    "StopReason",
    "classify",
    "is_fixed_point",
    "run",
    "step",
    "trace_csv",
    "POLICIES",
    "AbelianReport",
    "Infinite",
    "SeqOutcome",
    "Terminated",
    "Unknown",
    "check_abelian",
    "move_log_csv",
    "seq_run",
    "CompositionCursor",
    "Counterexample",
    "ExhaustiveResult",
    "compositions_count",
    "enumerate_configs",
    "exhaustive_verify",
    "random_config",
    "rank_composition",
    "unrank_composition",
    "CHECK_ORDER",
    "CheckResult",
    "NAMED_CHECKS",
    "ProbeResult",
    "SuiteResult",
    "VerificationReport",
    "check_always_firing",
    "check_core_invariants",
    "check_pass_count_gaps",
    "check_stabilization_bound",
    "random_instance_suite",
    "suite_csv",
    "sweep_csv",
    "sweep_experiment",
    "threshold_probe",
    "verify_battery",
    "verify_corpus",
    "SplitMix64",
    "derive_seed",
    "keyed_u64",
    "__version__",
]
