"""Two-level rent-or-buy laboratory.

Payment policies for multi-item rent / single-purchase / combo-purchase
decisions, the offline optimum and a brute-force oracle for it, analytical
worst-case ratio bounds, synthetic workload generation, and a deterministic
experiment harness.
"""

from .core import (
    ConfigError,
    CostBreakdown,
    DecisionRecord,
    DemandEvent,
    DemandSequence,
    PriceConfig,
    SequenceError,
    TotalDemand,
    check_feasible,
    evaluate_cost,
    total_demand,
)
from .algorithms import (
    ACTION_COMBO,
    ACTION_NONE,
    ACTION_RENT,
    ACTION_SINGLE,
    FollowPrediction,
    INFINITE_THRESHOLD,
    IndicativeState,
    Prediction,
    ThresholdPolicy,
    ThresholdSet,
    dtsr_policy,
    dtsr_simulate,
    ftp_simulate,
    ladtsr_policy,
    ladtsr_simulate,
    ladtsr_thresholds,
    rdtsr_policy,
    rdtsr_simulate,
    run_policy,
)
from .analysis import (
    BoundReport,
    InstanceTooLargeError,
    StdForm,
    StdFormLA,
    all_small_sequences,
    brute_force_opt,
    dtsr_claimed_bound,
    is_standard,
    is_standard_la,
    ladtsr_bound_report,
    ladtsr_cost_upper_bound,
    ladtsr_cr_bound,
    opt_offline,
    prediction_error,
    rdtsr_bound_report,
    rdtsr_cost_upper_bound,
    rdtsr_cr_bound,
    standardize_ladtsr,
    standardize_rdtsr,
)
from .datagen import (
    GenConfig,
    PredictorConfig,
    TraceError,
    gen_prediction,
    gen_sequence,
    load_prediction,
    load_trace,
    subseed,
    write_prediction,
    write_trace,
)
from .harness import (
    AlgoStats,
    EnsembleSpec,
    RESULTS_HEADER,
    SweepResult,
    run_cc_sweep,
    run_theta_bias_sweep,
    theta_label,
    write_results_csv,
    write_results_json,
)

__all__ = [name for name in dir() if not name.startswith("_")]
