"""Rested rotting-bandit policies, oracle/regret tooling, and a benchmark
harness with a CLI (`rotbench`)."""

from .baselines import (
    BaselineParams,
    DUcbPolicy,
    GreedyLastPolicy,
    SwUcbPolicy,
    Ucb1Policy,
    WswaPolicy,
)
from .core import (
    Constant,
    MeanFunction,
    ObservationLog,
    PiecewiseConstant,
    Policy,
    ProtocolError,
    RngStream,
    RottingInstance,
    StepDrop,
    Tabulated,
    mean_at,
    mean_table,
    sample_reward,
    validate_instance,
)
from .eff_fewa import EffFewaPolicy, EffStatStore, eff_filter, eff_update
from .estimators import (
    ConfidenceSchedule,
    WindowAverager,
    confidence_level,
    confidence_radius,
    window_average,
)
from .fewa import FewaPolicy, filter_arms
from .harness import (
    ExperimentConfig,
    ResultTable,
    bench_runtime,
    build_ten_arm,
    build_two_arm,
    export_csv,
    l_sweep,
    load_csv,
    make_instance,
    monte_carlo,
    run_episode,
)
from .oracle import (
    Allocation,
    RegretReport,
    brute_force_allocation,
    h_plus_bound,
    oracle_allocation,
    oracle_cumreward,
    regret_decomposition,
    regret_report,
)

__version__ = "0.1.0"

__all__ = [
    "Allocation",
    "BaselineParams",
    "ConfidenceSchedule",
    "Constant",
    "DUcbPolicy",
    "EffFewaPolicy",
    "EffStatStore",
    "ExperimentConfig",
    "FewaPolicy",
    "GreedyLastPolicy",
    "MeanFunction",
    "ObservationLog",
    "PiecewiseConstant",
    "Policy",
    "ProtocolError",
    "RegretReport",
    "ResultTable",
    "RngStream",
    "RottingInstance",
    "StepDrop",
    "SwUcbPolicy",
    "Tabulated",
    "Ucb1Policy",
    "WindowAverager",
    "WswaPolicy",
    "bench_runtime",
    "brute_force_allocation",
    "build_ten_arm",
    "build_two_arm",
    "confidence_level",
    "confidence_radius",
    "eff_filter",
    "eff_update",
    "export_csv",
    "filter_arms",
    "h_plus_bound",
    "l_sweep",
    "load_csv",
    "make_instance",
    "mean_at",
    "mean_table",
    "monte_carlo",
    "oracle_allocation",
    "oracle_cumreward",
    "regret_decomposition",
    "regret_report",
    "run_episode",
    "sample_reward",
    "validate_instance",
    "window_average",
]
