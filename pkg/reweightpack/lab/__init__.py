"""Monte Carlo experiment harness."""

from reweightpack.lab.campaign import (
    CAMPAIGN_CSV_HEADER,
    CampaignInstance,
    CampaignResult,
    CampaignTask,
    certify_instance,
    run_certificate_campaign,
)
from reweightpack.lab.comparison import (
    COMPARISON_CSV_HEADER,
    ComparisonResult,
    PairedOutcome,
    compare_reweighting,
)
from reweightpack.lab.config import WORKERS_ENV_VAR, LabConfig
from reweightpack.lab.curves import CURVE_CSV_HEADER, CurvePoint, ThresholdCurve, build_curve
from reweightpack.lab.exceptions import (
    DegenerateFitError,
    LabConfigError,
    LabError,
    TrialLogIntegrityError,
)
from reweightpack.lab.phase import (
    RHO_TABLE_HEADER,
    RhoTable,
    default_delta_grid,
    default_p1_grid,
    default_rho_grid,
    estimate_delta_c,
    estimate_rho_f,
    load_rho_table,
    measurements_for,
    sweep_figure1,
)
from reweightpack.lab.stats import LogisticFit, fit_logistic, isotonic_smooth, wilson_interval
from reweightpack.lab.trials import (
    TRIAL_LOG_HEADER,
    SignalSpec,
    TrialRecord,
    TrialSpec,
    execute_trial,
    ordered_map,
    read_trial_log,
    run_trials,
    write_trial_log,
)

__all__ = [
    "CAMPAIGN_CSV_HEADER",
    "COMPARISON_CSV_HEADER",
    "CURVE_CSV_HEADER",
    "RHO_TABLE_HEADER",
    "TRIAL_LOG_HEADER",
    "WORKERS_ENV_VAR",
    "LabError",
    "LabConfigError",
    "DegenerateFitError",
    "TrialLogIntegrityError",
    "LabConfig",
    "SignalSpec",
    "TrialSpec",
    "TrialRecord",
    "CurvePoint",
    "ThresholdCurve",
    "LogisticFit",
    "RhoTable",
    "CampaignTask",
    "CampaignInstance",
    "CampaignResult",
    "PairedOutcome",
    "ComparisonResult",
    "execute_trial",
    "run_trials",
    "ordered_map",
    "write_trial_log",
    "read_trial_log",
    "wilson_interval",
    "fit_logistic",
    "isotonic_smooth",
    "build_curve",
    "default_rho_grid",
    "default_delta_grid",
    "default_p1_grid",
    "measurements_for",
    "estimate_rho_f",
    "estimate_delta_c",
    "sweep_figure1",
    "load_rho_table",
    "run_certificate_campaign",
    "certify_instance",
    "compare_reweighting",
]
