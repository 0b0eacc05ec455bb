"""Unit-root, Johansen cointegration and spurious-cointegration audit tools."""

__version__ = "0.1.0"

from .exceptions import (  # noqa: E402
    ConfigError,
    GateRefusal,
    NumericalError,
    RankDeficiencyError,
    SeriesError,
    SpurionError,
)
from .johansen import (  # noqa: E402
    JohansenResult,
    JohansenTest,
    VecmDet,
    VecmSpec,
    cointegrating_residual,
    johansen_trace_test,
    trace_pvalue,
)
from .montecarlo import (  # noqa: E402
    AuditReport,
    RandomWalkSpec,
    derive_trial_seed,
    generate_random_walk,
    size_power_experiment,
    spurious_audit,
)
from .regress import OLSRegressor, OlsResult, longrun_variance, ols_fit  # noqa: E402
from .series import (  # noqa: E402
    TimeSeries,
    align_pair,
    fake_annualize,
    first_difference,
    growth_rate,
    ingest_csv,
    log_transform,
    restrict_window,
)
from .unitroot import (  # noqa: E402
    ADFTest,
    DeterministicSpec,
    PhillipsPerronTest,
    UnitRootResult,
    adf_test,
    df_pvalue,
    pp_test,
    select_lag,
)

__all__ = [
    "ADFTest",
    "AuditReport",
    "ConfigError",
    "DeterministicSpec",
    "GateRefusal",
    "JohansenResult",
    "JohansenTest",
    "NumericalError",
    "OLSRegressor",
    "OlsResult",
    "PhillipsPerronTest",
    "RandomWalkSpec",
    "RankDeficiencyError",
    "SeriesError",
    "SpurionError",
    "TimeSeries",
    "UnitRootResult",
    "VecmDet",
    "VecmSpec",
    "adf_test",
    "align_pair",
    "cointegrating_residual",
    "derive_trial_seed",
    "df_pvalue",
    "fake_annualize",
    "first_difference",
    "generate_random_walk",
    "growth_rate",
    "ingest_csv",
    "johansen_trace_test",
    "log_transform",
    "longrun_variance",
    "ols_fit",
    "pp_test",
    "restrict_window",
    "select_lag",
    "size_power_experiment",
    "spurious_audit",
    "trace_pvalue",
]
