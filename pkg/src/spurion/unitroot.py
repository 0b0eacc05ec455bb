"""Augmented Dickey-Fuller and Phillips-Perron unit-root tests.

Both tests share the Dickey-Fuller regression

    dy_t = (rho - 1) y_{t-1} + sum_j phi_j dy_{t-j} + deterministics + u_t

under three deterministic specifications (zero mean, single mean, trend).
The null is a unit root; a small p-value rejects it. ``tau`` is the t-ratio
on ``y_{t-1}`` and ``rho`` the normalised bias ``n * (rho_hat - 1)``. Only
tau gets a p-value.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtr
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from . import _mackinnon as mk
from ._validation import as_1d, check_nonneg_int
from .exceptions import ConfigError, InsufficientSampleError, RankDeficiencyError
from .regress import default_bandwidth, longrun_variance, ols_fit

MIN_EXTRA_OBS = 10
PP_MIN_OBS = 12
P_FLOOR, P_CEIL = 1e-4, 0.9999


class DeterministicSpec(str, enum.Enum):
    ZERO_MEAN = "zero_mean"
    SINGLE_MEAN = "single_mean"
    TREND = "trend"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "_").replace(" ", "_")
        try:
            return _SPEC_ALIASES[key]
        except KeyError:
            raise ConfigError(
                f"unknown deterministic spec {value!r}; use zero_mean, single_mean or trend"
            ) from None

    @property
    def table_key(self):
        return {"zero_mean": "n", "single_mean": "c", "trend": "ct"}[self.value]


_SPEC_ALIASES = {
    **{k: DeterministicSpec.ZERO_MEAN for k in ("zero_mean", "zero", "n", "nc", "none", "zm")},
    **{k: DeterministicSpec.SINGLE_MEAN for k in ("single_mean", "single", "c", "constant", "sm")},
    **{k: DeterministicSpec.TREND for k in ("trend", "ct", "t", "tr")},
}
ALL_SPECS = tuple(DeterministicSpec)


class TestKind(str, enum.Enum):
    ADF = "ADF"
    PP = "PP"

    __test__ = False


@dataclass
class UnitRootResult:
    rho_stat: float
    tau_stat: float
    p_value: float
    spec: DeterministicSpec
    lags: int
    test: TestKind
    nobs_effective: int
    bandwidth: int | None = None
    degenerate: bool = False
    pvalue_clamped: bool = False
    regression: object = field(default=None, repr=False)

    def rejects(self, level):
        """True when the unit-root null is rejected; never for degenerate input."""
        return (not self.degenerate) and self.p_value < level

    def to_dict(self):
        out = {
            "test": self.test.value,
            "spec": self.spec.value,
            "lags": self.lags,
            "nobs_effective": self.nobs_effective,
            "rho_stat": _num(self.rho_stat),
            "tau_stat": _num(self.tau_stat),
            "p_value": _num(self.p_value),
            "degenerate": self.degenerate,
            "pvalue_clamped": self.pvalue_clamped,
        }
        if self.bandwidth is not None:
            out["bandwidth"] = self.bandwidth
        return out


def _num(x):
    return None if x is None or not math.isfinite(x) else float(x)


def _poly(coefs, x):
    return sum(c * x ** i for i, c in enumerate(coefs))


def finite_sample_shift(spec, nobs):
    """Gap between the 5% tau critical value at ``nobs`` and its limit."""
    b = mk.CRIT_2010[DeterministicSpec.parse(spec).table_key][1]
    return b[1] / nobs + b[2] / nobs ** 2 + b[3] / nobs ** 3


def tau_critical_value(spec, level, nobs=None):
    key = DeterministicSpec.parse(spec).table_key
    b = mk.CRIT_2010[key][mk.CRIT_LEVELS.index(level)]
    if nobs is None:
        return b[0]
    return b[0] + b[1] / nobs + b[2] / nobs ** 2 + b[3] / nobs ** 3


def _df_pvalue(tau, spec, nobs):
    spec = DeterministicSpec.parse(spec)
    key = spec.table_key
    t = tau - finite_sample_shift(spec, nobs) if nobs else tau
    if t < mk.TAU_MIN[key]:
        return P_FLOOR, True
    if t > mk.TAU_MAX[key]:
        return P_CEIL, True
    coefs = mk.SMALL_P[key] if t <= mk.TAU_STAR[key] else mk.LARGE_P[key]
    return float(ndtr(_poly(coefs, t))), False


def df_pvalue(tau, spec, nobs):
    """Left-tail Dickey-Fuller p-value for ``tau``.

    MacKinnon's asymptotic response surface, evaluated at tau shifted by the
    finite-sample correction of the 5% critical value for ``nobs``
    observations. Outside the fitted tau range the value is clamped to
    ``[1e-4, 0.9999]``.
    """
    return _df_pvalue(tau, spec, nobs)[0]


def _adf_design(y, spec, lags, trim=0):
    """Response and regressors of the ADF regression.

    Rows start at ``y[lags + 1 + trim]``; ``trim`` lets several lag orders
    share one estimation sample.
    """
    dy = np.diff(y)
    start = lags + trim  # index into dy
    n = dy.size - start
    cols = [y[start:start + n]]
    names = ["y_lag"]
    for j in range(1, lags + 1):
        cols.append(dy[start - j:start - j + n])
        names.append(f"dy_lag{j}")
    if spec is not DeterministicSpec.ZERO_MEAN:
        cols.append(np.ones(n))
        names.append("const")
    if spec is DeterministicSpec.TREND:
        cols.append(np.arange(1.0, n + 1.0))
        names.append("trend")
    return dy[start:], np.column_stack(cols), tuple(names)


def _degenerate(spec, lags, test, nobs, bandwidth=None):
    nan = float("nan")
    return UnitRootResult(nan, nan, nan, spec, lags, test, nobs, bandwidth=bandwidth, degenerate=True)


def _dy_constant(y):
    dy = np.diff(y)
    scale = max(np.max(np.abs(y)), 1.0)
    return np.ptp(dy) <= 1e-12 * scale


def adf_test(s, spec="single_mean", lags=1):
    """Augmented Dickey-Fuller test with a fixed number of lagged differences.

    The first ``lags + 1`` observations are consumed, so
    ``nobs_effective = T - lags - 1``. Constant or exactly linear input
    returns a result flagged ``degenerate`` with NaN statistics.
    """
    y = as_1d(s)
    spec = DeterministicSpec.parse(spec)
    lags = check_nonneg_int(lags, "lags")
    if y.size < lags + MIN_EXTRA_OBS:
        raise InsufficientSampleError(
            f"ADF with {lags} lags needs at least {lags + MIN_EXTRA_OBS} observations, got {y.size}"
        )
    n = y.size - lags - 1
    if _dy_constant(y):
        return _degenerate(spec, lags, TestKind.ADF, n)
    dep, X, names = _adf_design(y, spec, lags)
    try:
        fit = ols_fit(X, dep, names=names)
    except RankDeficiencyError:
        if spec is DeterministicSpec.ZERO_MEAN:
            raise
        # e.g. an exact linear trend under the trend spec
        return _degenerate(spec, lags, TestKind.ADF, n)
    if fit.degenerate:
        return _degenerate(spec, lags, TestKind.ADF, n)
    gamma = fit.coefficients[0]
    tau = float(gamma / fit.standard_errors[0])
    p, clamped = _df_pvalue(tau, spec, n)
    return UnitRootResult(
        rho_stat=float(n * gamma),
        tau_stat=tau,
        p_value=p,
        spec=spec,
        lags=lags,
        test=TestKind.ADF,
        nobs_effective=n,
        pvalue_clamped=clamped,
        regression=fit,
    )


def pp_test(s, spec="single_mean", bandwidth=None):
    """Phillips-Perron test: lag-0 DF regression plus a Newey-West correction.

    With ``bandwidth=0`` the correction vanishes and tau equals the lag-0 ADF
    tau exactly. ``None`` uses :func:`~spurion.regress.default_bandwidth`.
    """
    y = as_1d(s)
    spec = DeterministicSpec.parse(spec)
    if y.size < PP_MIN_OBS:
        raise InsufficientSampleError(f"PP test needs at least {PP_MIN_OBS} observations, got {y.size}")
    n = y.size - 1
    bw = default_bandwidth(y.size) if bandwidth is None else check_nonneg_int(bandwidth, "bandwidth")
    if _dy_constant(y):
        return _degenerate(spec, 0, TestKind.PP, n, bw)
    dep, X, names = _adf_design(y, spec, 0)
    try:
        fit = ols_fit(X, dep, names=names)
    except RankDeficiencyError:
        if spec is DeterministicSpec.ZERO_MEAN:
            raise
        return _degenerate(spec, 0, TestKind.PP, n, bw)
    if fit.degenerate:
        return _degenerate(spec, 0, TestKind.PP, n, bw)
    gamma = fit.coefficients[0]
    se = fit.standard_errors[0]
    s2 = fit.sigma2
    g0 = longrun_variance(fit.residuals, 0)
    lam2 = longrun_variance(fit.residuals, bw)
    t = gamma / se
    z_tau = math.sqrt(g0 / lam2) * t - 0.5 * (lam2 - g0) / math.sqrt(lam2) * (n * se / math.sqrt(s2))
    z_rho = n * gamma - 0.5 * (n * n * se * se / s2) * (lam2 - g0)
    p, clamped = _df_pvalue(z_tau, spec, n)
    return UnitRootResult(
        rho_stat=float(z_rho),
        tau_stat=float(z_tau),
        p_value=p,
        spec=spec,
        lags=0,
        test=TestKind.PP,
        nobs_effective=n,
        bandwidth=bw,
        pvalue_clamped=clamped,
        regression=fit,
    )


def select_lag(s, spec="single_mean", max_lag=4, criterion="aic"):
    """Lag order in ``[0, max_lag]`` minimising AIC or BIC on a common sample.

    Ties go to the smaller lag.
    """
    y = as_1d(s)
    spec = DeterministicSpec.parse(spec)
    max_lag = check_nonneg_int(max_lag, "max_lag")
    crit = str(criterion).lower()
    if crit not in ("aic", "bic"):
        raise ConfigError(f"criterion must be 'aic' or 'bic', got {criterion!r}")
    if y.size < max_lag + MIN_EXTRA_OBS:
        raise InsufficientSampleError(
            f"max_lag={max_lag} needs at least {max_lag + MIN_EXTRA_OBS} observations, got {y.size}"
        )
    if max_lag == 0:
        return 0
    best_lag, best = 0, None
    for lag in range(max_lag + 1):
        dep, X, names = _adf_design(y, spec, lag, trim=max_lag - lag)
        fit = ols_fit(X, dep, names=names)
        value = fit.aic if crit == "aic" else fit.bic
        if value is None:  # perfect fit cannot be beaten
            return lag
        if best is None or value < best:
            best_lag, best = lag, value
    return best_lag


@dataclass
class ScreenResult:
    passed: bool
    results: list

    def to_dict(self):
        return {"passed": self.passed, "results": [r.to_dict() for r in self.results]}


def i1_screen(s, level=0.05, lags=1):
    """Levels must fail to reject a unit root under single-mean and trend specs."""
    results = [adf_test(s, spec, lags) for spec in (DeterministicSpec.SINGLE_MEAN, DeterministicSpec.TREND)]
    passed = all(not r.degenerate and r.p_value >= level for r in results)
    return ScreenResult(passed, results)


class _UnitRootEstimator(BaseEstimator):
    def rejects(self, level=0.05):
        check_is_fitted(self, "result_")
        return self.result_.rejects(level)

    def _store(self, result):
        self.result_ = result
        self.statistic_ = result.tau_stat
        self.rho_ = result.rho_stat
        self.pvalue_ = result.p_value
        self.nobs_ = result.nobs_effective
        return self


class ADFTest(_UnitRootEstimator):
    """Estimator-style ADF test.

    ``lags=None`` selects the order with :func:`select_lag` using
    ``max_lag`` and ``criterion``; the chosen order is stored in ``lags_``.
    """

    def __init__(self, spec="single_mean", lags=1, max_lag=4, criterion="aic"):
        self.spec = spec
        self.lags = lags
        self.max_lag = max_lag
        self.criterion = criterion

    def fit(self, X, y=None):
        series = as_1d(X)
        lags = self.lags
        if lags is None:
            lags = select_lag(series, self.spec, self.max_lag, self.criterion)
        self.lags_ = lags
        return self._store(adf_test(series, self.spec, lags))


class PhillipsPerronTest(_UnitRootEstimator):
    def __init__(self, spec="single_mean", bandwidth=None):
        self.spec = spec
        self.bandwidth = bandwidth

    def fit(self, X, y=None):
        result = pp_test(as_1d(X), self.spec, self.bandwidth)
        self.bandwidth_ = result.bandwidth
        return self._store(result)
