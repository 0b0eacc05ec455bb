"""Johansen trace test for cointegration rank via reduced-rank regression.

The VECM is

    dY_t = Pi Y_{t-1} + sum_{j<p} G_j dY_{t-j} + D_t + e_t,   Pi = alpha beta'

with ``D_t`` empty (``no_intercept``) or an unrestricted constant. After
partialling the short-run regressors out of ``dY_t`` (R0) and ``Y_{t-1}``
(R1), the squared canonical correlations ``lambda_i`` between R0 and R1
give ``trace(r) = -T_eff * sum_{i>r} ln(1 - lambda_i)`` with
``T_eff = T - p``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from scipy import stats
from scipy.linalg import cho_factor, solve_triangular
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import _tables
from ._validation import as_2d, check_level
from .exceptions import (
    ConfigError,
    InsufficientSampleError,
    SeriesError,
    SingularMomentError,
)
from .regress import qr_residuals
from .series import TimeSeries, TransformTag
from .unitroot import i1_screen

MAX_DIM = 12
COND_LIMIT = 1e12
EIG_CEIL = 1.0 - 1e-12
MIN_EXTRA_OBS = 10


class VecmDet(str, enum.Enum):
    NO_INTERCEPT = "no_intercept"
    UNRESTRICTED_CONSTANT = "unrestricted_constant"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "_")
        if key in ("no_intercept", "noint", "none", "n", "nc"):
            return cls.NO_INTERCEPT
        if key in ("unrestricted_constant", "constant", "const", "c", "uc"):
            return cls.UNRESTRICTED_CONSTANT
        raise ConfigError(f"unknown Johansen deterministic case {value!r}")


@dataclass(frozen=True)
class VecmSpec:
    lag_p: int = 1
    det: VecmDet = VecmDet.NO_INTERCEPT

    def __post_init__(self):
        if isinstance(self.lag_p, bool) or int(self.lag_p) != self.lag_p or self.lag_p < 1:
            raise ConfigError(f"lag_p must be an integer >= 1, got {self.lag_p!r}")
        object.__setattr__(self, "lag_p", int(self.lag_p))
        object.__setattr__(self, "det", VecmDet.parse(self.det))

    def to_dict(self):
        return {"lag_p": self.lag_p, "det": self.det.value}


@dataclass
class RRRSolution:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns, normalised so v' S11 v = I
    s00: np.ndarray
    s01: np.ndarray
    s11: np.ndarray
    clamped: bool = False
    boundary: bool = False


@dataclass
class JohansenResult:
    eigenvalues: np.ndarray
    trace_stats: np.ndarray
    p_values: np.ndarray
    beta: np.ndarray  # k x k, column i is the i-th vector with beta[0, i] == 1
    alpha: np.ndarray
    selected_rank: int
    level: float
    spec: VecmSpec
    nobs_effective: int
    labels: tuple = ()
    warnings: list = field(default_factory=list)
    eigen_clamped: bool = False

    @property
    def k(self):
        return self.eigenvalues.size

    def rejects(self, rank=0, level=None):
        return bool(self.p_values[rank] < (self.level if level is None else level))

    def to_dict(self):
        return {
            "labels": list(self.labels),
            "spec": self.spec.to_dict(),
            "level": self.level,
            "nobs_effective": self.nobs_effective,
            "eigenvalues": self.eigenvalues.tolist(),
            "trace_stats": self.trace_stats.tolist(),
            "p_values": self.p_values.tolist(),
            "beta": self.beta.T.tolist(),
            "alpha": self.alpha.T.tolist(),
            "selected_rank": self.selected_rank,
            "warnings": list(self.warnings),
            "eigen_clamped": self.eigen_clamped,
        }


def _lagged_blocks(Y, spec):
    T, k = Y.shape
    p = spec.lag_p
    dY = np.diff(Y, axis=0)
    n = T - p
    r0 = dY[p - 1:]
    r1 = Y[p - 1:T - 1]
    z = [dY[p - 1 - j:T - 1 - j] for j in range(1, p)]
    if spec.det is VecmDet.UNRESTRICTED_CONSTANT:
        z.append(np.ones((n, 1)))
    Z = np.hstack(z) if z else np.empty((n, 0))
    return r0, r1, Z


def vecm_auxiliary(Y, spec=VecmSpec()):
    """Concentrated residuals ``(R0, R1)`` of the VECM.

    With ``lag_p=1`` and no intercept there is nothing to partial out and
    ``R0 = dY_t``, ``R1 = Y_{t-1}``.
    """
    Y = as_2d(Y)
    T, k = Y.shape
    if k < 2:
        raise SeriesError("Johansen test needs at least two series")
    if T < k * spec.lag_p + MIN_EXTRA_OBS:
        raise InsufficientSampleError(
            f"{k} series with lag_p={spec.lag_p} need T >= {k * spec.lag_p + MIN_EXTRA_OBS}, got {T}"
        )
    r0, r1, Z = _lagged_blocks(Y, spec)
    if Z.shape[1] == 0:
        return r0.copy(), r1.copy()
    return qr_residuals(Z, r0), qr_residuals(Z, r1)


def _check_conditioning(name, m):
    cond = np.linalg.cond(m)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise SingularMomentError(f"moment matrix {name} is singular (condition {cond:.3g})", cond)


def solve_rrr_eigen(R0, R1):
    """Eigen-solution of ``|lambda S11 - S10 S00^-1 S01| = 0``.

    Uses ``S11 = L L'`` to turn the problem symmetric, so eigenvalues come out
    real. They are returned in descending order, clamped into
    ``[0, 1 - 1e-12]``; ``boundary`` is set when a value reached 1.
    """
    R0 = np.asarray(R0, dtype=float)
    R1 = np.asarray(R1, dtype=float)
    n = R0.shape[0]
    s00 = R0.T @ R0 / n
    s11 = R1.T @ R1 / n
    s01 = R0.T @ R1 / n
    _check_conditioning("S00", s00)
    _check_conditioning("S11", s11)
    L, _ = cho_factor(s11, lower=True)
    L = np.tril(L)
    m = s01.T @ np.linalg.solve(s00, s01)
    a = solve_triangular(L, solve_triangular(L, m, lower=True).T, lower=True)
    a = 0.5 * (a + a.T)
    lam, v = np.linalg.eigh(a)
    order = np.argsort(lam)[::-1]
    lam, v = lam[order], v[:, order]
    boundary = bool(np.any(lam >= EIG_CEIL))
    clamped = bool(np.any(lam < 0) or boundary)
    lam = np.clip(lam, 0.0, EIG_CEIL)
    vecs = solve_triangular(L.T, v, lower=False)
    return RRRSolution(lam, vecs, s00, s01, s11, clamped, boundary)


def trace_pvalue(trace, k_minus_r, det=VecmDet.NO_INTERCEPT):
    """Asymptotic p-value of a trace statistic.

    Gamma distribution matched to the simulated mean and variance of the
    limiting trace distribution for ``k_minus_r`` common trends.
    """
    det = VecmDet.parse(det)
    if isinstance(k_minus_r, bool) or int(k_minus_r) != k_minus_r or not 1 <= k_minus_r <= MAX_DIM:
        raise ConfigError(f"k - r must be in [1, {MAX_DIM}], got {k_minus_r!r}")
    mean, var = _tables.TRACE_MOMENTS[det.value][int(k_minus_r) - 1]
    if trace <= 0:
        return 1.0
    return float(stats.gamma.sf(trace, mean * mean / var, scale=var / mean))


def trace_critical_value(k_minus_r, det, level):
    """Tabulated trace critical value (levels 0.10, 0.05, 0.01)."""
    det = VecmDet.parse(det)
    row = _tables.TRACE_CRIT[det.value][int(k_minus_r) - 1]
    return row[{0.10: 0, 0.05: 1, 0.01: 2}[check_level(level)]]


def select_var_order(Y, det=VecmDet.NO_INTERCEPT, max_p=5):
    """VAR order in ``1..max_p`` minimising AIC on the levels (common sample)."""
    Y = as_2d(Y)
    det = VecmDet.parse(det)
    T, k = Y.shape
    n = T - max_p
    if n < k * max_p + MIN_EXTRA_OBS:
        raise InsufficientSampleError(f"T={T} too short for VAR order selection up to {max_p}")
    target = Y[max_p:]
    best_p, best = 1, None
    for p in range(1, max_p + 1):
        cols = [Y[max_p - j:T - j] for j in range(1, p + 1)]
        if det is VecmDet.UNRESTRICTED_CONSTANT:
            cols.append(np.ones((n, 1)))
        X = np.hstack(cols)
        resid = qr_residuals(X, target)
        sign, logdet = np.linalg.slogdet(resid.T @ resid / n)
        if sign <= 0:
            return p
        aic = logdet + 2.0 * k * X.shape[1] / n
        if best is None or aic < best - 1e-12:
            best_p, best = p, aic
    return best_p


def johansen_trace_test(Y, spec=VecmSpec(), level=0.05, labels=None, screen=True, screen_lags=1):
    """Johansen trace test of cointegration rank.

    ``Y`` is a list of aligned :class:`~spurion.series.TimeSeries` or a
    ``T x k`` array. Rank ``r`` is selected as the smallest ``r`` whose null
    "rank <= r" is not rejected at ``level``. With ``screen=True`` each
    level series is put through the I(1) screen and failures are recorded in
    ``warnings`` (the test still runs).
    """
    level = check_level(level)
    if labels is None:
        labels = tuple(getattr(s, "label", f"y{i}") for i, s in enumerate(Y)) \
            if isinstance(Y, (list, tuple)) else None
    data = as_2d(Y)
    T, k = data.shape
    if labels is None:
        labels = tuple(f"y{i}" for i in range(k))
    if k > MAX_DIM:
        raise ConfigError(f"at most {MAX_DIM} series are supported, got {k}")
    warnings = []
    if screen:
        for j in range(k):
            try:
                ok = i1_screen(data[:, j], level, screen_lags).passed
            except Exception as exc:  # too short to screen etc.
                warnings.append(f"I(1) screen could not run for {labels[j]}: {exc}")
                continue
            if not ok:
                warnings.append(f"I(1) screen not satisfied for {labels[j]}")
    r0, r1 = vecm_auxiliary(data, spec)
    sol = solve_rrr_eigen(r0, r1)
    n = r0.shape[0]
    lam = sol.eigenvalues
    logs = np.log1p(-lam)
    # trace[r] = -n * sum_{i >= r} log(1 - lam_i), accumulated from the smallest eigenvalue
    trace = -n * np.cumsum(logs[::-1])[::-1]
    pvals = np.array([trace_pvalue(trace[r], k - r, spec.det) for r in range(k)])
    rank = next((r for r in range(k) if pvals[r] >= level), k)

    vecs = sol.eigenvectors
    alpha = sol.s01 @ vecs
    lead = vecs[0].copy()
    lead[np.abs(lead) < 1e-300] = 1.0
    beta = vecs / lead
    alpha = alpha * lead
    if sol.boundary:
        warnings.append("eigenvalue at the boundary 1 (perfect canonical correlation)")
    return JohansenResult(
        eigenvalues=lam,
        trace_stats=trace,
        p_values=pvals,
        beta=beta,
        alpha=alpha,
        selected_rank=rank,
        level=level,
        spec=spec,
        nobs_effective=n,
        labels=tuple(labels),
        warnings=warnings,
        eigen_clamped=sol.clamped,
    )


def cointegrating_residual(Y, result):
    """``z_t = Y_t . beta_1`` for the leading normalised vector.

    For two series this is ``y1_t - b * y2_t`` with ``beta_1 = (1, -b)``.
    """
    if result.selected_rank < 1:
        raise ConfigError("selected rank is 0: there is no cointegrating relation to form")
    data = as_2d(Y)
    z = data @ result.beta[:, 0]
    first = Y[0] if isinstance(Y, (list, tuple)) and isinstance(Y[0], TimeSeries) else None
    name = "z(" + ",".join(result.labels) + ")"
    return TimeSeries(
        label=name,
        start_index=first.start_index if first is not None else 0,
        values=z,
        unit="cointegrating residual",
        provenance=f"cointegrating residual, beta={np.round(result.beta[:, 0], 6).tolist()}",
        tags=(TransformTag.LEVEL,),
    )


class JohansenTest(TransformerMixin, BaseEstimator):
    """Estimator wrapper: ``fit`` runs the trace test, ``transform`` projects
    data onto the selected cointegrating vectors.

    Parameters
    ----------
    lag_p : int or None, default=1
        VAR order in levels; ``None`` picks it with :func:`select_var_order`.
    det : {"no_intercept", "unrestricted_constant"}
    level : float, default=0.05
    screen : bool, default=True
    """

    def __init__(self, lag_p=1, det="no_intercept", level=0.05, screen=True):
        self.lag_p = lag_p
        self.det = det
        self.level = level
        self.screen = screen

    def fit(self, X, y=None):
        data = as_2d(X)
        lag_p = self.lag_p if self.lag_p is not None else select_var_order(data, self.det)
        spec = VecmSpec(lag_p, self.det)
        res = johansen_trace_test(data, spec, self.level, screen=self.screen)
        self.result_ = res
        self.lag_p_ = lag_p
        self.eigenvalues_ = res.eigenvalues
        self.trace_stats_ = res.trace_stats
        self.pvalues_ = res.p_values
        self.rank_ = res.selected_rank
        self.beta_ = res.beta
        self.alpha_ = res.alpha
        self.n_features_in_ = data.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "result_")
        data = as_2d(X)
        if data.shape[1] != self.n_features_in_:
            raise SeriesError(f"expected {self.n_features_in_} columns, got {data.shape[1]}")
        return data @ self.beta_[:, : self.rank_]
