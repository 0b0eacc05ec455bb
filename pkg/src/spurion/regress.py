"""Ordinary least squares, information criteria and long-run variance.

Conventions (fixed so AIC/BIC are reproducible):

* the Gaussian log-likelihood is the concentrated one,
  ``loglik = -n/2 * (ln(2*pi) + ln(RSS/n) + 1)``;
* ``AIC = -2*loglik + 2k`` and ``BIC = -2*loglik + k*ln(n)``;
* ``sigma2 = RSS/(n-k)`` feeds the standard errors.

A fit whose residual norm is below ``1e-12`` times ``||y||`` is *degenerate*:
its log-likelihood and criteria are reported as ``None`` with
``degenerate=True`` instead of diverging.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_triangular
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_is_fitted, check_X_y, check_array

from ._validation import as_1d
from .exceptions import RankDeficiencyError, SeriesError

RANK_TOL = 1e-10
DEGENERATE_TOL = 1e-12
_LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class DesignMatrix:
    """Named regressor columns; ``entries`` is rows x columns."""

    columns: tuple
    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != len(self.columns):
            raise SeriesError(f"design matrix shape {arr.shape} does not match {len(self.columns)} names")
        if arr.shape[0] < arr.shape[1]:
            raise SeriesError(f"design matrix has fewer rows ({arr.shape[0]}) than columns ({arr.shape[1]})")
        if not np.all(np.isfinite(arr)):
            raise SeriesError("design matrix contains non-finite entries")
        object.__setattr__(self, "entries", arr)
        object.__setattr__(self, "columns", tuple(self.columns))

    @property
    def rows(self):
        return self.entries.shape[0]


@dataclass
class OlsResult:
    coefficients: np.ndarray
    standard_errors: np.ndarray
    residuals: np.ndarray
    r_squared: float
    sigma2: float
    loglik: float | None
    aic: float | None
    bic: float | None
    nobs: int
    names: tuple = ()
    degenerate: bool = False
    rss: float = field(default=0.0, repr=False)

    @property
    def k(self):
        return self.coefficients.size

    @property
    def tvalues(self):
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.coefficients / self.standard_errors

    def coef(self, name):
        return float(self.coefficients[self.names.index(name)])

    def to_dict(self):
        return {
            "names": list(self.names),
            "coefficients": self.coefficients.tolist(),
            "standard_errors": self.standard_errors.tolist(),
            "r_squared": self.r_squared,
            "sigma2": self.sigma2,
            "loglik": self.loglik,
            "aic": self.aic,
            "bic": self.bic,
            "nobs": self.nobs,
            "degenerate": self.degenerate,
        }


def qr_residuals(X, Y):
    """Residuals of each column of ``Y`` on ``X`` (rank-checked QR projection)."""
    if X.shape[1] == 0:
        return Y.copy()
    q, r = np.linalg.qr(X)
    _check_rank(r)
    return Y - q @ (q.T @ Y)


def _check_rank(r):
    d = np.abs(np.diag(r))
    if d.size and d.min() < RANK_TOL * d.max():
        raise RankDeficiencyError(
            f"design matrix is rank deficient: min|R_ii|/max|R_ii| = {d.min() / d.max():.3g} "
            f"< {RANK_TOL:g}"
        )


def ols_fit(X, y, names=None):
    """Least-squares fit of ``y`` on the columns of ``X`` via Householder QR."""
    if isinstance(X, DesignMatrix):
        names = X.columns
        X = X.entries
    else:
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
    y = np.asarray(y, dtype=float)
    n, k = X.shape
    if y.shape != (n,):
        raise SeriesError(f"dimension mismatch: y has shape {y.shape}, X has {n} rows")
    if n <= k:
        raise SeriesError(f"need more observations ({n}) than regressors ({k})")
    if names is None:
        names = tuple(f"x{i}" for i in range(k))
    q, r = np.linalg.qr(X)
    _check_rank(r)
    coef = solve_triangular(r, q.T @ y)
    resid = y - X @ coef
    rss = float(resid @ resid)
    sigma2 = rss / (n - k)
    rinv = solve_triangular(r, np.eye(k))
    se = np.sqrt(sigma2 * np.einsum("ij,ij->i", rinv, rinv))

    has_const = bool(np.any(np.all(X == X[0], axis=0) & (X[0] != 0)))
    if has_const:
        dev = y - y.mean()
        tss = float(dev @ dev)
    else:
        tss = float(y @ y)
    degenerate = rss <= (DEGENERATE_TOL ** 2) * float(y @ y)
    if degenerate:
        r2 = 1.0
        loglik = aic = bic = None
    else:
        r2 = 1.0 - rss / tss if tss > 0 else 0.0
        loglik = -0.5 * n * (_LOG_2PI + math.log(rss / n) + 1.0)
        aic = -2.0 * loglik + 2.0 * k
        bic = -2.0 * loglik + k * math.log(n)
    return OlsResult(
        coefficients=coef,
        standard_errors=se,
        residuals=resid,
        r_squared=r2,
        sigma2=sigma2,
        loglik=loglik,
        aic=aic,
        bic=bic,
        nobs=n,
        names=tuple(names),
        degenerate=degenerate,
        rss=rss,
    )


def information_criteria(fit):
    """``(aic, bic)``; both ``None`` for a degenerate fit (see ``fit.degenerate``)."""
    return fit.aic, fit.bic


def longrun_variance(residuals, bandwidth):
    """Newey-West (Bartlett kernel) long-run variance of a residual series.

    Autocovariances are mean-adjusted and divided by ``n``.
    """
    e = as_1d(residuals, "residuals")
    n = e.size
    if isinstance(bandwidth, bool) or int(bandwidth) != bandwidth or not 0 <= bandwidth < n:
        raise SeriesError(f"bandwidth must be an integer in [0, {n - 1}], got {bandwidth!r}")
    bandwidth = int(bandwidth)
    e = e - e.mean()
    total = float(e @ e) / n
    for j in range(1, bandwidth + 1):
        gamma = float(e[j:] @ e[:-j]) / n
        total += 2.0 * (1.0 - j / (bandwidth + 1.0)) * gamma
    return total


def default_bandwidth(nobs):
    """``floor(4 * (T/100)^(2/9))``."""
    return int(math.floor(4.0 * (nobs / 100.0) ** (2.0 / 9.0)))


class OLSRegressor(RegressorMixin, BaseEstimator):
    """Scikit-learn style wrapper around :func:`ols_fit`.

    Parameters
    ----------
    fit_intercept : bool, default=True
        Prepend a constant column before fitting.
    """

    def __init__(self, fit_intercept=True):
        self.fit_intercept = fit_intercept

    def _design(self, X):
        if self.fit_intercept:
            return np.column_stack([np.ones(X.shape[0]), X])
        return X

    def fit(self, X, y):
        X, y = check_X_y(X, y, y_numeric=True)
        names = (("const",) if self.fit_intercept else ()) + tuple(f"x{i}" for i in range(X.shape[1]))
        self.result_ = ols_fit(self._design(X), y, names=names)
        coef = self.result_.coefficients
        self.intercept_ = float(coef[0]) if self.fit_intercept else 0.0
        self.coef_ = coef[1:] if self.fit_intercept else coef
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        check_is_fitted(self, "result_")
        X = check_array(X)
        return X @ self.coef_ + self.intercept_
