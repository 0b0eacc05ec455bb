"""End-to-end workflows: stationarity screen, cointegration, audit, levels OLS."""
from __future__ import annotations

import datetime as _dt
import json

import numpy as np

from .. import __version__
from ..exceptions import ConfigError, GateRefusal
from ..johansen import VecmSpec, cointegrating_residual, johansen_trace_test, select_var_order
from ..montecarlo import RandomWalkSpec, spurious_audit, synthetic_trend_target
from ..regress import ols_fit
from ..series import (
    DatasetRegistry,
    align_all,
    first_difference,
    growth_rate,
    log_transform,
    restrict_window,
)
from ..unitroot import DeterministicSpec, adf_test, pp_test, select_lag
from .config import SYNTHETIC_TARGET

SCHEMA_VERSION = 1
TIMESTAMP_FIELD = "generated_at"

_TRANSFORM_FN = {"log": log_transform, "diff": first_difference, "growth": growth_rate}


def load_series(config, registry=None, labels=None):
    """Load, transform and window the configured series, then align them."""
    labels = list(labels if labels is not None else config.series)
    if not labels:
        raise ConfigError("no series configured")
    registry = registry or DatasetRegistry.resolve(config.data_dir)
    out = []
    for label in labels:
        s = registry.load(label)
        for t in config.transform_chain(label):
            s = _TRANSFORM_FN[t](s)
        if config.window is not None:
            s = restrict_window(s, *config.window)
        out.append(s)
    return align_all(out) if len(out) > 1 else out


def envelope(command, config, body):
    return {
        "schema_version": SCHEMA_VERSION,
        "engine_version": __version__,
        "command": command,
        TIMESTAMP_FIELD: _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "config": config.to_dict(),
        **body,
    }


def dumps(report):
    return json.dumps(report, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _unitroot_block(s, config):
    results = []
    for spec in config.specs:
        lags = config.lags
        if lags is None:
            lags = select_lag(s, spec, config.max_lag, config.criterion)
        results.append(adf_test(s, spec, lags))
        results.append(pp_test(s, spec, config.pp_bandwidth))
    return results


def _verdict(levels, diffs, level):
    per_spec = {}
    for spec in {r.spec for r in levels}:
        lv = [r for r in levels if r.spec is spec]
        df = [r for r in diffs if r.spec is spec]
        per_spec[spec] = (
            all(not r.degenerate and r.p_value >= level for r in lv)
            and all(r.rejects(level) for r in df)
        )
    failing = [s for s in DeterministicSpec if s in per_spec and not per_spec[s]]
    if not failing:
        text = "consistent with I(1)"
    else:
        text = "not I(1) under " + ", ".join(s.value.replace("_", " ") + " spec" for s in failing)
    return not failing, text, {s.value: ok for s, ok in per_spec.items()}


def stationarity_fragment(series, config):
    """Unit-root results on levels and first differences plus I(1) verdicts."""
    out = []
    for s in series:
        levels = _unitroot_block(s, config)
        diffs = _unitroot_block(first_difference(s), config)
        ok, text, per_spec = _verdict(levels, diffs, config.level)
        out.append({
            "label": s.label,
            "years": [s.start_index, s.end_index],
            "nobs": len(s),
            "unit": s.unit,
            "provenance": s.provenance,
            "levels": [r.to_dict() for r in levels],
            "differences": [r.to_dict() for r in diffs],
            "i1": ok,
            "verdict": text,
            "i1_by_spec": per_spec,
        })
    return out


def run_stationarity(config, registry=None):
    series = load_series(config, registry)
    return envelope("stationarity", config, {"series": stationarity_fragment(series, config)})


def run_cointegration(config, registry=None, force=False):
    """Stationarity screen, then Johansen, then ADF on the cointegrating residual.

    Raises :class:`GateRefusal` if any series is not consistent with I(1)
    and ``force`` is false.
    """
    series = load_series(config, registry)
    if len(series) < 2:
        raise ConfigError("cointegration needs at least two series")
    screen = stationarity_fragment(series, config)
    failing = [f"{s['label']}: {s['verdict']}" for s in screen if not s["i1"]]
    if failing and not force:
        raise GateRefusal("I(1) screen failed (" + "; ".join(failing) + "); rerun with --force to override")
    data = np.column_stack([s.values for s in series])
    lag_p = config.lag_p if config.lag_p is not None else select_var_order(data, config.det)
    spec = VecmSpec(lag_p, config.det)
    result = johansen_trace_test(series, spec, config.level, screen=False)
    body = {
        "series": screen,
        "override": bool(failing),
        "gate_failures": failing,
        "lag_p_selected": config.lag_p is None,
        "johansen": result.to_dict(),
        "cointegrating_residual": None,
    }
    if result.selected_rank >= 1:
        z = cointegrating_residual(series, result)
        lags = config.lags if config.lags is not None else select_lag(
            z, DeterministicSpec.SINGLE_MEAN, config.max_lag, config.criterion)
        adf = adf_test(z, DeterministicSpec.SINGLE_MEAN, lags)
        body["cointegrating_residual"] = {"label": z.label, "adf": adf.to_dict()}
    return envelope("coint", config, body)


def audit_target(config, registry=None):
    if config.audit_target in (None, "", SYNTHETIC_TARGET):
        s = synthetic_trend_target()
        if config.window is not None:
            s = restrict_window(s, *config.window)
        return s
    return load_series(config, registry, labels=[config.audit_target])[0]


def run_audit(config, registry=None, force=False):
    target = audit_target(config, registry)
    walk = RandomWalkSpec(T=len(target), mu=config.mu, sigma=config.sigma, y0=config.y0)
    report = spurious_audit(
        target,
        walk,
        n_trials=config.n_trials,
        test=VecmSpec(config.lag_p or 1, config.det),
        level=config.level,
        master_seed=config.seed,
        override=force,
        screen_lags=config.screen_lags,
        workers=config.workers,
    )
    return envelope("audit", config, {"audit": report.to_dict()})


def run_regress(config, registry=None, y_label=None, x_labels=(), intercept=True):
    """Levels OLS of one series on others (the spurious-regression demo)."""
    if not y_label or not x_labels:
        raise ConfigError("regress needs a dependent series and at least one regressor")
    series = load_series(config, registry, labels=[y_label, *x_labels])
    y = series[0].values
    cols = [s.values for s in series[1:]]
    names = [s.label for s in series[1:]]
    if intercept:
        cols.insert(0, np.ones(len(y)))
        names.insert(0, "const")
    fit = ols_fit(np.column_stack(cols), y, names=names)
    return envelope("regress", config, {
        "dependent": y_label,
        "years": [series[0].start_index, series[0].end_index],
        "ols": fit.to_dict(),
    })
