"""Acceptance suite: one PASS/FAIL line per criterion.

Run ``pytest tests/test_acceptance.py -v``; the verdict lines are printed
in the terminal summary. Tolerances are fixed here and must not be relaxed.
"""
import os
import time

import numpy as np
import pytest

from spurion.johansen import VecmSpec, johansen_trace_test
from spurion.montecarlo import (
    DGP,
    ExperimentTest,
    RandomWalkSpec,
    derive_trial_seed,
    generate_random_walk,
    random_walk_values,
    size_power_experiment,
    spurious_audit,
    synthetic_trend_target,
)
from spurion.regress import ols_fit
from spurion.series import (
    ENV_DATA_DIR,
    DatasetRegistry,
    align_all,
    first_difference,
    log_transform,
    restrict_window,
)
from spurion.unitroot import adf_test, pp_test

from oracles import johansen_2x2_eigenvalues, normal_equations

VERDICTS = []

LEB = "ew_leb_civilian"
GDP = "uk_gdppc"
ITALY = ("it_gdppc", "it_cdr")


def report(number, passed, detail, seconds):
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'} ({detail}; {seconds:.1f}s)"
    VERDICTS.append(line)
    print(line)
    assert passed, line


def _registry():
    d = os.environ.get(ENV_DATA_DIR)
    if not d or not os.path.isdir(d):
        return None
    reg = DatasetRegistry.resolve(d)
    return reg if LEB in reg and GDP in reg else None


def test_criterion_1_oracle_equivalence():
    t0 = time.perf_counter()
    worst_ols = worst_eig = 0.0
    for seed in range(20):
        rng = np.random.default_rng(seed)
        X = np.column_stack([np.ones(40), rng.normal(size=(40, 3))])
        y = X @ rng.normal(size=4) + rng.normal(size=40)
        fit = ols_fit(X, y)
        ref = normal_equations(X.tolist(), y.tolist())
        worst_ols = max(worst_ols, float(np.max(np.abs(fit.coefficients - ref))))

        x = np.cumsum(rng.normal(size=60))
        Y = np.column_stack([2 * x + rng.normal(size=60), x])
        res = johansen_trace_test(Y, VecmSpec(1, "no_intercept"), screen=False)
        ref = johansen_2x2_eigenvalues(np.diff(Y, axis=0).tolist(), Y[:-1].tolist())
        worst_eig = max(worst_eig, float(np.max(np.abs(res.eigenvalues - ref))))
    ok = worst_ols <= 1e-10 and worst_eig <= 1e-10
    report(1, ok, f"max OLS diff {worst_ols:.1e}, max eigenvalue diff {worst_eig:.1e}, tol 1e-10",
           time.perf_counter() - t0)


def test_criterion_2_adf_size():
    t0 = time.perf_counter()
    n, T, rejections = 10_000, 150, 0
    for i in range(n):
        s = generate_random_walk(RandomWalkSpec(T=T, seed=derive_trial_seed(2, i)))
        rejections += adf_test(s, "single_mean", lags=1).rejects(0.05)
    rate = rejections / n
    report(2, 0.035 <= rate <= 0.065, f"rejection rate {rate:.4f}, required [0.035, 0.065]",
           time.perf_counter() - t0)


def test_criterion_3_adf_power():
    t0 = time.perf_counter()
    res = size_power_experiment(DGP.STATIONARY_AR, {"T": 200, "phi": 0.5}, 1000,
                                ExperimentTest(kind="adf", unitroot_spec="single_mean", lags=1),
                                master_seed=3)
    report(3, res.rate >= 0.90, f"rejection rate {res.rate:.3f}, required >= 0.90", time.perf_counter() - t0)


def test_criterion_4_johansen_true_positive():
    # the level is unstated; 5% caps rank-1 selection near 95% by construction, so 1% is used
    t0 = time.perf_counter()
    params = {"T": 300, "beta": 2.0, "phi": 0.5}
    res = size_power_experiment(DGP.COINTEGRATED_PAIR, params, 1000,
                                ExperimentTest(vecm=VecmSpec(1, "no_intercept"), level=0.01), master_seed=4)
    at5 = size_power_experiment(DGP.COINTEGRATED_PAIR, params, 1000,
                                ExperimentTest(vecm=VecmSpec(1, "no_intercept"), level=0.05), master_seed=4)
    beta2 = res.extras["median_beta2"]
    ok = res.rate >= 0.95 and abs(beta2 + 2.0) <= 0.10
    report(4, ok, f"rank 1 selected {res.rate:.3f} at 1% ({at5.rate:.3f} at 5%), median beta2 {beta2:.4f}",
           time.perf_counter() - t0)


def _leb_target():
    reg = _registry()
    if reg is None:
        return synthetic_trend_target(), "synthetic stand-in"
    return restrict_window(log_transform(reg.load(LEB)), 1841, 1999), f"ln {LEB} 1841-1999"


def test_criterion_5_spurious_cointegration():
    t0 = time.perf_counter()
    target, name = _leb_target()
    test = VecmSpec(1, "no_intercept")
    drift = spurious_audit(target, RandomWalkSpec(T=len(target), mu=-0.2, sigma=0.7), 1000, test, 0.05,
                           master_seed=2024)
    control = spurious_audit(target, RandomWalkSpec(T=len(target), mu=0.0, sigma=0.7), 1000, test, 0.05,
                             master_seed=2024)
    gap = drift.rate - control.rate
    ok = drift.rate > 0.5 and gap >= 0.20
    report(5, ok, f"{name}: FPR {drift.rate:.3f} at mu=-0.2 vs {control.rate:.3f} at mu=0, gap {gap:.3f}",
           time.perf_counter() - t0)


def test_criterion_6_spurious_regression():
    t0 = time.perf_counter()
    hits = 0
    for i in range(1000):
        seed = derive_trial_seed(6, i)
        y = random_walk_values(RandomWalkSpec(150, 0.2, 0.7, 0.0, derive_trial_seed(seed, 0)))
        x = random_walk_values(RandomWalkSpec(150, 0.2, 0.7, 0.0, derive_trial_seed(seed, 1)))
        fit = ols_fit(np.column_stack([np.ones(150), x]), y)
        hits += fit.r_squared > 0.9
    share = hits / 1000
    report(6, share >= 0.70, f"R^2 > 0.9 in {share:.3f} of seeds, required >= 0.70", time.perf_counter() - t0)


def test_criterion_7_data_dependent():
    reg = _registry()
    if reg is None:
        line = (f"criterion 7: SKIP (set {ENV_DATA_DIR} to a directory holding {LEB}.csv and {GDP}.csv "
                "in year,value form)")
        VERDICTS.append(line)
        pytest.skip(line)
    t0 = time.perf_counter()
    leb, gdp = (log_transform(reg.load(k)) for k in (LEB, GDP))
    checks = []
    long_leb, long_gdp = (restrict_window(s, 1841, 1999) for s in (leb, gdp))
    checks.append(("ln LEB 1841-1999 trend ADF p < 0.05", adf_test(long_leb, "trend", 1).p_value < 0.05))
    long_p = [t(long_gdp, spec).p_value for spec in ("zero_mean", "single_mean", "trend")
              for t in (lambda s, sp: adf_test(s, sp, 1), pp_test)]
    checks.append(("ln GDPpc 1841-1999 ADF/PP p > 0.98", min(long_p) > 0.98))
    short = [restrict_window(s, 1920, 1999) for s in (gdp, leb)]
    lv, df = [], []
    for s in short:
        for spec in ("zero_mean", "single_mean", "trend"):
            lv += [adf_test(s, spec, 1).p_value, pp_test(s, spec).p_value]
            ds = first_difference(s)
            df += [adf_test(ds, spec, 1).p_value, pp_test(ds, spec).p_value]
    checks.append(("1920-1999 level p > 0.15", min(lv) > 0.15))
    checks.append(("1920-1999 difference p < 0.001", max(df) < 0.001))
    j = johansen_trace_test(short, VecmSpec(1, "no_intercept"), 0.05, screen=False)
    checks.append(("Johansen r=0 p < 0.001", j.p_values[0] < 0.001))
    if all(k in reg for k in ITALY):
        it = [log_transform(reg.load(k)) for k in ITALY]
        jt = johansen_trace_test(align_all(it), VecmSpec(2, "no_intercept"), 0.05, screen=False)
        checks.append(("Italy lag 2 r=0 p in [0.02, 0.20]", 0.02 <= jt.p_values[0] <= 0.20))
    failed = [name for name, ok in checks if not ok]
    report(7, not failed, "failed: " + ", ".join(failed) if failed else f"{len(checks)} checks",
           time.perf_counter() - t0)


def test_criterion_8_cli_determinism(tmp_path):
    from spurion.pipeline.cli import main
    from spurion.pipeline.workflow import TIMESTAMP_FIELD
    t0 = time.perf_counter()
    path = tmp_path / "audit.json"
    runs = []
    for _ in range(2):
        assert main(["audit", "--seed", "20240101", "--n-trials", "200", "--out", str(path)]) == 0
        runs.append([ln for ln in path.read_bytes().splitlines() if f'"{TIMESTAMP_FIELD}"'.encode() not in ln])
    report(8, runs[0] == runs[1], f"{len(runs[0])} JSON lines compared byte for byte", time.perf_counter() - t0)
