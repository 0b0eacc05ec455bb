import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spurion import _tables
from spurion.exceptions import ConfigError, InsufficientSampleError, SingularMomentError
from spurion.johansen import (
    JohansenResult,
    JohansenTest,
    VecmDet,
    VecmSpec,
    cointegrating_residual,
    johansen_trace_test,
    select_var_order,
    solve_rrr_eigen,
    trace_critical_value,
    trace_pvalue,
    vecm_auxiliary,
)
from spurion.series import TimeSeries

from oracles import johansen_2x2_eigenvalues

DETS = list(VecmDet)


def coint_pair(seed, T=300, beta=2.0, phi=0.5):
    rng = np.random.default_rng(seed)
    x = np.cumsum(rng.normal(size=T))
    u = np.zeros(T)
    e = rng.normal(size=T)
    for t in range(1, T):
        u[t] = phi * u[t - 1] + e[t]
    return np.column_stack([beta * x + u, x])


def walks(seed, T=150, k=2, drift=0.0):
    rng = np.random.default_rng(seed)
    return np.cumsum(drift + rng.normal(size=(T, k)), axis=0)


class TestAuxiliary:
    def test_lag1_no_intercept_is_raw(self):
        Y = walks(0)
        r0, r1 = vecm_auxiliary(Y, VecmSpec(1, "no_intercept"))
        np.testing.assert_array_equal(r0, np.diff(Y, axis=0))
        np.testing.assert_array_equal(r1, Y[:-1])

    def test_lag2_orthogonal_to_lagged_differences(self):
        Y = coint_pair(1, T=120)
        r0, r1 = vecm_auxiliary(Y, VecmSpec(2, "no_intercept"))
        dY = np.diff(Y, axis=0)
        lagged = dY[:-1]
        assert r0.shape == (118, 2)
        scale = np.abs(lagged).max() * np.abs(dY).max() * len(r0)
        assert np.abs(lagged.T @ r0).max() <= 1e-8 * scale
        assert np.abs(lagged.T @ r1).max() <= 1e-8 * scale * np.abs(Y).max()

    def test_constant_partialled_out(self):
        r0, r1 = vecm_auxiliary(walks(2), VecmSpec(1, "unrestricted_constant"))
        np.testing.assert_allclose(r0.mean(axis=0), 0, atol=1e-12)
        np.testing.assert_allclose(r1.mean(axis=0), 0, atol=1e-10)

    def test_insufficient_sample(self):
        with pytest.raises(InsufficientSampleError):
            vecm_auxiliary(walks(0, T=15), VecmSpec(5))

    def test_needs_two_series(self):
        with pytest.raises(Exception):
            vecm_auxiliary(walks(0, k=1), VecmSpec(1))


class TestEigen:
    def test_identical_residuals_hit_boundary(self):
        R = np.random.default_rng(0).normal(size=(200, 2))
        sol = solve_rrr_eigen(R, R)
        assert sol.boundary
        assert np.all(sol.eigenvalues == 1 - 1e-12)

    def test_independent_near_zero(self):
        rng = np.random.default_rng(11)
        sol = solve_rrr_eigen(rng.normal(size=(2000, 2)), rng.normal(size=(2000, 2)))
        assert np.all(sol.eigenvalues < 0.1)

    @pytest.mark.parametrize("seed", range(4))
    def test_matches_characteristic_polynomial(self, seed):
        rng = np.random.default_rng(seed)
        r1 = rng.normal(size=(50, 2))
        r0 = r1 @ rng.normal(size=(2, 2)) + rng.normal(size=(50, 2))
        sol = solve_rrr_eigen(r0, r1)
        expected = johansen_2x2_eigenvalues(r0.tolist(), r1.tolist())
        np.testing.assert_allclose(sol.eigenvalues, expected, atol=1e-12)

    def test_eigenvectors_s11_normalised(self):
        r0, r1 = vecm_auxiliary(coint_pair(3), VecmSpec(2))
        sol = solve_rrr_eigen(r0, r1)
        v = sol.eigenvectors
        np.testing.assert_allclose(v.T @ sol.s11 @ v, np.eye(2), atol=1e-10)

    def test_singular(self):
        x = np.random.default_rng(0).normal(size=(100, 1))
        with pytest.raises(SingularMomentError) as info:
            solve_rrr_eigen(np.hstack([x, 2 * x]), np.random.default_rng(1).normal(size=(100, 2)))
        assert info.value.condition > 1e12


@pytest.mark.parametrize("det,sm_det", [(VecmDet.NO_INTERCEPT, -1), (VecmDet.UNRESTRICTED_CONSTANT, 0)])
@pytest.mark.parametrize("p", [2, 3])
def test_matches_statsmodels(det, sm_det, p):
    # statsmodels pairs dY_t with Y_t rather than Y_{t-1} when k_ar_diff=0, so p=1
    # is checked against the pure-Python oracle instead (test_lag1_matches_oracle)
    vecm = pytest.importorskip("statsmodels.tsa.vector_ar.vecm")
    Y = np.column_stack([coint_pair(p), walks(p + 100, T=300, k=1)])
    ours = johansen_trace_test(Y, VecmSpec(p, det), screen=False)
    theirs = vecm.coint_johansen(Y, sm_det, p - 1)
    np.testing.assert_allclose(ours.eigenvalues, theirs.eig, rtol=1e-8, atol=1e-12)
    np.testing.assert_allclose(ours.trace_stats, theirs.lr1, rtol=1e-8)


def test_lag1_matches_oracle():
    Y = coint_pair(2, T=80)
    res = johansen_trace_test(Y, VecmSpec(1), screen=False)
    expected = johansen_2x2_eigenvalues(np.diff(Y, axis=0).tolist(), Y[:-1].tolist())
    np.testing.assert_allclose(res.eigenvalues, expected, atol=1e-12)
    np.testing.assert_allclose(res.trace_stats[1], -79 * np.log(1 - expected[1]), rtol=1e-12)


class TestTraceTest:
    def test_trace_identity(self):
        Y = np.column_stack([coint_pair(4), walks(104, T=300, k=1)])
        res = johansen_trace_test(Y, VecmSpec(2), screen=False)
        T = res.nobs_effective
        for r in range(res.k - 1):
            gap = res.trace_stats[r] - res.trace_stats[r + 1]
            assert gap == pytest.approx(-T * np.log(1 - res.eigenvalues[r]), abs=1e-10)
        assert np.all(np.diff(res.trace_stats) < 0)
        assert np.all(res.trace_stats >= 0)
        assert np.all((res.eigenvalues >= 0) & (res.eigenvalues < 1))

    def test_beta_normalisation(self):
        res = johansen_trace_test(coint_pair(5), VecmSpec(1), screen=False)
        assert np.all(res.beta[0] == 1.0)
        assert res.selected_rank == 1
        assert res.beta[1, 0] == pytest.approx(-2.0, rel=0.05)

    def test_pi_invariant_under_normalisation(self):
        Y = coint_pair(6)
        res = johansen_trace_test(Y, VecmSpec(1), screen=False)
        r0, r1 = vecm_auxiliary(Y, VecmSpec(1))
        sol = solve_rrr_eigen(r0, r1)
        pi_raw = (sol.s01 @ sol.eigenvectors) @ sol.eigenvectors.T
        np.testing.assert_allclose(res.alpha @ res.beta.T, pi_raw, atol=1e-10)

    @settings(max_examples=25, deadline=None)
    @given(st.floats(1e-2, 1e2), st.floats(1e-2, 1e2), st.integers(0, 500), st.sampled_from(DETS))
    def test_diagonal_scaling_invariance(self, c1, c2, seed, det):
        Y = coint_pair(seed, T=150)
        a = johansen_trace_test(Y, VecmSpec(2, det), screen=False)
        b = johansen_trace_test(Y * [c1, c2], VecmSpec(2, det), screen=False)
        np.testing.assert_allclose(b.eigenvalues, a.eigenvalues, atol=1e-8)
        np.testing.assert_allclose(b.trace_stats, a.trace_stats, rtol=1e-8, atol=1e-8)
        assert np.all(b.beta[0] == 1.0)
        # beta rescales by the inverse scaling, renormalised on the first entry
        np.testing.assert_allclose(b.beta[1, 0], a.beta[1, 0] * c1 / c2, rtol=1e-6)

    @pytest.mark.parametrize("det", DETS)
    def test_order_invariance(self, det):
        Y = np.column_stack([coint_pair(7), walks(107, T=300, k=1)])
        perm = [2, 0, 1]
        a = johansen_trace_test(Y, VecmSpec(2, det), screen=False)
        b = johansen_trace_test(Y[:, perm], VecmSpec(2, det), screen=False)
        np.testing.assert_allclose(b.eigenvalues, a.eigenvalues, atol=1e-10)
        np.testing.assert_allclose(b.trace_stats, a.trace_stats, atol=1e-10 * a.trace_stats[0])
        # same vectors up to scale, rows permuted
        for i in range(3):
            va, vb = a.beta[perm, i], b.beta[:, i]
            np.testing.assert_allclose(vb, va / va[0], rtol=1e-6, atol=1e-8)

    def test_i0_input_warns(self):
        rng = np.random.default_rng(0)
        res = johansen_trace_test(rng.normal(size=(200, 2)), VecmSpec(1))
        assert any("I(1) screen not satisfied" in w for w in res.warnings)

    def test_labels_from_series(self):
        Y = coint_pair(9)  # both levels pass the I(1) screen for this seed
        series = [TimeSeries("y", 1900, Y[:, 0]), TimeSeries("x", 1900, Y[:, 1])]
        res = johansen_trace_test(series, VecmSpec(1))
        assert res.labels == ("y", "x")
        assert res.warnings == []

    def test_level_validation(self):
        with pytest.raises(ConfigError):
            johansen_trace_test(coint_pair(0), VecmSpec(1), level=0.2)

    def test_spec_validation(self):
        with pytest.raises(ConfigError):
            VecmSpec(0)
        assert VecmSpec(1, "noint").det is VecmDet.NO_INTERCEPT


class TestTracePValue:
    @pytest.mark.parametrize("det", DETS)
    @pytest.mark.parametrize("n", range(1, 13))
    def test_five_percent_point(self, det, n):
        cv = trace_critical_value(n, det, 0.05)
        assert trace_pvalue(cv, n, det) == pytest.approx(0.05, abs=0.005)

    @pytest.mark.parametrize("det", DETS)
    @pytest.mark.parametrize("n", range(1, 13))
    def test_one_and_ten_percent_points(self, det, n):
        row = _tables.TRACE_CRIT[det.value][n - 1]
        assert trace_pvalue(row[0], n, det) == pytest.approx(0.10, abs=0.012)
        assert trace_pvalue(row[2], n, det) == pytest.approx(0.01, abs=0.003)

    def test_uc_one_trend_is_chi2(self):
        assert trace_pvalue(3.8415, 1, "unrestricted_constant") == pytest.approx(0.05, abs=1e-4)

    @pytest.mark.parametrize("det", DETS)
    def test_zero_trace(self, det):
        assert trace_pvalue(0.0, 1, det) == 1.0
        assert trace_pvalue(1e-9, 3, det) == pytest.approx(1.0)

    @pytest.mark.parametrize("det", DETS)
    @pytest.mark.parametrize("n", [1, 4, 12])
    def test_monotone(self, det, n):
        grid = np.linspace(0.01, 3 * trace_critical_value(n, det, 0.01), 500)
        p = np.array([trace_pvalue(t, n, det) for t in grid])
        step = np.diff(p)
        assert np.all(step <= 0)
        # strict wherever the tail probability is representable
        inner = (p[:-1] > 1e-15) & (p[:-1] < 1 - 1e-15)
        assert inner.sum() > 100 and np.all(step[inner] < 0)

    def test_dimension_range(self):
        with pytest.raises(ConfigError):
            trace_pvalue(10.0, 13)
        with pytest.raises(ConfigError):
            trace_pvalue(10.0, 0)


class TestResidual:
    def test_exact_relation(self):
        x = np.cumsum(np.random.default_rng(0).normal(size=50))
        res = JohansenResult(
            eigenvalues=np.array([0.5, 0.0]), trace_stats=np.array([10.0, 0.0]),
            p_values=np.array([0.01, 1.0]), beta=np.array([[1.0, 1.0], [-3.0, 0.5]]),
            alpha=np.zeros((2, 2)), selected_rank=1, level=0.05, spec=VecmSpec(1),
            nobs_effective=49, labels=("y1", "y2"))
        z = cointegrating_residual([TimeSeries("y1", 1900, 3 * x), TimeSeries("y2", 1900, x)], res)
        np.testing.assert_array_equal(z.values, np.zeros(50))
        assert z.start_index == 1900

    def test_rank_zero(self):
        res = johansen_trace_test(walks(1, T=200), VecmSpec(1, "unrestricted_constant"), screen=False)
        res.selected_rank = 0
        with pytest.raises(ConfigError):
            cointegrating_residual(walks(1, T=200), res)

    @pytest.mark.slow
    def test_residual_is_stationary(self):
        from spurion.unitroot import adf_test
        hits = 0
        for seed in range(1000):
            Y = coint_pair(seed)
            res = johansen_trace_test(Y, VecmSpec(1), screen=False)
            if res.selected_rank >= 1:
                hits += adf_test(cointegrating_residual(Y, res), "single_mean", 1).rejects(0.05)
        assert hits / 1000 >= 0.90


def test_select_var_order():
    rng = np.random.default_rng(0)
    T = 400
    Y = np.zeros((T, 2))
    e = rng.normal(size=(T, 2))
    for t in range(2, T):
        Y[t] = 1.3 * Y[t - 1] - 0.4 * Y[t - 2] + e[t]
    assert select_var_order(Y, max_p=5) == 2


def test_estimator_api():
    Y = coint_pair(12)
    est = JohansenTest(lag_p=None).fit(Y)
    assert set(est.get_params()) == {"lag_p", "det", "level", "screen"}
    assert est.rank_ == 1 and est.lag_p_ >= 1
    z = est.transform(Y)
    assert z.shape == (300, 1)
    np.testing.assert_allclose(z[:, 0], Y @ est.beta_[:, 0])
