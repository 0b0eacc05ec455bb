"""Seeded data-generating processes and the spurious-cointegration audit.

Random numbers
--------------
Every trial owns its generator; nothing is shared between trials.

* Bit generator: PCG64 (numpy's ``PCG64(seed)``), raw 64-bit outputs.
* Uniforms: ``u = (raw >> 11) * 2**-53`` in ``[0, 1)``.
* Gaussians: Box-Muller on consecutive pairs ``(u_a, u_b)`` of raw draws,
  ``r = sqrt(-2 ln(1 - u_a))``, ``z_2i = r cos(2 pi u_b)``,
  ``z_2i+1 = r sin(2 pi u_b)``; an odd request discards the last sine.
* Trial seeds: SplitMix64 finaliser of ``master + (i + 1) * 0x9E3779B97F4A7C15``
  (mod 2**64). Resampling attempt ``a > 0`` of a trial uses
  ``derive_trial_seed(trial_seed, a)``.
"""
from __future__ import annotations

import enum
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from functools import partial

import numpy as np

from ._validation import check_level
from .exceptions import ConfigError, GateRefusal, NumericalError
from .johansen import VecmDet, VecmSpec, johansen_trace_test
from .series import TimeSeries
from .unitroot import DeterministicSpec, adf_test, i1_screen

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MAX_RESAMPLES = 1000
Z95 = 1.959963984540054


def splitmix64(x):
    z = (x + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_trial_seed(master_seed, trial_index):
    if trial_index < 0:
        raise ConfigError(f"trial_index must be >= 0, got {trial_index}")
    return splitmix64((int(master_seed) + trial_index * GOLDEN_GAMMA) & MASK64)


def uniform_draws(seed, n):
    raw = np.random.PCG64(int(seed) & MASK64).random_raw(n)
    return (raw >> np.uint64(11)).astype(np.float64) * 2.0 ** -53


def gaussian_draws(seed, n):
    """``n`` standard normal deviates from ``seed`` (Box-Muller, see module doc)."""
    if n <= 0:
        return np.empty(0)
    m = (n + 1) // 2
    u = uniform_draws(seed, 2 * m)
    r = np.sqrt(-2.0 * np.log1p(-u[0::2]))
    theta = 2.0 * math.pi * u[1::2]
    out = np.empty(2 * m)
    out[0::2] = r * np.cos(theta)
    out[1::2] = r * np.sin(theta)
    return out[:n]


@dataclass(frozen=True)
class RandomWalkSpec:
    T: int
    mu: float = 0.0
    sigma: float = 1.0
    y0: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if int(self.T) != self.T or self.T < 2:
            raise ConfigError(f"random walk length must be an integer >= 2, got {self.T!r}")
        if not (self.sigma >= 0 and math.isfinite(self.sigma)):
            raise ConfigError(f"sigma must be finite and >= 0, got {self.sigma!r}")
        if not (math.isfinite(self.mu) and math.isfinite(self.y0)):
            raise ConfigError("mu and y0 must be finite")
        object.__setattr__(self, "T", int(self.T))
        object.__setattr__(self, "seed", int(self.seed) & MASK64)

    def to_dict(self):
        return asdict(self)


def random_walk_values(spec):
    steps = np.full(spec.T - 1, float(spec.mu))
    if spec.sigma > 0:
        steps = steps + spec.sigma * gaussian_draws(spec.seed, spec.T - 1)
    out = np.empty(spec.T)
    out[0] = spec.y0
    np.cumsum(steps, out=out[1:])
    out[1:] += spec.y0
    return out


def generate_random_walk(spec, start_index=0, label=None):
    """``y_0 = y0``, ``y_t = y_{t-1} + eps_t`` with ``eps_t ~ N(mu, sigma^2)``."""
    return TimeSeries(
        label=label or f"rw(mu={spec.mu:g},sigma={spec.sigma:g},seed={spec.seed})",
        start_index=start_index,
        values=random_walk_values(spec),
        unit="simulated",
        provenance=f"random walk T={spec.T} mu={spec.mu!r} sigma={spec.sigma!r} "
                   f"y0={spec.y0!r} seed={spec.seed}",
    )


def wilson_interval(successes, n, z=Z95):
    if n <= 0:
        raise ConfigError("Wilson interval needs n >= 1")
    p = successes / n
    denom = 1.0 + z * z / n
    centre = (p + z * z / (2 * n)) / denom
    half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom
    # rounding can push an endpoint past p when p is 0 or 1
    return max(0.0, min(p, centre - half)), min(1.0, max(p, centre + half))


@dataclass
class TrialOutcome:
    seed: int
    statistic: float
    p_value: float
    event: bool

    def to_list(self):
        return [self.seed, self.statistic, self.p_value, self.event]


@dataclass
class AuditReport:
    """Rejection counts over seeded trials.

    ``event`` names what ``rejections`` counts: rejection of rank 0 for the
    Johansen experiments, selection of rank 1 for the cointegrated pair,
    rejection of the unit root for ADF experiments.
    """

    target_label: str
    n_trials: int
    spec: dict
    test_config: dict
    rejections: int
    false_positive_rate: float
    wilson_ci95: tuple
    per_trial: list
    screen_failures: int = 0
    master_seed: int = 0
    event: str = "reject_rank0"
    override: bool = False
    extras: dict = field(default_factory=dict)

    @property
    def rate(self):
        return self.false_positive_rate

    def to_dict(self):
        return {
            "target_label": self.target_label,
            "n_trials": self.n_trials,
            "master_seed": self.master_seed,
            "spec": self.spec,
            "test_config": self.test_config,
            "event": self.event,
            "rejections": self.rejections,
            "false_positive_rate": self.false_positive_rate,
            "wilson_ci95": list(self.wilson_ci95),
            "screen_failures": self.screen_failures,
            "override": self.override,
            "extras": self.extras,
            "per_trial": [t.to_list() for t in self.per_trial],
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), sort_keys=True, **kw)


def _aggregate(outcomes, **kw):
    n = len(outcomes)
    hits = sum(1 for o in outcomes if o.event)
    return AuditReport(
        n_trials=n,
        rejections=hits,
        false_positive_rate=hits / n,
        wilson_ci95=wilson_interval(hits, n),
        per_trial=outcomes,
        **kw,
    )


def _map(fn, items, workers):
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))
    return [fn(i) for i in items]


def _audit_trial(index, *, target, walk, master_seed, test, level, screen_lags):
    trial_seed = derive_trial_seed(master_seed, index)
    failures = 0
    for attempt in range(MAX_RESAMPLES):
        seed = trial_seed if attempt == 0 else derive_trial_seed(trial_seed, attempt)
        values = random_walk_values(replace(walk, T=target.size, seed=seed))
        if i1_screen(values, level, screen_lags).passed:
            break
        failures += 1
    else:
        raise NumericalError(f"trial {index}: no walk passed the I(1) screen in {MAX_RESAMPLES} draws")
    res = johansen_trace_test(np.column_stack([target, values]), test, level, screen=False)
    return TrialOutcome(seed, float(res.trace_stats[0]), float(res.p_values[0]), res.rejects(0)), failures


def spurious_audit(target, walk, n_trials=1000, test=VecmSpec(1, VecmDet.NO_INTERCEPT), level=0.05,
                   master_seed=0, override=False, screen_lags=1, workers=1):
    """Pair ``target`` with independent random walks and count Johansen rejections.

    Every rejection of rank 0 is a false positive: the walks are generated
    independently of the target. Walks failing the I(1) screen are redrawn,
    so exactly ``n_trials`` pairs are tested; redraws are counted in
    ``screen_failures``.
    """
    if isinstance(n_trials, bool) or int(n_trials) != n_trials or n_trials < 1:
        raise ConfigError(f"n_trials must be >= 1, got {n_trials!r}")
    level = check_level(level)
    screen = i1_screen(target, level, screen_lags)
    if not screen.passed and not override:
        raise GateRefusal(
            f"target {getattr(target, 'label', 'series')!r} fails the I(1) screen "
            f"(ADF p-values {[round(r.p_value, 4) for r in screen.results]}); pass override to proceed"
        )
    values = np.asarray(getattr(target, "values", target), dtype=float)
    fn = partial(_audit_trial, target=values, walk=walk, master_seed=master_seed, test=test,
                 level=level, screen_lags=screen_lags)
    pairs = _map(fn, list(range(int(n_trials))), workers)
    outcomes = [p[0] for p in pairs]
    return _aggregate(
        outcomes,
        target_label=getattr(target, "label", "target"),
        spec={k: v for k, v in walk.to_dict().items() if k not in ("seed", "T")} | {"T": values.size},
        test_config={**test.to_dict(), "level": level, "screen_lags": screen_lags},
        screen_failures=sum(p[1] for p in pairs),
        master_seed=int(master_seed),
        override=bool(override and not screen.passed),
        extras={"target_screen": screen.to_dict()},
    )


def synthetic_trend_target(T=159, master_seed=1841, level=0.05, y0=math.log(40.0),
                           mu=(math.log(77.0) - math.log(40.0)) / 158, sigma=0.02):
    """Trend-dominated I(1) stand-in for a log life-expectancy series.

    A random walk with drift from ``ln 40`` towards ``ln 77`` over ``T``
    years; the first derived seed whose draw passes the I(1) screen is used.
    """
    for attempt in range(MAX_RESAMPLES):
        spec = RandomWalkSpec(T, mu, sigma, y0, derive_trial_seed(master_seed, attempt))
        s = generate_random_walk(spec, start_index=1841, label="synthetic_ln_leb")
        if i1_screen(s, level).passed:
            return s
    raise NumericalError("no synthetic target passed the I(1) screen")


class DGP(str, enum.Enum):
    INDEPENDENT_WALKS = "independent_walks"
    DRIFTED_WALKS = "drifted_walks"
    COINTEGRATED_PAIR = "cointegrated_pair"
    STATIONARY_AR = "stationary_ar"


@dataclass(frozen=True)
class ExperimentTest:
    """Which test an experiment applies: ``johansen`` or ``adf``."""

    kind: str = "johansen"
    vecm: VecmSpec = VecmSpec(1, VecmDet.NO_INTERCEPT)
    unitroot_spec: DeterministicSpec = DeterministicSpec.SINGLE_MEAN
    lags: int = 0
    level: float = 0.05

    __test__ = False

    def __post_init__(self):
        if self.kind not in ("johansen", "adf"):
            raise ConfigError(f"test kind must be 'johansen' or 'adf', got {self.kind!r}")
        object.__setattr__(self, "level", check_level(self.level))
        object.__setattr__(self, "unitroot_spec", DeterministicSpec.parse(self.unitroot_spec))

    def to_dict(self):
        if self.kind == "johansen":
            return {"kind": self.kind, **self.vecm.to_dict(), "level": self.level}
        return {"kind": self.kind, "spec": self.unitroot_spec.value, "lags": self.lags,
                "level": self.level}


_DGP_DEFAULTS = {
    DGP.INDEPENDENT_WALKS: {"T": 150, "mu": 0.0, "sigma": 1.0},
    DGP.DRIFTED_WALKS: {"T": 150, "mu": -0.2, "sigma": 0.7},
    DGP.COINTEGRATED_PAIR: {"T": 300, "beta": 2.0, "phi": 0.5, "sigma": 1.0},
    DGP.STATIONARY_AR: {"T": 200, "phi": 0.5, "sigma": 1.0},
}


def _check_params(dgp, params, test):
    merged = dict(_DGP_DEFAULTS[dgp])
    unknown = set(params) - set(merged)
    if unknown:
        raise ConfigError(f"unknown parameters for {dgp.value}: {sorted(unknown)}")
    merged.update(params)
    if int(merged["T"]) != merged["T"] or merged["T"] < 20:
        raise ConfigError(f"T must be an integer >= 20, got {merged['T']!r}")
    merged["T"] = int(merged["T"])
    if merged["sigma"] <= 0:
        raise ConfigError("sigma must be > 0")
    if dgp is DGP.DRIFTED_WALKS and merged["mu"] == 0:
        raise ConfigError("drifted_walks needs mu != 0")
    if "phi" in merged and not abs(merged["phi"]) < 1:
        raise ConfigError(f"phi must satisfy |phi| < 1, got {merged['phi']}")
    needs = "adf" if dgp is DGP.STATIONARY_AR else "johansen"
    if test.kind != needs:
        raise ConfigError(f"{dgp.value} is evaluated with a {needs} test, got {test.kind}")
    return merged


def _ar1(z, phi, sigma):
    u = np.empty(z.size)
    u[0] = sigma * z[0] / math.sqrt(1.0 - phi * phi)
    for t in range(1, z.size):
        u[t] = phi * u[t - 1] + sigma * z[t]
    return u


def _experiment_trial(index, *, dgp, p, test, master_seed):
    seed = derive_trial_seed(master_seed, index)
    T = p["T"]
    if dgp is DGP.STATIONARY_AR:
        y = _ar1(gaussian_draws(seed, T), p["phi"], p["sigma"])
        r = adf_test(y, test.unitroot_spec, test.lags)
        return TrialOutcome(seed, r.tau_stat, r.p_value, r.rejects(test.level)), None
    z = gaussian_draws(seed, 2 * T)
    if dgp is DGP.COINTEGRATED_PAIR:
        x = np.cumsum(p["sigma"] * z[:T])
        y = p["beta"] * x + _ar1(z[T:], p["phi"], p["sigma"])
        data = np.column_stack([y, x])
    else:
        steps = p["mu"] + p["sigma"] * z
        data = np.column_stack([np.cumsum(steps[:T]), np.cumsum(steps[T:])])
    res = johansen_trace_test(data, test.vecm, test.level, screen=False)
    if dgp is DGP.COINTEGRATED_PAIR:
        event = res.selected_rank == 1
        extra = float(res.beta[1, 0])
    else:
        event, extra = res.rejects(0), None
    return TrialOutcome(seed, float(res.trace_stats[0]), float(res.p_values[0]), event), extra


def size_power_experiment(dgp, params=None, n_trials=1000, test_config=None, master_seed=0, workers=1):
    """Rejection frequency of a test over a simulated data-generating process."""
    dgp = DGP(dgp)
    test = test_config or ExperimentTest(kind="adf" if dgp is DGP.STATIONARY_AR else "johansen")
    p = _check_params(dgp, dict(params or {}), test)
    if isinstance(n_trials, bool) or int(n_trials) != n_trials or n_trials < 1:
        raise ConfigError(f"n_trials must be >= 1, got {n_trials!r}")
    fn = partial(_experiment_trial, dgp=dgp, p=p, test=test, master_seed=master_seed)
    pairs = _map(fn, list(range(int(n_trials))), workers)
    extras = {}
    if dgp is DGP.COINTEGRATED_PAIR:
        extras["median_beta2"] = float(np.median([e for _, e in pairs]))
    event = {DGP.STATIONARY_AR: "reject_unit_root", DGP.COINTEGRATED_PAIR: "selected_rank_1"}.get(
        dgp, "reject_rank0")
    return _aggregate(
        [o for o, _ in pairs],
        target_label=dgp.value,
        spec=p,
        test_config=test.to_dict(),
        master_seed=int(master_seed),
        event=event,
        extras=extras,
    )
