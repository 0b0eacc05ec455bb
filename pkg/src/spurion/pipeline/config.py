"""INI-style analysis configuration.

Example::

    [data]
    dir = data
    series = uk_gdppc, ew_leb_civilian

    [transform]
    default = log

    [window]
    from = 1920
    to = 1999

    [unitroot]
    specs = zero_mean, single_mean, trend
    lags = 1
    pp_bandwidth = 1

    [johansen]
    lag_p = 1
    det = no_intercept
    level = 0.05

    [audit]
    target = ew_leb_civilian
    n_trials = 1000
    mu = -0.2
    sigma = 0.7
    seed = 20240101

Values of ``auto`` (or an absent key) mean "select automatically" for
``lags``, ``pp_bandwidth`` and ``lag_p``.
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .._validation import check_level
from ..exceptions import ConfigError
from ..johansen import VecmDet
from ..unitroot import ALL_SPECS, DeterministicSpec

TRANSFORMS = ("log", "diff", "growth")
SYNTHETIC_TARGET = "synthetic"


def _auto_int(value, name, minimum=0):
    if value is None or str(value).strip().lower() in ("", "auto"):
        return None
    try:
        out = int(str(value).strip())
    except ValueError:
        raise ConfigError(f"{name} must be an integer or 'auto', got {value!r}") from None
    if out < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {out}")
    return out


def _split(value):
    return [v.strip() for v in str(value).replace(";", ",").split(",") if v.strip()]


def parse_transforms(value):
    chain = tuple(t.lower() for t in _split(value)) if value else ()
    for t in chain:
        if t not in TRANSFORMS + ("level", "none"):
            raise ConfigError(f"unknown transform {t!r}; use one of {TRANSFORMS}")
    return tuple(t for t in chain if t not in ("level", "none"))


@dataclass
class AnalysisConfig:
    series: tuple = ()
    data_dir: str | None = None
    transforms: dict = field(default_factory=dict)
    default_transform: tuple = ()
    window: tuple | None = None
    specs: tuple = ALL_SPECS
    lags: int | None = 1
    max_lag: int = 4
    criterion: str = "aic"
    pp_bandwidth: int | None = None
    lag_p: int | None = 1
    det: VecmDet = VecmDet.NO_INTERCEPT
    level: float = 0.05
    screen_lags: int = 1
    audit_target: str | None = None
    n_trials: int = 1000
    mu: float = -0.2
    sigma: float = 0.7
    y0: float = 0.0
    seed: int = 0
    workers: int = 1
    out: str | None = None

    def __post_init__(self):
        self.level = check_level(self.level)
        self.det = VecmDet.parse(self.det)
        self.specs = tuple(DeterministicSpec.parse(s) for s in self.specs)
        if self.window is not None:
            lo, hi = (int(v) for v in self.window)
            if lo > hi:
                raise ConfigError(f"window start {lo} is after end {hi}")
            self.window = (lo, hi)
        if self.criterion.lower() not in ("aic", "bic"):
            raise ConfigError(f"criterion must be aic or bic, got {self.criterion!r}")
        self.criterion = self.criterion.lower()

    def transform_chain(self, label):
        return self.transforms.get(label, self.default_transform)

    def updated(self, **overrides):
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def to_dict(self):
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name == "specs":
                v = [s.value for s in v]
            elif f.name == "det":
                v = v.value
            elif f.name == "transforms":
                v = {k: list(c) for k, c in sorted(v.items())}
            elif isinstance(v, tuple):
                v = list(v)
            out[f.name] = v
        return out

    @classmethod
    def from_file(cls, path):
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        parser = configparser.ConfigParser()
        try:
            parser.read(path, encoding="utf-8")
        except configparser.Error as exc:
            raise ConfigError(f"{path}: {exc}") from None
        return cls.from_parser(parser, base=path.parent)

    @classmethod
    def from_parser(cls, parser, base=None):
        kw = {}
        known = {"data", "transform", "window", "unitroot", "johansen", "audit", "output"}
        extra = set(parser.sections()) - known
        if extra:
            raise ConfigError(f"unknown config sections: {sorted(extra)}")
        try:
            if parser.has_section("data"):
                d = parser["data"]
                if "series" in d:
                    kw["series"] = tuple(_split(d["series"]))
                if "dir" in d:
                    p = Path(d["dir"])
                    kw["data_dir"] = str(p if p.is_absolute() or base is None else base / p)
            if parser.has_section("transform"):
                tr = dict(parser["transform"])
                if "default" in tr:
                    kw["default_transform"] = parse_transforms(tr.pop("default"))
                kw["transforms"] = {k: parse_transforms(v) for k, v in tr.items()}
            if parser.has_section("window"):
                w = parser["window"]
                kw["window"] = (int(w["from"]), int(w["to"]))
            if parser.has_section("unitroot"):
                u = parser["unitroot"]
                if "specs" in u:
                    kw["specs"] = tuple(_split(u["specs"]))
                if "lags" in u:
                    kw["lags"] = _auto_int(u["lags"], "lags")
                if "max_lag" in u:
                    kw["max_lag"] = int(u["max_lag"])
                if "criterion" in u:
                    kw["criterion"] = u["criterion"]
                if "pp_bandwidth" in u:
                    kw["pp_bandwidth"] = _auto_int(u["pp_bandwidth"], "pp_bandwidth")
                if "screen_lags" in u:
                    kw["screen_lags"] = int(u["screen_lags"])
            if parser.has_section("johansen"):
                j = parser["johansen"]
                if "lag_p" in j:
                    kw["lag_p"] = _auto_int(j["lag_p"], "lag_p", minimum=1)
                if "det" in j:
                    kw["det"] = j["det"]
                if "level" in j:
                    kw["level"] = float(j["level"])
            if parser.has_section("audit"):
                a = parser["audit"]
                if "target" in a:
                    kw["audit_target"] = a["target"].strip()
                for key, conv in (("n_trials", int), ("mu", float), ("sigma", float), ("y0", float),
                                  ("seed", int), ("workers", int)):
                    if key in a:
                        kw[key] = conv(a[key])
            if parser.has_section("output") and "out" in parser["output"]:
                kw["out"] = parser["output"]["out"]
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"invalid config value: {exc}") from None
        return cls(**kw)
