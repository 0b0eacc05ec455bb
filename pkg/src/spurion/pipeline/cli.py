"""``spurion`` command-line interface.

Exit codes: 0 success, 1 usage or configuration error, 2 methodological
refusal (I(1) gate), 3 numerical failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .. import __version__
from ..exceptions import GateRefusal, NumericalError, SpurionError
from ..montecarlo import RandomWalkSpec, generate_random_walk
from ..series import DatasetRegistry
from .config import AnalysisConfig, parse_transforms
from .plot import emit_plot
from .workflow import dumps, load_series, run_audit, run_cointegration, run_regress, run_stationarity

log = logging.getLogger("spurion")

EXIT_OK, EXIT_USAGE, EXIT_GATE, EXIT_NUMERIC = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p):
    p.add_argument("--config", help="INI config file")
    p.add_argument("--data-dir", help="directory of <label>.csv files (or $SPURION_DATA_DIR)")
    p.add_argument("--seed", type=int, help="master seed")
    p.add_argument("--level", type=float, choices=(0.10, 0.05, 0.01), help="significance level")
    p.add_argument("--force", action="store_true", help="override the I(1) gate")
    p.add_argument("--out", help="output path (default: stdout)")


def _series_opts(p):
    p.add_argument("--series", nargs="+", metavar="LABEL", help="dataset labels")
    p.add_argument("--transform", help="transform chain for every series, e.g. 'log'")
    p.add_argument("--window", nargs=2, type=int, metavar=("FROM", "TO"))


def _auto(value):
    return None if value == "auto" else int(value)


def build_parser():
    ap = _Parser(prog="spurion", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"spurion {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("stationarity", help="ADF and PP tests on levels and first differences")
    _common(p)
    _series_opts(p)
    p.add_argument("--lags", type=_auto, default=argparse.SUPPRESS, help="ADF lag order or 'auto'")
    p.add_argument("--bandwidth", type=_auto, default=argparse.SUPPRESS, help="PP bandwidth or 'auto'")

    p = sub.add_parser("coint", help="I(1) screen followed by the Johansen trace test")
    _common(p)
    _series_opts(p)
    p.add_argument("--lags", type=_auto, default=argparse.SUPPRESS)
    p.add_argument("--bandwidth", type=_auto, default=argparse.SUPPRESS)
    p.add_argument("--lag-p", type=_auto, default=argparse.SUPPRESS, help="VAR order p or 'auto'")
    p.add_argument("--det", choices=("no_intercept", "unrestricted_constant"))

    p = sub.add_parser("audit", help="spurious-cointegration audit against random walks")
    _common(p)
    p.add_argument("--target", help="dataset label, or 'synthetic'")
    p.add_argument("--transform")
    p.add_argument("--window", nargs=2, type=int, metavar=("FROM", "TO"))
    p.add_argument("--n-trials", type=int)
    p.add_argument("--mu", type=float)
    p.add_argument("--sigma", type=float)
    p.add_argument("--y0", type=float)
    p.add_argument("--lag-p", type=int, default=argparse.SUPPRESS)
    p.add_argument("--det", choices=("no_intercept", "unrestricted_constant"))
    p.add_argument("--workers", type=int)

    p = sub.add_parser("simulate", help="write a seeded random walk as a year,value CSV")
    _common(p)
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--y0", type=float, default=0.0)
    p.add_argument("--start-year", type=int, default=0)

    p = sub.add_parser("plot", help="dual-axis SVG overlay plus CSV sidecar")
    _common(p)
    _series_opts(p)
    p.add_argument("--title")

    p = sub.add_parser("regress", help="levels OLS of one series on others")
    _common(p)
    p.add_argument("--y", required=True, help="dependent series label")
    p.add_argument("--x", nargs="+", required=True, help="regressor labels")
    p.add_argument("--transform")
    p.add_argument("--window", nargs=2, type=int, metavar=("FROM", "TO"))
    p.add_argument("--no-intercept", action="store_true")
    return ap


def _config(args):
    cfg = AnalysisConfig.from_file(args.config) if args.config else AnalysisConfig()
    over = {
        "data_dir": args.data_dir,
        "seed": args.seed,
        "level": args.level,
        "window": tuple(args.window) if getattr(args, "window", None) else None,
        "series": tuple(args.series) if getattr(args, "series", None) else None,
        "default_transform": parse_transforms(args.transform) if getattr(args, "transform", None) else None,
        "audit_target": getattr(args, "target", None),
        "n_trials": getattr(args, "n_trials", None),
        "mu": getattr(args, "mu", None) if args.command == "audit" else None,
        "sigma": getattr(args, "sigma", None) if args.command == "audit" else None,
        "y0": getattr(args, "y0", None) if args.command == "audit" else None,
        "det": getattr(args, "det", None),
        "workers": getattr(args, "workers", None),
        "out": args.out,
    }
    cfg = cfg.updated(**over)
    # None means "auto" here, so these cannot go through updated()
    for name, attr in (("lags", "lags"), ("bandwidth", "pp_bandwidth"), ("lag_p", "lag_p")):
        if name in vars(args):
            setattr(cfg, attr, vars(args)[name])
    return cfg


def _emit(text, out):
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")
        log.info("wrote %s", out)
    else:
        sys.stdout.write(text)


def _dispatch(args):
    cfg = _config(args)
    registry = None
    needs_data = args.command in ("stationarity", "coint", "plot", "regress") or (
        args.command == "audit" and cfg.audit_target not in (None, "", "synthetic"))
    if needs_data:
        registry = DatasetRegistry.resolve(cfg.data_dir)

    if args.command == "stationarity":
        _emit(dumps(run_stationarity(cfg, registry)), cfg.out)
    elif args.command == "coint":
        _emit(dumps(run_cointegration(cfg, registry, force=args.force)), cfg.out)
    elif args.command == "audit":
        _emit(dumps(run_audit(cfg, registry, force=args.force)), cfg.out)
    elif args.command == "regress":
        _emit(dumps(run_regress(cfg, registry, args.y, args.x, intercept=not args.no_intercept)), cfg.out)
    elif args.command == "simulate":
        spec = RandomWalkSpec(args.T, args.mu, args.sigma, args.y0, args.seed or 0)
        s = generate_random_walk(spec, start_index=args.start_year)
        lines = ["year,value"] + [f"{int(y)},{float(v)!r}" for y, v in zip(s.index, s.values)]
        _emit("\n".join(lines) + "\n", cfg.out)
    elif args.command == "plot":
        if not cfg.out:
            raise SpurionError("plot needs --out PATH.svg")
        svg, sidecar = emit_plot(load_series(cfg, registry), cfg.out, title=args.title)
        print(f"{svg}\n{sidecar}")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        _dispatch(args)
    except GateRefusal as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_GATE
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except SpurionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
