"""Command-line experiment runner.

Subcommands:
  predict    generate the chaotic series, train the requested rules, write
             per-run learning-curve CSVs plus summary.csv
  gradcheck  certify the analytic gradients against finite differences
  gen-series dump the raw chaotic series as CSV

Options may come from a config file (ini-style sections: experiment, train,
mackey_glass, noise) with command-line flags taking precedence.

Exit codes: 0 success, 1 divergence during training, 2 configuration error,
3 gradient check failure.
"""
from __future__ import annotations

import argparse
import configparser
import sys
from pathlib import Path

from .gradcheck import run_gradient_check
from .harness import WINDOW, build_spec, run_experiment, summary_table
from .timeseries import MackeyGlassConfig, mackey_glass, write_series_csv
from .training import DivergenceError

EXIT_OK = 0
EXIT_DIVERGENCE = 1
EXIT_CONFIG = 2
EXIT_GRADCHECK = 3

# config-file key -> (section, python type); mirrors build_spec's signature
_CONFIG_KEYS = {
    "scenario": ("experiment", str),
    "rule": ("experiment", str),
    "hidden_n": ("experiment", int),
    "trials": ("experiment", int),
    "smoothing_window": ("experiment", int),
    "series_scale": ("experiment", float),
    "out_dir": ("experiment", str),
    "seed": ("train", int),
    "iterations": ("train", int),
    "eta_q": ("train", float),
    "eta_v": ("train", float),
    "eta_p": ("train", float),
    "eta_w": ("train", float),
    "sigma": ("train", float),
    "tau": ("mackey_glass", float),
    "x0": ("mackey_glass", float),
    "dt": ("mackey_glass", float),
    "n_samples": ("mackey_glass", int),
    "sample_stride": ("mackey_glass", int),
    "gaussian_std": ("noise", float),
    "impulse_prob": ("noise", float),
    "impulse_bg_std": ("noise", float),
    "impulse_std": ("noise", float),
}


def _read_config(path: str) -> dict:
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ValueError(f"cannot read config file {path}")
    known_sections = {section for section, _ in _CONFIG_KEYS.values()}
    for section in parser.sections():
        if section not in known_sections:
            raise ValueError(f"unknown config section [{section}] in {path}")
        for key in parser.options(section):
            if _CONFIG_KEYS.get(key, (None,))[0] != section:
                raise ValueError(f"unknown config key {key!r} in section [{section}] of {path}")
    values = {}
    for key, (section, typ) in _CONFIG_KEYS.items():
        if parser.has_option(section, key):
            values[key] = typ(parser.get(section, key))
    return values


def _add_predict_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="ini-style config file; flags override it")
    sub.add_argument("--scenario", choices=["noiseless", "gaussian", "impulsive"])
    sub.add_argument("--rule", choices=["mse", "mcc", "both"])
    sub.add_argument("--hidden-n", type=int, dest="hidden_n")
    sub.add_argument("--trials", type=int)
    sub.add_argument("--iters", type=int, dest="iterations")
    sub.add_argument("--seed", type=int)
    sub.add_argument("--eta-q", type=float, dest="eta_q", help="output-bias step size")
    sub.add_argument("--eta-v", type=float, dest="eta_v", help="output-weights step size")
    sub.add_argument("--eta-p", type=float, dest="eta_p", help="hidden-bias step size")
    sub.add_argument("--eta-w", type=float, dest="eta_w", help="input-weights step size")
    sub.add_argument("--sigma", type=float, help="correntropy kernel width")
    sub.add_argument("--smoothing", type=int, dest="smoothing_window")
    sub.add_argument("--series-scale", type=float, dest="series_scale",
                     help="amplitude factor applied to the series before embedding")
    sub.add_argument("--out-dir", dest="out_dir")
    sub.add_argument("--gaussian-std", type=float, dest="gaussian_std")
    sub.add_argument("--impulse-prob", type=float, dest="impulse_prob")
    sub.add_argument("--impulse-bg-std", type=float, dest="impulse_bg_std")
    sub.add_argument("--impulse-std", type=float, dest="impulse_std")


_DEFAULTS = dict(
    scenario="noiseless",
    rule="both",
    hidden_n=10,
    trials=1,
    iterations=3000,
    seed=0,
    eta_q=1e-2,
    eta_v=1e-2,
    eta_p=1e-2,
    eta_w=1e-2,
    sigma=1.0,
    smoothing_window=100,
    series_scale=0.6,
    out_dir="runs",
    gaussian_std=0.1,
    impulse_prob=0.05,
    impulse_bg_std=0.1,
    impulse_std=3.0,
)


def _cmd_predict(args: argparse.Namespace) -> int:
    settings = dict(_DEFAULTS)
    mg_overrides: dict = {}
    if args.config:
        from_file = _read_config(args.config)
        mg_overrides = {
            k: from_file.pop(k) for k in ("tau", "x0", "dt", "n_samples", "sample_stride")
            if k in from_file
        }
        settings.update(from_file)
    for key in settings:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    mg_cfg = None
    if mg_overrides:
        mg_kwargs = dict(n_samples=settings["iterations"] + WINDOW)
        mg_kwargs.update(mg_overrides)
        mg_cfg = MackeyGlassConfig(**mg_kwargs)
    spec = build_spec(
        scenario=settings["scenario"],
        rule=settings["rule"],
        hidden_n=settings["hidden_n"],
        trials=settings["trials"],
        iterations=settings["iterations"],
        seed=settings["seed"],
        eta_b2=settings["eta_q"],
        eta_w2=settings["eta_v"],
        eta_b1=settings["eta_p"],
        eta_w1=settings["eta_w"],
        sigma=settings["sigma"],
        smoothing_window=settings["smoothing_window"],
        series_scale=settings["series_scale"],
        out_dir=settings["out_dir"],
        gaussian_std=settings["gaussian_std"],
        impulse_prob=settings["impulse_prob"],
        impulse_bg_std=settings["impulse_bg_std"],
        impulse_std=settings["impulse_std"],
        mg_cfg=mg_cfg,
    )
    summaries = run_experiment(spec)
    print(summary_table(summaries))
    print(f"curves and summary.csv written to {Path(spec.out_dir).resolve()}")
    return EXIT_OK


def _cmd_gradcheck(args: argparse.Namespace) -> int:
    report = run_gradient_check(m=args.m, n=args.n, instances=args.instances, seed=args.seed)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.passed else EXIT_GRADCHECK


def _cmd_gen_series(args: argparse.Namespace) -> int:
    cfg = MackeyGlassConfig(
        tau=args.tau, x0=args.x0, dt=args.dt, n_samples=args.n_samples, sample_stride=args.stride
    )
    series = mackey_glass(cfg)
    write_series_csv(series, args.out, spacing=cfg.dt * cfg.sample_stride)
    print(f"{len(series)} samples written to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qmlp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    predict = sub.add_parser("predict", help="run a prediction experiment")
    _add_predict_flags(predict)
    predict.set_defaults(func=_cmd_predict)

    gradcheck = sub.add_parser("gradcheck", help="finite-difference gradient certification")
    gradcheck.add_argument("--m", type=int, default=3, help="input elements")
    gradcheck.add_argument("--n", type=int, default=2, help="hidden units")
    gradcheck.add_argument("--instances", type=int, default=100)
    gradcheck.add_argument("--seed", type=int, default=0)
    gradcheck.set_defaults(func=_cmd_gradcheck)

    gen = sub.add_parser("gen-series", help="dump the chaotic series as CSV")
    gen.add_argument("--n-samples", type=int, default=2000, dest="n_samples")
    gen.add_argument("--tau", type=float, default=17.0)
    gen.add_argument("--x0", type=float, default=0.12)
    gen.add_argument("--dt", type=float, default=0.1)
    gen.add_argument("--stride", type=int, default=10)
    gen.add_argument("--out", default="mackey_glass.csv")
    gen.set_defaults(func=_cmd_gen_series)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DivergenceError as err:
        print(f"divergence: {err}", file=sys.stderr)
        return EXIT_DIVERGENCE
    except (ValueError, OSError, configparser.Error) as err:
        print(f"configuration error: {err}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
