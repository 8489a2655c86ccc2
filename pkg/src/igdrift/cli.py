"""Command-line pipeline: collect → select → fit → bound → validate → report.

Stages that run the evolutionary machinery take their settings from a JSON
config file and/or flags (flags win); stages that only transform existing
artifacts (compare, report, plotdata) read everything they need from the
artifacts' embedded metadata.  Default artifact paths land in --out-dir,
the IGDRIFT_OUT environment variable, or the current directory.
"""

import argparse
import json
import sys

from .config import PipelineConfig
from . import pipeline

_CONFIG_FLAGS = (
    # (flag, config key, type)
    ("--problem", "problem", str),
    ("--evolver", "evolver", str),
    ("--k", "k", int),
    ("--pop-size", "pop_size", int),
    ("--pc", "pc", float),
    ("--eta-c", "eta_c", float),
    ("--pm", "pm", float),
    ("--eta-m", "eta_m", float),
    ("--moead-t", "moead_t", int),
    ("--epsilon", "epsilon", float),
    ("--epsilon-collect", "epsilon_collect", float),
    ("--collect-runs", "collect_runs", int),
    ("--max-generations", "max_generations", int),
    ("--runs", "validation_runs", int),
    ("--front-size", "front_size", int),
    ("--span", "loess_span", float),
    ("--stability-trials", "stability_trials", int),
    ("--seed", "seed", int),
    ("--jobs", "jobs", int),
    ("--out-dir", "out_dir", str),
)


def _dims(text):
    return tuple(int(part) for part in text.split(",") if part.strip())


def _add_config_args(sub):
    sub.add_argument("--config", help="JSON config file; flags override it")
    for flag, key, typ in _CONFIG_FLAGS:
        sub.add_argument(flag, dest=key, type=typ, default=None)
    sub.add_argument("--dims", dest="dims", type=_dims, default=None)
    sub.add_argument("--validate-dims", dest="validate_dims", type=_dims, default=None)
    sub.add_argument(
        "--enforce-lower-bound",
        dest="enforce_lower_bound",
        action="store_const",
        const=True,
        default=None,
    )


def _build_config(args):
    data = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)
    keys = [key for _, key, _ in _CONFIG_FLAGS] + [
        "dims",
        "validate_dims",
        "enforce_lower_bound",
    ]
    for key in keys:
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    if "problem" not in data or "evolver" not in data:
        raise ValueError("problem and evolver are required (flag or config file)")
    return PipelineConfig.from_dict(data)


def _default(config, name):
    import os

    return os.path.join(config.output_dir(), name)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="igdrift",
        description="Empirical EFHT upper-bound estimation for MOEAs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("collect", help="sample IGD gains while the MOEA runs")
    _add_config_args(p)
    p.add_argument("--out", default=None)

    p = sub.add_parser("select", help="adaptive sample selection")
    _add_config_args(p)
    p.add_argument("--in", dest="input_path", required=True)
    p.add_argument("--out", default=None)

    p = sub.add_parser("fit", help="fit the power-law gain surface")
    _add_config_args(p)
    p.add_argument("--in", dest="input_path", required=True)
    p.add_argument("--out", default=None)

    p = sub.add_parser("bound", help="evaluate EFHT upper bounds")
    _add_config_args(p)
    p.add_argument("--fit", dest="fit_path", required=True)
    p.add_argument("--stats", dest="stats_path", default=None)
    p.add_argument("--out", default=None)

    p = sub.add_parser("validate", help="measure empirical hitting times")
    _add_config_args(p)
    p.add_argument("--out", default=None)

    p = sub.add_parser("compare", help="bound vs empirical algorithm ranking")
    p.add_argument("--bounds", nargs="+", required=True)
    p.add_argument("--stats", nargs="+", required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--out", default="comparison.json")

    p = sub.add_parser("stability", help="CV of repeated estimations")
    _add_config_args(p)
    p.add_argument("--out", default=None)

    p = sub.add_parser("report", help="render the estimation table")
    p.add_argument("--fit", dest="fit_path", required=True)
    p.add_argument("--bound", dest="bound_path", required=True)
    p.add_argument("--stats", dest="stats_path", required=True)
    p.add_argument("--out", default=None)

    p = sub.add_parser("plotdata", help="surface grid + scatter for plotting")
    p.add_argument("--fit", dest="fit_path", required=True)
    p.add_argument("--selected", dest="selected_path", required=True)
    p.add_argument("--out-surface", default="surface.csv")
    p.add_argument("--out-scatter", default="scatter.csv")

    args = parser.parse_args(argv)
    try:
        return _run(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _run(args):
    cmd = args.command
    if cmd == "collect":
        config = _build_config(args)
        out = args.out or _default(config, "samples.csv")
        pipeline.stage_collect(config, out)
        print(out)
    elif cmd == "select":
        config = _build_config(args)
        out = args.out or _default(config, "selected.csv")
        pipeline.stage_select(config, args.input_path, out)
        print(out)
    elif cmd == "fit":
        config = _build_config(args)
        out = args.out or _default(config, "fit.json")
        pipeline.stage_fit(config, args.input_path, out)
        print(out)
    elif cmd == "bound":
        config = _build_config(args)
        out = args.out or _default(config, "bound.json")
        pipeline.stage_bound(config, args.fit_path, out, stats_path=args.stats_path)
        print(out)
    elif cmd == "validate":
        config = _build_config(args)
        out = args.out or _default(config, "stats.json")
        pipeline.stage_validate(config, out)
        print(out)
    elif cmd == "compare":
        comparisons = pipeline.stage_compare(
            args.bounds, args.stats, args.out, n=args.n
        )
        for comparison in comparisons:
            flag = "consistent" if comparison.consistent else "inconsistent"
            print(f"n={comparison.n}: {flag}")
    elif cmd == "stability":
        config = _build_config(args)
        out = args.out or _default(config, "stability.json")
        report = pipeline.stage_stability(config, out)
        print(
            f"cv_coefficient={report.cv_coefficient:.4f}"
            f" cv_exponent={report.cv_exponent:.4f}"
        )
    elif cmd == "report":
        from .artifacts import read_json

        bound_meta = read_json(args.bound_path).get("meta", {})
        config = PipelineConfig.from_dict(bound_meta["config"])
        text = pipeline.stage_report(
            config, args.fit_path, args.bound_path, args.stats_path, args.out
        )
        print(text, end="")
    elif cmd == "plotdata":
        pipeline.stage_plotdata(
            args.fit_path, args.selected_path, args.out_surface, args.out_scatter
        )
        print(args.out_surface)
        print(args.out_scatter)
    return 0


if __name__ == "__main__":
    sys.exit(main())
