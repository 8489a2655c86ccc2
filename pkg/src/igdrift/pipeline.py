"""Stage orchestration over persisted artifacts.

Each stage reads upstream artifacts, verifies their embedded metadata
against the active config, computes, and writes its own artifact with the
config embedded verbatim.  Stage outputs are deterministic functions of
the config, so reruns reproduce artifacts byte for byte regardless of
the worker count.
"""

import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import artifacts
from .bounds import efht_upper_closed, efht_upper_numeric
from .config import PipelineConfig
from .evolvers import make_evolver
from .fitting import (
    enforce_lower_bound,
    fit_power_surface,
    lower_bound_violation,
    predict_gain,
    render_expression,
)
from .metrics import igd
from .problems import make_problem, reference_front
from .rng import ROLE_RUN, ROLE_TRIAL, derive_seed, stream
from .sampling import SampleSet, collect, default_budget
from .selection import select
from .validation import (
    check_bound,
    compare_algorithms,
    measure_fht,
    stability_cv,
)

__all__ = [
    "initial_igd_mean",
    "render_report",
    "stage_bound",
    "stage_collect",
    "stage_compare",
    "stage_fit",
    "stage_plotdata",
    "stage_select",
    "stage_stability",
    "stage_validate",
]


def _evolver_for(config):
    return make_evolver(config.evolver, **config.evolver_params())


def _meta(config, stage, **extra):
    meta = {"config": config.to_dict(), "stage": stage}
    meta.update(extra)
    return meta


def _fan_out(worker, arg_list, jobs):
    """Run ``worker`` over ``arg_list``; results keep the input order."""
    if jobs <= 1 or len(arg_list) <= 1:
        return [worker(args) for args in arg_list]
    with ProcessPoolExecutor(max_workers=min(jobs, len(arg_list))) as pool:
        return list(pool.map(worker, arg_list))


# -- collect ---------------------------------------------------------------


def _collect_dim(args):
    config_dict, n = args
    config = PipelineConfig.from_dict(config_dict)
    evolver = _evolver_for(config)
    part = collect(
        config.problem,
        evolver,
        [n],
        config.k,
        config.seed,
        config.collect_epsilon,
        max_generations=config.max_generations,
        front_size=config.front_size,
        runs=config.collect_runs,
    )
    return part.samples


def stage_collect(config, out_path):
    """Run gain collection over all configured dimensions; write samples CSV."""
    parts = _fan_out(
        _collect_dim, [(config.to_dict(), n) for n in config.dims], config.jobs
    )
    samples = tuple(s for part in parts for s in part)
    evolver = _evolver_for(config)
    sample_set = SampleSet(
        samples=samples,
        dims=config.dims,
        metadata={
            "problem": config.problem,
            "evolver": config.evolver,
            "seed": config.seed,
            "k": config.k,
            "pop_size": evolver.pop_size,
            "epsilon_collect": config.collect_epsilon,
            "dims": list(config.dims),
            "max_generations": config.max_generations,
            "front_size": config.front_size,
            "runs": config.collect_runs,
        },
    )
    artifacts.write_samples_csv(
        out_path, sample_set, extra_meta=_meta(config, "collect")
    )
    return sample_set


# -- select / fit ----------------------------------------------------------


def stage_select(config, samples_path, out_path):
    sample_set = artifacts.read_samples_csv(samples_path)
    artifacts.require_meta_match(sample_set.metadata, config)
    selected = select(sample_set, span=config.loess_span)
    meta = dict(selected.metadata)
    meta.update(_meta(config, "select"))
    selected = type(selected)(dimensions=selected.dimensions, metadata=meta)
    artifacts.write_selected_csv(out_path, selected)
    return selected


def _fit_selected(config, selected):
    n, psi, gain = selected.columns()
    params = fit_power_surface(n, psi, gain, box=config.fit_box())
    if config.enforce_lower_bound:
        params = enforce_lower_bound(params, n, psi, gain)
    violation = lower_bound_violation(params, n, psi, gain)
    return params, violation


def stage_fit(config, selected_path, out_path):
    selected = artifacts.read_selected_csv(selected_path)
    artifacts.require_meta_match(selected.metadata, config)
    params, violation = _fit_selected(config, selected)
    payload = artifacts.fit_to_dict(
        params,
        expression=render_expression(params),
        violation_fraction=violation,
    )
    payload["meta"] = _meta(config, "fit")
    artifacts.write_json(out_path, payload)
    return params


# -- bound -----------------------------------------------------------------


def initial_igd_mean(problem, evolver, runs, seed, front_size=None):
    """Mean IGD of freshly initialized populations over the run streams.

    Uses the same per-run streams as validation, so the value equals the
    mean initial psi that measure_fht reports for the same config.
    """
    ref = reference_front(problem, front_size)
    values = []
    for run in range(runs):
        rng = stream(seed, ROLE_RUN, problem.n, run)
        state = evolver.initialize(problem, rng)
        values.append(igd(state.objectives, ref))
    return float(np.mean(values))


def stage_bound(config, fit_path, out_path, stats_path=None):
    """Evaluate bounds for each validation dimension; write bound JSON.

    X0 comes from the stats artifact when given, otherwise from fresh
    initial populations drawn on the validation run streams.
    """
    fit_data = artifacts.read_json(fit_path)
    artifacts.require_meta_match(fit_data.get("meta", {}), config)
    params = artifacts.fit_from_dict(fit_data)
    stats_by_n = {}
    if stats_path is not None:
        stats_data = artifacts.read_json(stats_path)
        artifacts.require_meta_match(stats_data.get("meta", {}), config)
        for entry in stats_data["stats"]:
            stats_by_n[int(entry["n"])] = artifacts.stats_from_dict(entry)
    evolver = _evolver_for(config)
    entries = []
    bounds = []
    for n in config.dims_to_validate:
        problem = make_problem(config.problem, n)
        if n in stats_by_n:
            x0 = stats_by_n[n].initial_igd_mean
        else:
            x0 = initial_igd_mean(
                problem, evolver, config.validation_runs, config.seed,
                front_size=config.front_size,
            )
        bound = efht_upper_closed(
            params, n, x0, config.epsilon, batch_size=evolver.batch_size(problem)
        )
        numeric = efht_upper_numeric(params, n, x0, config.epsilon)
        entry = artifacts.bound_to_dict(bound)
        entry["numeric_value"] = numeric
        entry["expression"] = render_expression(params)
        entries.append(entry)
        bounds.append(bound)
    artifacts.write_json(
        out_path, {"bounds": entries, "meta": _meta(config, "bound")}
    )
    return bounds


# -- validate --------------------------------------------------------------


def _validate_dim(args):
    config_dict, n = args
    config = PipelineConfig.from_dict(config_dict)
    evolver = _evolver_for(config)
    problem = make_problem(config.problem, n)
    stats = measure_fht(
        problem,
        evolver,
        config.epsilon,
        config.validation_runs,
        config.seed,
        budget=config.max_generations,
        front_size=config.front_size,
    )
    return artifacts.stats_to_dict(stats)

def stage_validate(config, out_path):
    dicts = _fan_out(
        _validate_dim,
        [(config.to_dict(), n) for n in config.dims_to_validate],
        config.jobs,
    )
    artifacts.write_json(
        out_path, {"stats": dicts, "meta": _meta(config, "validate")}
    )
    return [artifacts.stats_from_dict(d) for d in dicts]


# -- compare ---------------------------------------------------------------


def _load_bounds(path):
    data = artifacts.read_json(path)
    return {int(e["n"]): artifacts.bound_from_dict(e) for e in data["bounds"]}


def _load_stats(path):
    data = artifacts.read_json(path)
    return {int(e["n"]): artifacts.stats_from_dict(e) for e in data["stats"]}


def stage_compare(bound_paths, stats_paths, out_path, n=None):
    """Rank algorithms by bound vs by measurement on each shared dimension."""
    if len(bound_paths) != len(stats_paths) or len(bound_paths) < 2:
        raise ValueError("need one bound and one stats artifact per algorithm")
    bound_maps = [_load_bounds(p) for p in bound_paths]
    stats_maps = [_load_stats(p) for p in stats_paths]
    shared = set(bound_maps[0])
    for m in bound_maps[1:] + stats_maps:
        shared &= set(m)
    if n is not None:
        if n not in shared:
            raise ValueError(f"dimension {n} not present in all artifacts")
        shared = {n}
    if not shared:
        raise ValueError("no shared dimension across artifacts")
    comparisons = []
    for dim in sorted(shared):
        comparison = compare_algorithms(
            [m[dim] for m in bound_maps], [m[dim] for m in stats_maps]
        )
        comparisons.append(comparison)
    artifacts.write_json(
        out_path,
        {"comparisons": [artifacts.comparison_to_dict(c) for c in comparisons]},
    )
    return comparisons


# -- stability -------------------------------------------------------------


def _stability_trial(args):
    config_dict, trial = args
    config = PipelineConfig.from_dict(config_dict)
    evolver = _evolver_for(config)
    trial_seed = derive_seed(config.seed, ROLE_TRIAL, trial)
    sample_set = collect(
        config.problem,
        evolver,
        config.dims,
        config.k,
        trial_seed,
        config.collect_epsilon,
        max_generations=config.max_generations,
        front_size=config.front_size,
        runs=config.collect_runs,
    )
    selected = select(sample_set, span=config.loess_span)
    params, _ = _fit_selected(config, selected)
    return trial_seed, artifacts.fit_to_dict(params)

def stage_stability(config, out_path):
    """Repeat collect+select+fit with derived seeds; report parameter CVs."""
    results = _fan_out(
        _stability_trial,
        [(config.to_dict(), trial) for trial in range(config.stability_trials)],
        config.jobs,
    )
    seeds = [r[0] for r in results]
    fits = [artifacts.fit_from_dict(r[1]) for r in results]
    report = stability_cv(fits)
    payload = artifacts.stability_to_dict(report)
    payload["trial_seeds"] = seeds
    payload["meta"] = _meta(config, "stability")
    artifacts.write_json(out_path, payload)
    return report


# -- report / plot data ----------------------------------------------------


def _sci(value):
    return f"{value:.2E}"


def render_report(config, fit_path, bound_path, stats_path):
    """Text table: expression | St.D. | Mean | Estimation Result | R².

    Mean/St.D./bound are in objective evaluations; one row per validated
    dimension, with verdict and settings in comment lines.
    """
    fit_data = artifacts.read_json(fit_path)
    params = artifacts.fit_from_dict(fit_data)
    bounds = _load_bounds(bound_path)
    stats = _load_stats(stats_path)
    evolver_note = ""
    if config.evolver == "moead":
        evolver_note = f" moead_t={config.moead_t} aggregation=tchebycheff"
    budget = (
        config.max_generations
        if config.max_generations is not None
        else "500*(n/5)"
    )
    lines = [
        f"# problem={config.problem} evolver={config.evolver}"
        f" epsilon={config.epsilon} units=evaluations",
        f"# k={config.k} pop_size={config.pop_size} span={config.loess_span}"
        f" budget={budget} seed={config.seed}"
        f" front_size={config.front_size or 'default'}{evolver_note}",
        "expression | St.D. | Mean | Estimation Result | R²",
    ]
    for n in sorted(set(bounds) & set(stats)):
        bound = bounds[n]
        st = stats[n]
        verdict = check_bound(bound, st)
        lines.append(
            f"# n={n} X0={bound.x0:.4f} verdict={verdict.verdict}"
            f" hit_rate={st.hit_rate:.3f} complexity={bound.complexity}"
        )
        lines.append(
            f"{fit_data['expression']} | {_sci(st.std_evaluations)}"
            f" | {_sci(st.mean_evaluations)}"
            f" | {_sci(bound.value_evaluations)} | {params.r2:.3f}"
        )
    return "\n".join(lines) + "\n"


def stage_report(config, fit_path, bound_path, stats_path, out_path=None):
    text = render_report(config, fit_path, bound_path, stats_path)
    if out_path is not None:
        artifacts.atomic_write_text(out_path, text)
    return text


def stage_plotdata(fit_path, selected_path, surface_path, scatter_path):
    """Gridded surface plus raw scatter for external plotting tools.

    The grid covers the sampled (psi, n) box at 50×50 resolution; the
    scatter passes the selected points through unchanged.
    """
    fit_data = artifacts.read_json(fit_path)
    params = artifacts.fit_from_dict(fit_data)
    selected = artifacts.read_selected_csv(selected_path)
    n_col, psi_col, gain_col = selected.columns()
    psi_axis = np.linspace(psi_col.min(), psi_col.max(), 50)
    n_axis = np.linspace(n_col.min(), n_col.max(), 50)
    rows = []
    for n_val in n_axis:
        for psi_val in psi_axis:
            rows.append((n_val, psi_val, predict_gain(params, n_val, psi_val)))
    meta = {"fit": artifacts.fit_to_dict(params), "grid": [50, 50]}
    artifacts.write_csv(surface_path, ["n", "psi", "gain"], rows, meta)
    scatter_rows = list(zip(n_col, psi_col, gain_col))
    artifacts.write_csv(
        scatter_path,
        ["n", "psi", "gain"],
        scatter_rows,
        {"count": len(scatter_rows)},
    )
    return surface_path, scatter_path
