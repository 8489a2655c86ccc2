"""Artifact persistence: CSV/JSON files with embedded metadata.

Every file starts from plain text written atomically (temp file plus
rename), with metadata carried as a leading `# meta:` JSON comment line
in CSVs or a `meta` key in JSONs.  Serialization is deterministic —
sorted keys, shortest round-trip float formatting — so identical inputs
produce byte-identical artifacts.
"""

import json
import os
import tempfile

import numpy as np

from .bounds import BoundEstimate
from .fitting import FitBox, FitParams
from .sampling import GainSample, SampleSet
from .selection import DimensionSelection, SelectedSamples
from .validation import Comparison, RunStats, StabilityReport, Verdict

__all__ = [
    "MetadataMismatchError",
    "atomic_write_text",
    "bound_from_dict",
    "bound_to_dict",
    "comparison_to_dict",
    "fit_from_dict",
    "fit_to_dict",
    "read_csv",
    "read_json",
    "read_samples_csv",
    "read_selected_csv",
    "require_meta_match",
    "stability_to_dict",
    "stats_from_dict",
    "stats_to_dict",
    "verdict_to_dict",
    "write_csv",
    "write_json",
    "write_samples_csv",
    "write_selected_csv",
]


class MetadataMismatchError(ValueError):
    """An input artifact's metadata contradicts the active config."""

    def __init__(self, field, expected, actual):
        self.field = field
        super().__init__(
            f"metadata mismatch on {field!r}: config has {expected!r}, "
            f"input artifact has {actual!r}"
        )


def require_meta_match(meta, config, fields=("problem", "evolver")):
    """Check chained artifact metadata against the active config."""
    upstream = meta.get("config", meta)
    cfg = config.to_dict()
    for field in fields:
        if field in upstream and upstream[field] != cfg[field]:
            raise MetadataMismatchError(field, cfg[field], upstream[field])


def _py(value):
    """Recursively cast numpy scalars/arrays to plain Python for JSON."""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return [_py(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {k: _py(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_py(v) for v in value]
    return value


def _cell(value):
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def atomic_write_text(path, text):
    """Write text to ``path`` via a temp file in the same directory."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path, header, rows, meta):
    lines = ["# meta: " + json.dumps(_py(meta), sort_keys=True)]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_cell(v) for v in row))
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_csv(path):
    """Returns (meta dict, header list, rows as lists of strings)."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    meta = {}
    body = []
    for ln in lines:
        if ln.startswith("# meta:"):
            meta = json.loads(ln[len("# meta:") :])
        elif ln and not ln.startswith("#"):
            body.append(ln)
    if not body:
        raise ValueError(f"{path}: no CSV content")
    header = body[0].split(",")
    rows = [ln.split(",") for ln in body[1:]]
    return meta, header, rows


def write_json(path, obj):
    text = json.dumps(_py(obj), sort_keys=True, indent=2) + "\n"
    atomic_write_text(path, text)


def read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


# -- gain samples ----------------------------------------------------------


def write_samples_csv(path, sample_set, extra_meta=None):
    meta = dict(sample_set.metadata)
    if extra_meta:
        meta.update(extra_meta)
    rows = [
        (s.n, s.t, s.psi, s.avg_gain, s.probe_count) for s in sample_set.samples
    ]
    write_csv(path, ["n", "t", "psi", "avg_gain", "probe_count"], rows, meta)


def read_samples_csv(path):
    meta, header, rows = read_csv(path)
    if header != ["n", "t", "psi", "avg_gain", "probe_count"]:
        raise ValueError(f"{path}: unexpected header {header}")
    samples = tuple(
        GainSample(
            n=int(r[0]),
            t=int(r[1]),
            psi=float(r[2]),
            avg_gain=float(r[3]),
            probe_count=int(r[4]),
        )
        for r in rows
    )
    dims = tuple(meta.get("dims") or sorted({s.n for s in samples}))
    return SampleSet(samples=samples, dims=dims, metadata=meta)


# -- selected samples ------------------------------------------------------


def write_selected_csv(path, selected, extra_meta=None):
    meta = dict(selected.metadata)
    if extra_meta:
        meta.update(extra_meta)
    rows = []
    for dim in selected.dimensions:
        for psi, gain in zip(dim.psi, dim.gain):
            rows.append((dim.n, psi, gain))
    write_csv(path, ["n", "psi", "gain"], rows, meta)


def read_selected_csv(path):
    meta, header, rows = read_csv(path)
    if header != ["n", "psi", "gain"]:
        raise ValueError(f"{path}: unexpected header {header}")
    per_dim = meta.get("per_dimension", {})
    grouped = {}
    order = []
    for r in rows:
        n = int(r[0])
        if n not in grouped:
            grouped[n] = []
            order.append(n)
        grouped[n].append((float(r[1]), float(r[2])))
    dimensions = []
    for n in order:
        pairs = grouped[n]
        info = per_dim.get(str(n), {})
        psi = np.array([p for p, _ in pairs])
        gain = np.array([g for _, g in pairs])
        dimensions.append(
            DimensionSelection(
                n=n,
                psi=psi,
                gain=gain,
                m_target=int(info.get("m", 2 * n)),
                lam=float(info.get("lambda", 1.0)),
                psi_min=float(info.get("psi_min", psi.min())),
                psi_max=float(info.get("psi_max", psi.max())),
                span=float(info.get("span", meta.get("span", 0.3))),
                shortfall=bool(info.get("shortfall", False)),
                smoothed=bool(info.get("smoothed", True)),
                dropped_nonpositive=int(info.get("dropped_nonpositive", 0)),
            )
        )
    return SelectedSamples(dimensions=tuple(dimensions), metadata=meta)


# -- fits, bounds, stats ---------------------------------------------------


def fit_to_dict(params, expression=None, violation_fraction=None):
    out = {
        "A": params.coeff_a,
        "b": params.b,
        "d": params.d,
        "r2": params.r2,
        "kappa": params.kappa,
        "d_fixed": params.d_fixed,
        "constraints": params.box.to_dict(),
    }
    if expression is not None:
        out["expression"] = expression
    if violation_fraction is not None:
        out["violation_fraction"] = violation_fraction
    return out


def fit_from_dict(data):
    box = FitBox(**data["constraints"]) if "constraints" in data else FitBox()
    return FitParams(
        coeff_a=float(data["A"]),
        b=float(data["b"]),
        d=float(data["d"]),
        r2=float(data["r2"]),
        kappa=int(data["kappa"]),
        d_fixed=bool(data.get("d_fixed", False)),
        box=box,
    )


def bound_to_dict(bound):
    return {
        "fit": fit_to_dict(bound.params),
        "n": bound.n,
        "x0": bound.x0,
        "epsilon": bound.epsilon,
        "value": bound.value,
        "value_evaluations": bound.value_evaluations,
        "case": bound.case,
        "complexity": bound.complexity,
        "batch_size": bound.batch_size,
    }


def bound_from_dict(data):
    return BoundEstimate(
        params=fit_from_dict(data["fit"]),
        n=int(data["n"]),
        x0=float(data["x0"]),
        epsilon=float(data["epsilon"]),
        value=float(data["value"]),
        value_evaluations=float(data["value_evaluations"]),
        case=data["case"],
        complexity=data["complexity"],
        batch_size=int(data["batch_size"]),
    )


def stats_to_dict(stats):
    return {
        "problem": stats.problem,
        "algorithm": stats.algorithm,
        "n": stats.n,
        "epsilon": stats.epsilon,
        "runs": stats.runs,
        "budget": stats.budget,
        "batch_size": stats.batch_size,
        "hitting_generations": list(stats.hitting_generations),
        "hit_rate": stats.hit_rate,
        "mean": stats.mean,
        "std": stats.std,
        "initial_igd_mean": stats.initial_igd_mean,
    }


def stats_from_dict(data):
    return RunStats(
        problem=data["problem"],
        algorithm=data["algorithm"],
        n=int(data["n"]),
        epsilon=float(data["epsilon"]),
        runs=int(data["runs"]),
        budget=int(data["budget"]),
        batch_size=int(data["batch_size"]),
        hitting_generations=tuple(int(h) for h in data["hitting_generations"]),
        hit_rate=float(data["hit_rate"]),
        mean=float(data["mean"]),
        std=float(data["std"]),
        initial_igd_mean=float(data["initial_igd_mean"]),
    )


def verdict_to_dict(v):
    return {
        "verdict": v.verdict,
        "problem": v.problem,
        "algorithm": v.algorithm,
        "n": v.n,
        "epsilon": v.epsilon,
        "bound_value": v.bound_value,
        "bound_value_evaluations": v.bound_value_evaluations,
        "empirical_mean": v.empirical_mean,
        "empirical_mean_evaluations": v.empirical_mean_evaluations,
        "empirical_std": v.empirical_std,
        "r2": v.r2,
        "hit_rate": v.hit_rate,
    }


def comparison_to_dict(c):
    return {
        "problem": c.problem,
        "n": c.n,
        "epsilon": c.epsilon,
        "algorithms": list(c.algorithms),
        "bound_values": list(c.bound_values),
        "empirical_means": list(c.empirical_means),
        "bound_ranking": list(c.bound_ranking),
        "empirical_ranking": list(c.empirical_ranking),
        "consistent": c.consistent,
    }


def stability_to_dict(report):
    return {
        "cv_coefficient": report.cv_coefficient,
        "cv_exponent": report.cv_exponent,
        "trials": report.trials,
        "params": [fit_to_dict(p) for p in report.params],
    }
