"""Single structured configuration for the whole estimation pipeline.

Every knob that the method itself does not pin down (probe count, budgets,
smoother span, fit constraint box, seeds, ...) lives here with a default,
so a run is reproducible from its config alone.  Only the problem and the
evolver have no defaults.  The serialized config is embedded verbatim in
every artifact's metadata.
"""

import dataclasses
import json
import os
from dataclasses import dataclass

from .evolvers import EVOLVER_IDS
from .fitting import FitBox
from .problems import PROBLEM_IDS

__all__ = ["PipelineConfig", "OUT_DIR_ENV"]

OUT_DIR_ENV = "IGDRIFT_OUT"


@dataclass(frozen=True)
class PipelineConfig:
    problem: str
    evolver: str
    dims: tuple = (5, 10, 15, 20, 25, 30)
    k: int = 100
    pop_size: int = 100
    pc: float = 1.0
    eta_c: float = 20.0
    pm: float = None  # None -> 1/n
    eta_m: float = 20.0
    moead_t: int = 20
    epsilon: float = 0.05
    epsilon_collect: float = 0.0  # 0 -> run out the generation budget
    collect_runs: int = 1
    max_generations: int = None  # None -> 500*(n/5)
    validation_runs: int = 100
    validate_dims: tuple = None  # None -> dims
    front_size: int = None  # None -> per-problem default
    loess_span: float = 0.3
    b_max: float = 4.0
    d_max: float = 4.0
    a_inv_min: float = 1e-3
    a_inv_max: float = 30.0
    enforce_lower_bound: bool = False
    stability_trials: int = 10
    seed: int = 1
    jobs: int = 1
    out_dir: str = None  # None -> $IGDRIFT_OUT or cwd

    def __post_init__(self):
        if self.problem not in PROBLEM_IDS:
            raise ValueError(f"unknown problem {self.problem!r}")
        if self.evolver not in EVOLVER_IDS:
            raise ValueError(f"unknown evolver {self.evolver!r}")
        object.__setattr__(self, "dims", tuple(int(n) for n in self.dims))
        if not self.dims:
            raise ValueError("dims must be non-empty")
        if self.validate_dims is not None:
            object.__setattr__(
                self, "validate_dims", tuple(int(n) for n in self.validate_dims)
            )
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.epsilon_collect < 0:
            raise ValueError("epsilon_collect must be non-negative")
        if self.collect_runs < 1:
            raise ValueError("collect_runs must be at least 1")
        if self.validation_runs < 1:
            raise ValueError("validation_runs must be at least 1")
        if not 0.0 < self.loess_span <= 1.0:
            raise ValueError("loess_span must be in (0, 1]")
        if self.stability_trials < 2:
            raise ValueError("stability_trials must be at least 2")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")

    # -- resolved views ----------------------------------------------------

    @property
    def collect_epsilon(self):
        # By default collection runs out its generation budget instead of
        # stopping at the bound target, so the sample cloud reaches the
        # gain floor.  A surface fit only down to epsilon extrapolates
        # into exactly the region the hitting-time integral weights most.
        return self.epsilon_collect

    @property
    def dims_to_validate(self):
        return self.dims if self.validate_dims is None else self.validate_dims

    def fit_box(self):
        return FitBox(
            b_max=self.b_max,
            d_max=self.d_max,
            a_inv_min=self.a_inv_min,
            a_inv_max=self.a_inv_max,
        )

    def evolver_params(self):
        """Constructor kwargs for the configured evolver."""
        params = {
            "pop_size": self.pop_size,
            "pc": self.pc,
            "eta_c": self.eta_c,
            "pm": self.pm,
            "eta_m": self.eta_m,
        }
        if self.evolver == "moead":
            params["neighborhood_size"] = self.moead_t
        return params

    def output_dir(self):
        if self.out_dir is not None:
            return self.out_dir
        return os.environ.get(OUT_DIR_ENV, ".")

    # -- serialization -----------------------------------------------------

    def to_dict(self):
        out = dataclasses.asdict(self)
        out["dims"] = list(self.dims)
        if self.validate_dims is not None:
            out["validate_dims"] = list(self.validate_dims)
        return out

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_file(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))
