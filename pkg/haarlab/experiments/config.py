import itertools
import logging
from dataclasses import asdict, dataclass, field, fields
from typing import Dict, List, Optional, Tuple

from haarlab.checks import ConfigurationError
from haarlab.weights.families import WeightFamily

logger = logging.getLogger(__name__)

MAX_DEPTH = 12
EXPERIMENTS = ("bound_sweep", "sharpness", "complexity_scan", "lemma_suite", "characteristics")
RANDOM_KINDS = ("log_random_walk",)
NORM_METHODS = ("auto", "full_svd", "power_iteration")
FAULTS = ("little_lemma",)
REFINEMENT_TOLERANCE = 0.05


@dataclass(frozen=True)
class ExperimentConfig:
    """
    The merged configuration of one run. `family` holds the WeightFamily
    fields shared by every weight; `sweep` maps one WeightFamily field to the
    values it runs through, and random families are drawn `trials` times with
    seeds seed, seed+1, ...
    """
    experiment: str
    depth: int = 8
    seed: int = 0
    trials: int = 1
    jobs: int = 1
    family: Dict = field(default_factory=lambda: {"kind": "log_random_walk", "step": 0.5})
    sweep: Dict = field(default_factory=dict)
    t_list: Tuple[float, ...] = (0.5,)
    mn_list: Tuple[Tuple[int, int], ...] = ((0, 0),)
    q_list: Tuple[float, ...] = (2.0,)
    p_list: Tuple[float, ...] = (1.5, 2.0, 3.0)
    alpha_list: Tuple[float, ...] = (0.1, 0.25, 0.4)
    s_list: Tuple[float, ...] = (0.5, 2.0, -1.0)
    alpha_rule: str = "proof"
    norm_method: str = "auto"
    svd_max_dim: int = 1024
    power_tol: float = 1e-10
    power_max_iters: int = 100000
    max_matrix_dim: int = 2 ** 13
    samples: int = 10000
    calculus_samples: int = 50
    refinement_check: bool = False
    refinement_tolerance: float = REFINEMENT_TOLERANCE
    inject_fault: Optional[str] = None
    out: Optional[str] = None

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigurationError(f"Unknown experiment {self.experiment}, use one of {EXPERIMENTS}")
        if not 1 <= self.depth <= MAX_DEPTH:
            raise ConfigurationError(f"depth must lie in [1, {MAX_DEPTH}], got {self.depth}")
        for name in ("t_list", "mn_list", "q_list", "p_list", "alpha_list", "s_list"):
            if len(getattr(self, name)) == 0:
                raise ConfigurationError(f"{name} must not be empty")
        for m, n in self.mn_list:
            if m < 0 or n < 0:
                raise ConfigurationError(f"Complexity (m, n) = ({m}, {n}) must be nonnegative")
            if self.depth < max(m, n) + 1:
                raise ConfigurationError(f"depth {self.depth} is too small for complexity ({m}, {n})")
        if any(q <= 1 for q in self.q_list) or any(p <= 1 for p in self.p_list):
            raise ConfigurationError("Every exponent in q_list and p_list must be > 1")
        if self.trials < 1 or self.jobs < 1 or self.samples < 1:
            raise ConfigurationError("trials, jobs and samples must be positive")
        if self.norm_method not in NORM_METHODS:
            raise ConfigurationError(f"Unknown norm method {self.norm_method}, use one of {NORM_METHODS}")
        if self.inject_fault is not None and self.inject_fault not in FAULTS:
            raise ConfigurationError(f"Unknown fault {self.inject_fault}, use one of {FAULTS}")
        if not self.refinement_tolerance > 0:
            raise ConfigurationError(f"refinement_tolerance must be positive, got {self.refinement_tolerance}")
        if len(self.sweep) > 1:
            raise ConfigurationError(f"Sweep over one family parameter at a time, got {sorted(self.sweep)}")
        for name, values in self.sweep.items():
            if name not in {item.name for item in fields(WeightFamily)} or name in ("kind", "depth"):
                raise ConfigurationError(f"Cannot sweep the weight family field {name}")
            if len(values) == 0:
                raise ConfigurationError(f"The sweep over {name} is empty")
        # fails early on a bad family
        self.families()

    @classmethod
    def from_dict(cls, data: Dict) -> "ExperimentConfig":
        data = dict(data)
        known = {item.name for item in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigurationError(f"Unknown configuration keys {unknown}")
        if "experiment" not in data:
            raise ConfigurationError("The configuration does not name an experiment")
        for name in ("t_list", "q_list", "p_list", "alpha_list", "s_list"):
            if name in data:
                data[name] = tuple(float(value) for value in data[name])
        if "mn_list" in data:
            try:
                data["mn_list"] = tuple((int(m), int(n)) for m, n in data["mn_list"])
            except (TypeError, ValueError):
                raise ConfigurationError(f"mn_list must hold [m, n] pairs, got {data['mn_list']}")
        return cls(**data)

    def to_dict(self) -> Dict:
        data = asdict(self)
        data["mn_list"] = [list(pair) for pair in self.mn_list]
        for name in ("t_list", "q_list", "p_list", "alpha_list", "s_list"):
            data[name] = list(data[name])
        return data

    def families(self) -> List[WeightFamily]:
        """Every weight of the run, sweep values outermost, then trials."""
        base = dict(self.family)
        if "seed" in base:
            raise ConfigurationError("The family seed is derived from the run seed, do not set it")
        sweep = list(self.sweep.items())
        points = [{}] if not sweep else [{sweep[0][0]: value} for value in sweep[0][1]]
        random = base.get("kind") in RANDOM_KINDS
        seeds = [self.seed + trial for trial in range(self.trials)] if random else [self.seed]
        return [WeightFamily.from_dict(dict(base, seed=seed, **point), depth=self.depth)
                for point, seed in itertools.product(points, seeds)]
