import logging
from dataclasses import dataclass, field, replace
from typing import Dict, Optional, Tuple

import numpy

from haarlab.checks import ConfigurationError, ParameterError
from haarlab.dyadic.grid import WEIGHT_FLOOR, DyadicGrid

logger = logging.getLogger(__name__)

FAMILY_KINDS = ("constant", "two_value", "power", "log_random_walk", "custom")


@dataclass(frozen=True)
class WeightFamily:
    """
    Recipe for a test weight on the depth-N grid.

    # Parameters

    kind : `str`
        One of "constant", "two_value", "power", "log_random_walk", "custom".
    depth : `int`
        Grid depth N.
    value : `float`, optional (default=`1.0`)
        Right-half value c for "two_value" (left half is 1), level for "constant".
    exponent : `float`, optional (default=`0.0`)
        a for "power", the weight x^a averaged exactly over each cell.
    step : `float`, optional (default=`0.5`)
        Log increment for "log_random_walk".
    seed : `int`, optional (default=`0`)
        Seed for "log_random_walk".
    values : `Tuple[float, ...]`, optional
        Cell values for "custom".
    """
    kind: str
    depth: int
    value: float = 1.0
    exponent: float = 0.0
    step: float = 0.5
    seed: int = 0
    values: Optional[Tuple[float, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ConfigurationError(f"Unknown weight family {self.kind}, use one of {FAMILY_KINDS}")
        if self.depth < 1:
            raise ParameterError(f"Weight depth must be >= 1, got {self.depth}")

    @property
    def weight_id(self) -> str:
        if self.kind == "constant":
            return f"constant(c={self.value:g})"
        if self.kind == "two_value":
            return f"two_value(c={self.value:g})"
        if self.kind == "power":
            return f"power(a={self.exponent:g})"
        if self.kind == "log_random_walk":
            return f"log_random_walk(step={self.step:g},seed={self.seed})"
        return "custom"

    def with_seed(self, seed: int) -> "WeightFamily":
        return replace(self, seed=seed)

    @classmethod
    def from_dict(cls, data: Dict, depth: int = None) -> "WeightFamily":
        data = dict(data)
        if depth is not None:
            data.setdefault("depth", depth)
        if data.get("values") is not None:
            data["values"] = tuple(float(value) for value in data["values"])
        try:
            return cls(**data)
        except TypeError as error:
            raise ConfigurationError(f"Bad weight family specification {data}: {error}")


def power_cell_averages(depth: int, exponent: float) -> numpy.ndarray:
    """m_I(x^a) on every depth-N cell [l, r): (r^{a+1} - l^{a+1}) / ((a+1)(r-l))."""
    if exponent <= -1:
        raise ParameterError(f"x^a is not integrable near 0 for a = {exponent} <= -1")
    edges = numpy.linspace(0.0, 1.0, 2 ** depth + 1)
    antiderivative = edges ** (exponent + 1) / (exponent + 1)
    return numpy.diff(antiderivative) / numpy.diff(edges)


def log_random_walk(depth: int, step: float, seed: int) -> numpy.ndarray:
    """
    exp of a dyadic martingale: at each interval one child gets +step and the
    other -step in the log, with a random sign per interval.
    """
    rng = numpy.random.default_rng(seed)
    log_values = numpy.zeros(2 ** depth)
    for level in range(depth):
        signs = rng.choice((-1.0, 1.0), size=2 ** level)
        increments = numpy.empty(2 ** (level + 1))
        increments[0::2] = signs * step
        increments[1::2] = -signs * step
        log_values += numpy.repeat(increments, 2 ** (depth - level - 1))
    return numpy.exp(log_values)


def generate_weight(family: WeightFamily) -> DyadicGrid:
    """
    Deterministic for a fixed family; every value is clamped below at 1e-12.
    """
    size = 2 ** family.depth
    if family.kind == "constant":
        values = numpy.full(size, float(family.value))
    elif family.kind == "two_value":
        values = numpy.ones(size)
        values[size // 2:] = family.value
    elif family.kind == "power":
        values = power_cell_averages(family.depth, family.exponent)
    elif family.kind == "log_random_walk":
        values = log_random_walk(family.depth, family.step, family.seed)
    else:
        if family.values is None or len(family.values) != size:
            raise ConfigurationError(f"A custom family of depth {family.depth} needs {size} values")
        values = numpy.asarray(family.values, dtype=numpy.float64)
    if numpy.any(values < 0):
        raise ParameterError(f"Weight family {family.weight_id} produced negative values")
    return DyadicGrid(numpy.maximum(values, WEIGHT_FLOOR))
