import logging
from dataclasses import asdict, dataclass
from typing import Optional

import numpy

from haarlab.checks import ParameterError, check_positive, check_same_depth
from haarlab.dyadic.grid import DyadicGrid, pyramid

logger = logging.getLogger(__name__)


def dyadic_maximal(f: DyadicGrid, v: Optional[DyadicGrid] = None) -> DyadicGrid:
    """
    (M_v f)(x) = max of m_I^v |f| over the dyadic ancestors I of the cell of x,
    levels 0..N; Lebesgue averages when `v` is None.
    """
    magnitude = numpy.abs(f.values)
    if v is None:
        averages = pyramid(magnitude)
    else:
        check_same_depth(f, v)
        check_positive(v.values)
        averages = [weighted / mass for weighted, mass in zip(pyramid(magnitude * v.values), v.means)]
    running = averages[0]
    for finer in averages[1:]:
        running = numpy.maximum(numpy.repeat(running, 2), finer)
    return DyadicGrid(running)


@dataclass(frozen=True)
class MaximalBound:
    r: float
    ratio: float
    dual_exponent: float
    passed: bool

    def to_json(self):
        return asdict(self)


def maximal_bound_check(f: DyadicGrid, v: Optional[DyadicGrid], r: float) -> MaximalBound:
    """
    ||M_v f||_{L^r(v)} / ||f||_{L^r(v)} against r' = r/(r-1), the bound Doob's
    inequality gives for the dyadic maximal function.
    """
    if not r > 1:
        raise ParameterError(f"r must be > 1, got {r}")
    denominator = f.norm(r, v)
    ratio = dyadic_maximal(f, v).norm(r, v) / denominator if denominator > 0 else 0.0
    dual = r / (r - 1)
    return MaximalBound(r, float(ratio), dual, bool(ratio <= dual * (1 + 1e-12)))
