import json
import logging
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Union

import numpy

from haarlab.checks import StructuralError, check_positive, check_same_depth
from haarlab.dyadic.intervals import IntervalId

logger = logging.getLogger(__name__)

# lower clamp for generated weights, keeps every negative power finite
WEIGHT_FLOOR = 1e-12


def pyramid(values: numpy.ndarray) -> List[numpy.ndarray]:
    """
    Averages over every dyadic interval, computed bottom-up by pairwise
    (tree) summation along the last axis. Entry `k` holds the 2^k averages
    of level `k`; the last entry is the input itself.

    Works on stacked grids too, e.g. an identity matrix whose rows are the
    cell basis.
    """
    levels = [numpy.asarray(values, dtype=numpy.float64)]
    while levels[-1].shape[-1] > 1:
        finer = levels[-1]
        levels.append(0.5 * (finer[..., 0::2] + finer[..., 1::2]))
    levels.reverse()
    return levels


def min_pyramid(values: numpy.ndarray) -> List[numpy.ndarray]:
    """Same tree as `pyramid`, with the minimum over each interval."""
    levels = [numpy.asarray(values, dtype=numpy.float64)]
    while levels[-1].shape[-1] > 1:
        finer = levels[-1]
        levels.append(numpy.minimum(finer[..., 0::2], finer[..., 1::2]))
    levels.reverse()
    return levels


def depth_of(size: int) -> int:
    depth = size.bit_length() - 1
    if size < 2 or 2 ** depth != size:
        raise StructuralError(f"A grid needs 2^N cells with N >= 1, got {size}")
    return depth


class DyadicGrid:
    """
    Cell values of a function on [0,1) at resolution 2^-N. The grid is
    immutable; derived grids are new objects.

    # Parameters

    values : `Sequence[float]`, required
        The 2^N cell values, left to right.
    """

    def __init__(self, values: Union[Sequence[float], numpy.ndarray]):
        values = numpy.array(values, dtype=numpy.float64)
        if values.ndim != 1:
            raise StructuralError(f"Grid values must be one-dimensional, got shape {values.shape}")
        self.depth = depth_of(values.shape[0])
        values.setflags(write=False)
        self.values = values

    @classmethod
    def constant(cls, depth: int, value: float = 1.0) -> "DyadicGrid":
        return cls(numpy.full(2 ** depth, float(value)))

    @classmethod
    def indicator(cls, depth: int, interval: IntervalId) -> "DyadicGrid":
        values = numpy.zeros(2 ** depth)
        values[interval.cells(depth)] = 1.0
        return cls(values)

    @property
    def size(self) -> int:
        return self.values.shape[0]

    @property
    def cell_width(self) -> float:
        return 2.0 ** -self.depth

    @cached_property
    def means(self) -> List[numpy.ndarray]:
        return pyramid(self.values)

    def average(self, interval: IntervalId) -> float:
        interval.check_in_grid(self.depth)
        return float(self.means[interval.level][interval.index])

    def measure(self, interval: IntervalId) -> float:
        """w(I), the integral over I."""
        return self.average(interval) * interval.length

    def integral(self) -> float:
        return float(self.means[0][0])

    def is_weight(self) -> bool:
        return bool(numpy.all(self.values > 0))

    def power(self, exponent: float) -> "DyadicGrid":
        return DyadicGrid(self.values ** exponent)

    def __mul__(self, other: Union["DyadicGrid", float]) -> "DyadicGrid":
        if isinstance(other, DyadicGrid):
            check_same_depth(self, other)
            return DyadicGrid(self.values * other.values)
        return DyadicGrid(self.values * float(other))

    __rmul__ = __mul__

    def __abs__(self) -> "DyadicGrid":
        return DyadicGrid(numpy.abs(self.values))

    def norm(self, exponent: float = 2.0, weight: Optional["DyadicGrid"] = None) -> float:
        """||f||_{L^r(v)}, Lebesgue when `weight` is None."""
        density = numpy.abs(self.values) ** exponent
        if weight is not None:
            check_same_depth(self, weight)
            density = density * weight.values
        return float(pyramid(density)[0][0] ** (1.0 / exponent))

    def refine(self) -> "DyadicGrid":
        """Midpoint-constant extension to depth N+1."""
        return DyadicGrid(numpy.repeat(self.values, 2))

    def to_json(self) -> Dict:
        return {"depth": self.depth, "values": [float(value) for value in self.values]}

    @classmethod
    def from_json(cls, data: Union[str, Dict]) -> "DyadicGrid":
        if isinstance(data, str):
            data = json.loads(data)
        grid = cls(data["values"])
        if grid.depth != int(data["depth"]):
            raise StructuralError(f"Declared depth {data['depth']} does not match {grid.size} values")
        return grid

    def __repr__(self):
        return f"DyadicGrid(depth={self.depth}, values={numpy.array2string(self.values, threshold=8)})"


def average(f: DyadicGrid, interval: IntervalId) -> float:
    return f.average(interval)


def weighted_average(f: DyadicGrid, v: DyadicGrid, interval: IntervalId) -> float:
    """m_I^v f = (integral of f v over I) / v(I)."""
    check_same_depth(f, v)
    check_positive(v.values)
    return (f * v).average(interval) / v.average(interval)


def delta(v: DyadicGrid, interval: IntervalId) -> float:
    """Delta_I v = m_{I+} v - m_{I-} v."""
    interval.check_has_children(v.depth)
    finer = v.means[interval.level + 1]
    return float(finer[2 * interval.index + 1] - finer[2 * interval.index])


def delta_levels(v: DyadicGrid) -> List[numpy.ndarray]:
    """Delta_I v for every interval of levels 0..N-1, as per-level arrays."""
    return [v.means[k + 1][1::2] - v.means[k + 1][0::2] for k in range(v.depth)]
