"""
Unweighted and weighted Haar systems on the finite dyadic tree.

Weighted Haar functions use the unit L^2(v) normalization,

    h_I^v = sqrt(v(I-) / (v(I) v(I+))) chi_{I+} - sqrt(v(I+) / (v(I) v(I-))) chi_{I-},

which is positive on the right half and reduces to (chi_{I+} - chi_{I-}) / sqrt|I|
for Lebesgue measure.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

import numpy

from haarlab.checks import StructuralError, check_positive, check_same_depth
from haarlab.dyadic.grid import DyadicGrid, pyramid
from haarlab.dyadic.intervals import IntervalId

logger = logging.getLogger(__name__)


def haar_amplitudes(depth: int, v: Optional[DyadicGrid] = None) -> List[Tuple[numpy.ndarray, numpy.ndarray]]:
    """
    For every level k < N, the absolute values (a_plus, a_minus) that h_I^v takes
    on I+ and I- for the 2^k intervals of that level.
    """
    amplitudes = []
    for level in range(depth):
        length = 2.0 ** -level
        if v is None:
            a_plus = numpy.full(2 ** level, length ** -0.5)
            a_minus = a_plus
        else:
            mass_minus = v.means[level + 1][0::2] * length / 2
            mass_plus = v.means[level + 1][1::2] * length / 2
            mass = mass_minus + mass_plus
            a_plus = numpy.sqrt(mass_minus / (mass * mass_plus))
            a_minus = numpy.sqrt(mass_plus / (mass * mass_minus))
        amplitudes.append((a_plus, a_minus))
    return amplitudes


def analysis(values: numpy.ndarray, amplitudes, density: Optional[numpy.ndarray] = None) -> List[numpy.ndarray]:
    """
    <f, h_I^v>_v for every interval, level by level, along the last axis of
    `values`. `density` is the cell values of v (None for Lebesgue).
    """
    integrand = values if density is None else values * density
    means = pyramid(integrand)
    coefficients = []
    for level, (a_plus, a_minus) in enumerate(amplitudes):
        half = 2.0 ** -(level + 1)
        finer = means[level + 1]
        coefficients.append(half * (a_plus * finer[..., 1::2] - a_minus * finer[..., 0::2]))
    return coefficients


def synthesis(coefficients: List[numpy.ndarray], amplitudes, mean) -> numpy.ndarray:
    """
    mean + sum_I c_I h_I^v as cell values; inverse of `analysis` on the
    v-orthogonal complement of constants.
    """
    depth = len(amplitudes)
    size = 2 ** depth
    shape = coefficients[0].shape[:-1] + (size,)
    values = numpy.zeros(shape) + numpy.asarray(mean)[..., None]
    for level, ((a_plus, a_minus), coefficient) in enumerate(zip(amplitudes, coefficients)):
        halves = numpy.empty(coefficient.shape[:-1] + (2 * coefficient.shape[-1],))
        halves[..., 0::2] = -coefficient * a_minus
        halves[..., 1::2] = coefficient * a_plus
        values = values + numpy.repeat(halves, 2 ** (depth - level - 1), axis=-1)
    return values


@dataclass(frozen=True, eq=False)
class HaarCoefficientTable:
    """
    Haar coefficients of a grid function for levels 0..N-1, stored per level.

    # Parameters

    levels : `Tuple[numpy.ndarray, ...]`
        `levels[k][j]` is the coefficient of IntervalId(k, j).
    mean : `float`
        m_{[0,1)}^v f, the coefficient of the constant term.
    measure : `DyadicGrid`, optional
        The weight v of the inner product; None means Lebesgue measure.
    """
    levels: Tuple[numpy.ndarray, ...]
    mean: float
    measure: Optional[DyadicGrid] = None

    @property
    def depth(self) -> int:
        return len(self.levels)

    def __getitem__(self, interval: IntervalId) -> float:
        if interval.level >= self.depth:
            raise StructuralError(f"No Haar coefficient for the leaf interval {interval}")
        return float(self.levels[interval.level][interval.index])

    def items(self) -> Iterator[Tuple[IntervalId, float]]:
        for level, coefficients in enumerate(self.levels):
            for index, value in enumerate(coefficients):
                yield IntervalId(level, index), float(value)

    def energy(self) -> float:
        return float(sum(numpy.sum(coefficients ** 2) for coefficients in self.levels))

    def to_json(self) -> Dict:
        return {"mean": self.mean,
                "measure": None if self.measure is None else self.measure.to_json(),
                "entries": [{"level": interval.level, "index": interval.index, "value": value}
                            for interval, value in self.items()]}


def haar_function(interval: IntervalId, v: Optional[DyadicGrid] = None, depth: Optional[int] = None) -> DyadicGrid:
    """
    h_I^v as cell values (h_I when `v` is None, in which case `depth` is required).
    """
    if v is not None:
        check_positive(v.values)
        depth = v.depth
    elif depth is None:
        raise StructuralError("The Lebesgue Haar function needs a grid depth")
    interval.check_has_children(depth)
    a_plus, a_minus = haar_amplitudes(interval.level + 1, v)[interval.level]
    values = numpy.zeros(2 ** depth)
    values[interval.minus.cells(depth)] = -a_minus[interval.index]
    values[interval.plus.cells(depth)] = a_plus[interval.index]
    return DyadicGrid(values)


def haar_coefficients(f: DyadicGrid, v: Optional[DyadicGrid] = None) -> HaarCoefficientTable:
    """
    <f, h_I^v>_v for all I with level <= N-1 (plain <f, h_I> when `v` is None).
    """
    if v is not None:
        check_same_depth(f, v)
        check_positive(v.values)
        mean = (f * v).integral() / v.integral()
        density = v.values
    else:
        mean = f.integral()
        density = None
    coefficients = analysis(f.values, haar_amplitudes(f.depth, v), density)
    return HaarCoefficientTable(tuple(coefficients), float(mean), v)


def reconstruct(table: HaarCoefficientTable) -> DyadicGrid:
    """f = m^v f + sum_I <f, h_I^v>_v h_I^v."""
    amplitudes = haar_amplitudes(table.depth, table.measure)
    return DyadicGrid(synthesis(list(table.levels), amplitudes, table.mean))


def haar_alpha_beta(v: DyadicGrid, interval: IntervalId) -> Tuple[float, float]:
    """
    The unique (alpha, beta) with h_I = alpha h_I^v + beta chi_I / sqrt|I|.

    Solving the two-point system on I+ and I- gives
    alpha = sqrt(m_{I+}v m_{I-}v / m_I v) and beta = Delta_I v / (2 m_I v).
    """
    check_positive(v.values)
    interval.check_has_children(v.depth)
    finer = v.means[interval.level + 1]
    mean_minus = finer[2 * interval.index]
    mean_plus = finer[2 * interval.index + 1]
    mean = v.means[interval.level][interval.index]
    alpha = numpy.sqrt(mean_plus * mean_minus / mean)
    beta = (mean_plus - mean_minus) / (2 * mean)
    return float(alpha), float(beta)
