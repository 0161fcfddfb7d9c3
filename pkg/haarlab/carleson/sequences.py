import json
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Tuple, Union

import numpy

from haarlab.checks import ParameterError, StructuralError, check_exponent, check_positive
from haarlab.dyadic.grid import DyadicGrid, delta_levels
from haarlab.dyadic.intervals import IntervalId

logger = logging.getLogger(__name__)

ALPHA_RULES = ("proof", "stated")
COMBINE_MODES = ("linear", "geometric_mean", "square_sum")


@dataclass(frozen=True, eq=False)
class IndexedSequence:
    """
    Nonnegative numbers indexed by the intervals of levels 0..N-1 of a depth-N
    grid; `levels[k][j]` belongs to IntervalId(k, j).
    """
    levels: Tuple[numpy.ndarray, ...]

    def __post_init__(self):
        for level, values in enumerate(self.levels):
            if values.shape != (2 ** level,):
                raise StructuralError(f"Level {level} of a sequence needs {2 ** level} entries, got {values.shape}")
            if numpy.any(values < 0):
                raise ParameterError(f"Sequence entries must be nonnegative (level {level})")
            values.setflags(write=False)

    @classmethod
    def from_levels(cls, levels: List[numpy.ndarray]) -> "IndexedSequence":
        return cls(tuple(numpy.array(values, dtype=numpy.float64) for values in levels))

    @classmethod
    def zeros(cls, depth: int) -> "IndexedSequence":
        return cls.from_levels([numpy.zeros(2 ** level) for level in range(depth)])

    @classmethod
    def from_function(cls, depth: int, function: Callable[[IntervalId], float]) -> "IndexedSequence":
        return cls.from_levels([numpy.array([function(IntervalId(level, index)) for index in range(2 ** level)])
                                for level in range(depth)])

    @property
    def depth(self) -> int:
        return len(self.levels)

    def __getitem__(self, interval: IntervalId) -> float:
        """Entries outside levels 0..N-1 are zero."""
        if interval.level >= self.depth:
            return 0.0
        return float(self.levels[interval.level][interval.index])

    def items(self) -> Iterator[Tuple[IntervalId, float]]:
        for level, values in enumerate(self.levels):
            for index, value in enumerate(values):
                yield IntervalId(level, index), float(value)

    def scaled(self, factor: Union[float, List[numpy.ndarray]]) -> "IndexedSequence":
        if isinstance(factor, list):
            return IndexedSequence.from_levels([values * scale for values, scale in zip(self.levels, factor)])
        return IndexedSequence.from_levels([values * factor for values in self.levels])

    def total(self) -> float:
        return float(sum(numpy.sum(values) for values in self.levels))

    def check_compatible(self, other: "IndexedSequence") -> None:
        if self.depth != other.depth:
            raise StructuralError(f"Sequences are indexed by different trees ({self.depth} vs {other.depth} levels)")

    def to_json(self) -> List[Dict]:
        return [{"level": interval.level, "index": interval.index, "value": value} for interval, value in self.items()]

    @classmethod
    def from_json(cls, data: Union[str, List[Dict]], depth: int) -> "IndexedSequence":
        if isinstance(data, str):
            data = json.loads(data)
        levels = [numpy.zeros(2 ** level) for level in range(depth)]
        for entry in data:
            interval = IntervalId(int(entry["level"]), int(entry["index"]))
            if interval.level >= depth:
                raise StructuralError(f"Entry {interval} lies below level {depth - 1}")
            levels[interval.level][interval.index] = float(entry["value"])
        return cls.from_levels(levels)


def check_alpha(alpha: float, q: float, rule: str = "proof") -> None:
    """
    "proof" requires 0 < alpha < 1/2 and alpha (q-1) < 1/2, which is what the
    reduction to the alpha-beta estimate with beta = alpha (q-1) uses;
    "stated" accepts 0 < alpha < max{1/2, 1/(2(q-1))}.
    """
    if rule == "proof":
        upper = min(0.5, 0.5 / (q - 1))
    elif rule == "stated":
        upper = max(0.5, 0.5 / (q - 1))
    else:
        raise ParameterError(f"Unknown alpha rule {rule}, use one of {ALPHA_RULES}")
    if not 0 < alpha < upper:
        raise ParameterError(f"alpha must lie in (0, {upper:g}) for q = {q:g} ({rule} rule), got {alpha}")


def oscillation_levels(u: DyadicGrid, v: DyadicGrid) -> List[numpy.ndarray]:
    """|Delta_I u|^2/(m_I u)^2 + |Delta_I v|^2/(m_I v)^2 on levels 0..N-1."""
    return [(du / u.means[level]) ** 2 + (dv / v.means[level]) ** 2
            for level, (du, dv) in enumerate(zip(delta_levels(u), delta_levels(v)))]


def product_sequence(u: DyadicGrid, v: DyadicGrid, alpha: float, beta: float) -> IndexedSequence:
    """(m_I u)^alpha (m_I v)^beta |I| (oscillation bracket of u and v)."""
    brackets = oscillation_levels(u, v)
    return IndexedSequence.from_levels([u.means[level] ** alpha * v.means[level] ** beta * 2.0 ** -level * bracket
                                        for level, bracket in enumerate(brackets)])


def dual_weight(w: DyadicGrid, q: float) -> DyadicGrid:
    """w^{-1/(q-1)}."""
    return w.power(-1.0 / (q - 1))


def sequence_mu(w: DyadicGrid, q: float, alpha: float, rule: str = "proof") -> IndexedSequence:
    """mu^{q,alpha}_I, the alpha-beta sequence of u = w, v = w^{-1/(q-1)}, beta = alpha (q-1)."""
    check_exponent(q, "q")
    check_positive(w.values)
    check_alpha(alpha, q, rule)
    return product_sequence(w, dual_weight(w, q), alpha, alpha * (q - 1))


def sequence_nu(w: DyadicGrid, q: float) -> IndexedSequence:
    """nu^q_I, same as mu with the exponents of the A_q ratio itself."""
    check_exponent(q, "q")
    check_positive(w.values)
    return product_sequence(w, dual_weight(w, q), 1.0, q - 1)


def sequence_eta(w: DyadicGrid, t: float, q: float) -> IndexedSequence:
    """eta_I: nu^q of the weight w^{2t}, whose dual is w^{-2t/(q-1)}."""
    check_positive(w.values)
    return sequence_nu(w.power(2 * t), q)


def combine_sequences(a: IndexedSequence, b: IndexedSequence, mode: str = "linear",
                      c: float = 1.0, d: float = 1.0) -> IndexedSequence:
    """
    Entrywise c a + d b ("linear"), sqrt(a b) ("geometric_mean") or
    (c sqrt(a) + d sqrt(b))^2 ("square_sum"). For v-Carleson inputs with
    intensities A and B the results have intensities at most c A + d B,
    sqrt(A B) and 2c^2 A + 2d^2 B.
    """
    a.check_compatible(b)
    if c < 0 or d < 0:
        raise ParameterError(f"Combination coefficients must be nonnegative, got c={c}, d={d}")
    if mode == "linear":
        levels = [c * x + d * y for x, y in zip(a.levels, b.levels)]
    elif mode == "geometric_mean":
        levels = [numpy.sqrt(x) * numpy.sqrt(y) for x, y in zip(a.levels, b.levels)]
    elif mode == "square_sum":
        levels = [(c * numpy.sqrt(x) + d * numpy.sqrt(y)) ** 2 for x, y in zip(a.levels, b.levels)]
    else:
        raise ParameterError(f"Unknown combination mode {mode}, use one of {COMBINE_MODES}")
    return IndexedSequence.from_levels(levels)


def random_sequence(depth: int, rng: numpy.random.Generator, sparsity: float = 0.0) -> IndexedSequence:
    """
    lambda_I = |I| U_I with U_I uniform on [0,1), zeroed with probability
    `sparsity`; a Carleson sequence with intensity at most N.
    """
    levels = []
    for level in range(depth):
        values = rng.random(2 ** level) * 2.0 ** -level
        if sparsity > 0:
            values[rng.random(2 ** level) < sparsity] = 0.0
        levels.append(values)
    return IndexedSequence.from_levels(levels)
