"""
Maximal stopping-time families below a dyadic interval and the lift of a
sequence along them.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

import numpy

from haarlab.checks import ParameterError, check_positive, check_same_depth
from haarlab.carleson.sequences import IndexedSequence
from haarlab.dyadic.grid import DyadicGrid, delta_levels
from haarlab.dyadic.intervals import IntervalId, iter_intervals

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StoppingFamily:
    """
    A partition of `root` into dyadic subintervals of length at least
    2^-m |root|, listed left to right.
    """
    root: IntervalId
    m: int
    threshold: float
    members: Tuple[IntervalId, ...]

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def is_partition(self) -> bool:
        total = sum(member.length for member in self.members)
        inside = all(self.root.contains(member) and member.level <= self.root.level + self.m
                     for member in self.members)
        return inside and numpy.isclose(total, self.root.length, rtol=0, atol=1e-15)

    def to_json(self) -> Dict:
        return {"root": self.root.to_json(), "m": self.m, "threshold": self.threshold,
                "members": [member.to_json() for member in self.members]}


def relative_oscillation(u: DyadicGrid, v: DyadicGrid) -> List[numpy.ndarray]:
    """|Delta_K u|/m_K u + |Delta_K v|/m_K v on levels 0..N-1."""
    return [numpy.abs(du) / u.means[level] + numpy.abs(dv) / v.means[level]
            for level, (du, dv) in enumerate(zip(delta_levels(u), delta_levels(v)))]


def _scan(root: IntervalId, m: int, threshold: float, oscillation: List[numpy.ndarray]) -> StoppingFamily:
    floor = root.level + m
    members = []
    pending = [root]
    while pending:
        interval = pending.pop()
        if interval.level == floor or oscillation[interval.level][interval.index] >= threshold:
            members.append(interval)
        else:
            # plus first so that minus is popped first: members come out left to right
            pending.append(interval.plus)
            pending.append(interval.minus)
    return StoppingFamily(root, m, threshold, tuple(members))


def _check_stopping_arguments(u: DyadicGrid, v: DyadicGrid, m: int, threshold: float) -> int:
    depth = check_same_depth(u, v)
    check_positive(u.values, "u")
    check_positive(v.values, "v")
    if m < 0:
        raise ParameterError(f"The depth floor m must be nonnegative, got {m}")
    if not threshold > 0:
        raise ParameterError(f"The stopping threshold must be positive, got {threshold}")
    return depth


def stopping_family(u: DyadicGrid, v: DyadicGrid, root: IntervalId, m: int, threshold: float) -> StoppingFamily:
    """
    Scans D(root) top-down and stops at K as soon as
    (i) |Delta_K u|/m_K u + |Delta_K v|/m_K v >= threshold, or
    (ii) |K| = 2^-m |root|.
    The stopped intervals are maximal, so they partition `root`.
    """
    depth = _check_stopping_arguments(u, v, m, threshold)
    root.check_in_grid(depth)
    if root.level + m > depth - 1:
        raise ParameterError(f"Stopping below {root} with m = {m} needs intervals of level {root.level + m}, "
                             f"the deepest interval with children has level {depth - 1}")
    return _scan(root, m, threshold, relative_oscillation(u, v))


def stopping_families(u: DyadicGrid, v: DyadicGrid, m: int, threshold: float) -> Dict[IntervalId, StoppingFamily]:
    """A stopping family for every root of level 0..N-1-m."""
    depth = _check_stopping_arguments(u, v, m, threshold)
    if m > depth - 1:
        raise ParameterError(f"No interval of the depth {depth} grid admits stopping with m = {m}")
    oscillation = relative_oscillation(u, v)
    return {root: _scan(root, m, threshold, oscillation) for root in iter_intervals(depth - 1 - m)}


def trivial_family(root: IntervalId, m: int) -> StoppingFamily:
    """D_m(root), the family produced when criterion (i) never fires."""
    return StoppingFamily(root, m, numpy.inf, tuple(root.descendants(m)))


def trivial_families(depth: int, m: int) -> Dict[IntervalId, StoppingFamily]:
    return {root: trivial_family(root, m) for root in iter_intervals(depth - 1 - m)}


def mean_ratio_range(w: DyadicGrid, family: StoppingFamily) -> Tuple[float, float]:
    """min and max of m_K w / m_root w over the members K."""
    base = w.average(family.root)
    ratios = [w.average(member) / base for member in family.members]
    return min(ratios), max(ratios)


def lift_sequence(seq: IndexedSequence, families: Mapping[IntervalId, StoppingFamily],
                  depth: Optional[int] = None) -> IndexedSequence:
    """
    lifted(L) = sum over the members K of family(L) of seq(K). Roots without a
    family get 0, members below level N-1 contribute 0. The result is indexed
    by the same tree as `seq` unless `depth` says otherwise.
    """
    depth = seq.depth if depth is None else depth
    levels = [numpy.zeros(2 ** level) for level in range(depth)]
    for root, family in families.items():
        if root.level >= depth:
            continue
        levels[root.level][root.index] = sum(seq[member] for member in family.members)
    lifted = IndexedSequence.from_levels(levels)
    logger.debug(f"Lifted a sequence of total {seq.total():.6g} to total {lifted.total():.6g} "
                 f"along {len(families)} families")
    return lifted
