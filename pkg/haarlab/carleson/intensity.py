import logging
from typing import List, Optional, Tuple

import numpy

from haarlab.checks import StructuralError, check_positive
from haarlab.carleson.sequences import IndexedSequence
from haarlab.dyadic.grid import DyadicGrid
from haarlab.dyadic.intervals import IntervalId
from haarlab.weights.characteristics import tree_max

logger = logging.getLogger(__name__)


def subtree_sums(seq: IndexedSequence) -> List[numpy.ndarray]:
    """sum_{I in D(J)} seq(I) for every J of levels 0..N-1, bottom-up."""
    sums = [None] * seq.depth
    below = None
    for level in reversed(range(seq.depth)):
        current = numpy.array(seq.levels[level])
        if below is not None:
            current += below[0::2] + below[1::2]
        sums[level] = current
        below = current
    return sums


def intensity_levels(seq: IndexedSequence, v: Optional[DyadicGrid] = None) -> List[numpy.ndarray]:
    """(1/|J|) sum_{I in D(J)} seq(I) / m_J v for every J, level by level."""
    if v is not None:
        if v.depth != seq.depth:
            raise StructuralError(f"Sequence of depth {seq.depth} measured against a weight of depth {v.depth}")
        check_positive(v.values)
    ratios = []
    for level, sums in enumerate(subtree_sums(seq)):
        ratio = sums * 2.0 ** level
        if v is not None:
            ratio = ratio / v.means[level]
        ratios.append(ratio)
    return ratios


def carleson_intensity(seq: IndexedSequence, v: Optional[DyadicGrid] = None) -> Tuple[float, IntervalId]:
    """
    The smallest B with (1/|J|) sum_{I in D(J)} seq(I) <= B m_J v for every J of
    the finite tree (m_J v = 1 for Lebesgue measure), and the J attaining it.
    """
    return tree_max(intensity_levels(seq, v))
