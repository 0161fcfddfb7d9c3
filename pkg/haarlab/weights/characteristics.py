"""
Dyadic weight characteristics. Every supremum over D is a maximum over the
finite tree (levels 0..N), so reported values are lower bounds for the
characteristics of the weight on the full dyadic lattice.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Tuple

import numpy

from haarlab.checks import ParameterError, check_exponent, check_positive
from haarlab.dyadic.grid import DyadicGrid, pyramid
from haarlab.dyadic.intervals import IntervalId

logger = logging.getLogger(__name__)


def tree_max(levels: List[numpy.ndarray], first_level: int = 0) -> Tuple[float, IntervalId]:
    """
    Maximum over per-level arrays; ties go to the smallest level, then the
    smallest index.
    """
    best_value, best_interval = -numpy.inf, None
    for offset, values in enumerate(levels):
        index = int(numpy.argmax(values))
        if values[index] > best_value:
            best_value, best_interval = float(values[index]), IntervalId(first_level + offset, index)
    return best_value, best_interval


def ap_levels(w: DyadicGrid, p: float) -> List[numpy.ndarray]:
    check_exponent(p)
    check_positive(w.values)
    dual = pyramid(w.values ** (-1.0 / (p - 1)))
    return [mean * dual_mean ** (p - 1) for mean, dual_mean in zip(w.means, dual)]


def rhp_levels(w: DyadicGrid, p: float) -> List[numpy.ndarray]:
    check_exponent(p)
    check_positive(w.values)
    powered = pyramid(w.values ** p)
    return [powered_mean ** (1.0 / p) / mean for mean, powered_mean in zip(w.means, powered)]


def cs_levels(w: DyadicGrid, s: float) -> List[numpy.ndarray]:
    check_positive(w.values)
    powered = pyramid(w.values ** s)
    return [powered_mean * mean ** (-s) for mean, powered_mean in zip(w.means, powered)]


def ap_characteristic(w: DyadicGrid, p: float) -> Tuple[float, IntervalId]:
    """[w]_{A_p^d} = max_I (m_I w)(m_I w^{-1/(p-1)})^{p-1}."""
    return tree_max(ap_levels(w, p))


def rhp_characteristic(w: DyadicGrid, p: float) -> Tuple[float, IntervalId]:
    """[w]_{RH_p^d} = max_I (m_I w^p)^{1/p} / m_I w."""
    return tree_max(rhp_levels(w, p))


def cs_characteristic(w: DyadicGrid, s: float) -> Tuple[float, IntervalId]:
    """[w]_{C_s^d} = max_I (m_I w^s)(m_I w)^{-s}, any real s."""
    return tree_max(cs_levels(w, s))


def doubling_constant(w: DyadicGrid) -> Tuple[float, IntervalId]:
    """
    D(w) = max over non-root I of w(parent) / w(I). Returns (D(w), argmax) like the
    other characteristics, the argmax being the child I.
    """
    if w.depth < 1:
        raise ParameterError("The doubling constant needs a grid of depth >= 1")
    check_positive(w.values)
    ratios = [2.0 * numpy.repeat(w.means[level - 1], 2) / w.means[level] for level in range(1, w.depth + 1)]
    value, argmax = tree_max(ratios, first_level=1)
    assert value >= 2.0 - 1e-12, "one child always carries at most half of the parent mass"
    return value, argmax


@dataclass
class CharacteristicReport:
    """
    Measured characteristics of one weight, keyed by exponent, with the
    maximizing interval of each supremum in `argmax` ("ap:2", "cs:-1",
    "doubling", ...).
    """
    ap: Dict[float, float] = field(default_factory=dict)
    rhp: Dict[float, float] = field(default_factory=dict)
    cs: Dict[float, float] = field(default_factory=dict)
    doubling: float = 2.0
    argmax: Dict[str, IntervalId] = field(default_factory=dict)

    def to_json(self) -> Dict:
        return {
            "ap": {f"{p:g}": value for p, value in self.ap.items()},
            "rhp": {f"{p:g}": value for p, value in self.rhp.items()},
            "cs": {f"{s:g}": value for s, value in self.cs.items()},
            "doubling": self.doubling,
            "argmax": {key: interval.to_json() for key, interval in self.argmax.items()},
        }


def characteristic_report(w: DyadicGrid,
                          ap_exponents: Iterable[float] = (2.0,),
                          rhp_exponents: Iterable[float] = (2.0,),
                          cs_exponents: Iterable[float] = (2.0, -1.0)) -> CharacteristicReport:
    report = CharacteristicReport()
    for p in ap_exponents:
        report.ap[p], report.argmax[f"ap:{p:g}"] = ap_characteristic(w, p)
    for p in rhp_exponents:
        report.rhp[p], report.argmax[f"rhp:{p:g}"] = rhp_characteristic(w, p)
    for s in cs_exponents:
        report.cs[s], report.argmax[f"cs:{s:g}"] = cs_characteristic(w, s)
    report.doubling, report.argmax["doubling"] = doubling_constant(w)
    logger.debug(f"Characteristics at depth {w.depth} (finite-tree lower bounds): {report.to_json()}")
    return report
