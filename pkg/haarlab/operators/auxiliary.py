"""
The three sums that split a root L of the multiplier,

    P^m_L phi     = sum_{I in D_m(L)} |<phi, h_I>| sqrt(|I|/|L|)
    S^{v,m}_L phi = sum_{J in D_m(L)} |<phi, h_J^v>_v| sqrt(m_J v) sqrt(|J|/|L|)
    R^{v,m}_L phi = sum_{J in D_m(L)} (|Delta_J v| / m_J v) m_J(|phi| v) |J| / sqrt|L|

and their estimates. `per_root` versions return one value per root of a
level, which is what the bilinear-form split consumes.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy

from haarlab.checks import ParameterError, check_positive, check_same_depth
from haarlab.carleson.sequences import IndexedSequence
from haarlab.dyadic.grid import DyadicGrid, delta_levels, pyramid
from haarlab.dyadic.haar import analysis, haar_amplitudes
from haarlab.dyadic.intervals import IntervalId
from haarlab.operators.maximal import dyadic_maximal
from haarlab.weights.relations import RelationCheck, compare

logger = logging.getLogger(__name__)


def _grouped(values: numpy.ndarray, level: int, generations: int) -> numpy.ndarray:
    """Entries of level `level + generations` grouped by their level-`level` ancestor."""
    return values.reshape((2 ** level, 2 ** generations))


def p_per_root(coefficients: List[numpy.ndarray], level: int, m: int) -> numpy.ndarray:
    return _grouped(numpy.abs(coefficients[level + m]), level, m).sum(axis=-1) * 2.0 ** (-m / 2)


def s_per_root(weighted_coefficients: List[numpy.ndarray], v: DyadicGrid, level: int, m: int) -> numpy.ndarray:
    terms = numpy.abs(weighted_coefficients[level + m]) * numpy.sqrt(v.means[level + m])
    return _grouped(terms, level, m).sum(axis=-1) * 2.0 ** (-m / 2)


def r_per_root(phi: DyadicGrid, v: DyadicGrid, level: int, m: int) -> numpy.ndarray:
    finer = level + m
    mass = pyramid(numpy.abs(phi.values) * v.values)[finer]
    terms = numpy.abs(delta_levels(v)[finer]) / v.means[finer] * mass * 2.0 ** -finer
    return _grouped(terms, level, m).sum(axis=-1) * 2.0 ** (level / 2)


def _check_root(depth: int, root: IntervalId, m: int) -> None:
    root.check_in_grid(depth)
    if m < 0 or root.level + m > depth - 1:
        raise ParameterError(f"D_{m}({root}) needs Haar functions of level {root.level + m}, "
                             f"the grid resolves levels up to {depth - 1}")


def aux_quantities(phi: DyadicGrid, v: DyadicGrid, root: IntervalId, m: int) -> Tuple[float, float, float]:
    """(P^m_L phi, S^{v,m}_L phi, R^{v,m}_L phi) for L = `root`."""
    depth = check_same_depth(phi, v)
    check_positive(v.values)
    _check_root(depth, root, m)
    plain = analysis(phi.values, haar_amplitudes(depth))
    weighted = analysis(phi.values, haar_amplitudes(depth, v), v.values)
    index = root.index
    return (float(p_per_root(plain, root.level, m)[index]),
            float(s_per_root(weighted, v, root.level, m)[index]),
            float(r_per_root(phi, v, root.level, m)[index]))


@dataclass(frozen=True)
class AuxiliaryReport:
    root: IntervalId
    P: float
    S: float
    R: float
    checks: Tuple[RelationCheck, ...]
    restpar_ratio: float

    @property
    def passed(self) -> bool:
        return all(check.holds for check in self.checks)

    def to_json(self) -> Dict:
        return {"root": self.root.to_json(), "P": self.P, "S": self.S, "R": self.R,
                "checks": [check.to_json() for check in self.checks], "restpar_ratio": self.restpar_ratio,
                "pass": self.passed}


def maximal_infimum(phi: DyadicGrid, v: DyadicGrid, root: IntervalId, p: float) -> float:
    """inf over `root` of (M_v(|phi|^p))^{1/p}."""
    maximal = dyadic_maximal(abs(phi).power(p), v)
    return float(numpy.min(maximal.values[root.cells(v.depth)])) ** (1.0 / p)


def aux_estimates_check(phi: DyadicGrid, v: DyadicGrid, root: IntervalId, m: int, q: float,
                        mu_lifted: IndexedSequence, n: int = 0) -> AuxiliaryReport:
    """
    Hard checks (Cauchy-Schwarz, constant 1):
        (P^m_L phi)^2 <= sum_{I in D_m(L)} <phi, h_I>^2
        S^{v,m}_L phi <= (sum_{J in D_m(L)} <phi, h_J^v>_v^2)^{1/2} (m_L v)^{1/2}
    and the measured ratio of R^{v,m}_L phi to
        C (m_L v^{-1/(q-1)})^{-(q-1)/2} (m_L v)^{1/2} inf_L (M_v(|phi|^p))^{1/p} sqrt(mu^m_L)
    with C = m + n + 2 and p = 2 - 1/C.
    """
    P, S, R = aux_quantities(phi, v, root, m)
    depth = v.depth
    plain = analysis(phi.values, haar_amplitudes(depth))[root.level + m]
    weighted = analysis(phi.values, haar_amplitudes(depth, v), v.values)[root.level + m]
    block = root.descendants(m)
    start, stop = block[0].index, block[-1].index + 1
    checks = (compare("(P^m_L phi)^2 <= sum <phi,h_I>^2", P ** 2, float(numpy.sum(plain[start:stop] ** 2))),
              compare("S <= (sum <phi,h_J^v>_v^2)^(1/2) (m_L v)^(1/2)", S,
                      float(numpy.sqrt(numpy.sum(weighted[start:stop] ** 2) * v.average(root)))))

    complexity = m + n + 2
    p = 2.0 - 1.0 / complexity
    mu = mu_lifted[root]
    dual_mean = float(pyramid(v.values ** (-1.0 / (q - 1)))[root.level][root.index])
    denominator = (complexity * dual_mean ** (-(q - 1) / 2) * v.average(root) ** 0.5
                   * maximal_infimum(phi, v, root, p) * numpy.sqrt(mu))
    if R > 0 and mu == 0:
        raise AssertionError(f"R^{{v,{m}}}_L > 0 at {root} while the lifted mu vanishes there")
    ratio = R / denominator if R > 0 else 0.0
    report = AuxiliaryReport(root, P, S, R, checks, float(ratio))
    if not report.passed:
        logger.warning(f"Auxiliary estimates failed at {root}: {[check for check in checks if not check.holds]}")
    return report


def root_sums(phi: DyadicGrid, v: DyadicGrid, level: int, m: int,
              weighted: Optional[List[numpy.ndarray]] = None) -> Tuple[numpy.ndarray, numpy.ndarray]:
    """S^{v,m}_L phi and R^{v,m}_L phi for every root L of `level`."""
    if weighted is None:
        weighted = analysis(phi.values, haar_amplitudes(v.depth, v), v.values)
    return s_per_root(weighted, v, level, m), r_per_root(phi, v, level, m)
