"""
Numerical instances of the Carleson-type lemmas. Every check evaluates both
sides on the finite tree and reports them as a `LemmaReport`; explicit
constants (4, 36/min{...}, m+1) are asserted exactly, everything else is
reported as a ratio.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy

from haarlab.checks import ParameterError, check_exponent, check_positive, check_same_depth
from haarlab.carleson.intensity import carleson_intensity, subtree_sums
from haarlab.carleson.sequences import (IndexedSequence, combine_sequences, product_sequence, sequence_mu,
                                        sequence_nu)
from haarlab.carleson.stopping import StoppingFamily, lift_sequence
from haarlab.dyadic.grid import DyadicGrid, min_pyramid, pyramid
from haarlab.dyadic.intervals import IntervalId
from haarlab.weights.characteristics import ap_characteristic, tree_max

logger = logging.getLogger(__name__)

# relative slack granted to every hard inequality
RELATIVE_TOLERANCE = 1e-12

LITTLE_LEMMA_CONSTANT = 4.0


@dataclass(frozen=True)
class LemmaReport:
    name: str
    lhs: float
    rhs: float
    ratio: float
    passed: bool
    argmax: Optional[IntervalId] = None

    def to_json(self) -> Dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "ratio": self.ratio, "pass": self.passed,
                "argmax": None if self.argmax is None else self.argmax.to_json()}


def _ratio(lhs: float, rhs: float) -> float:
    if rhs > 0:
        return lhs / rhs
    return 0.0 if lhs <= 0 else numpy.inf


def _report(name: str, lhs: float, rhs: float, argmax: Optional[IntervalId] = None,
            ratio: Optional[float] = None, limit: float = 1.0) -> LemmaReport:
    ratio = _ratio(lhs, rhs) if ratio is None else ratio
    passed = bool(ratio <= limit * (1 + RELATIVE_TOLERANCE))
    if not passed:
        logger.warning(f"{name} failed: lhs {lhs:.6g} against rhs {rhs:.6g}")
    return LemmaReport(name, float(lhs), float(rhs), float(ratio), passed, argmax)


def divided_by_dual_average(seq: IndexedSequence, v: DyadicGrid, p: float) -> IndexedSequence:
    """seq(I) / (m_I v^{-1/(p-1)})^{p-1}."""
    dual = pyramid(v.values ** (-1.0 / (p - 1)))
    return IndexedSequence.from_levels([values / dual[level] ** (p - 1) for level, values in enumerate(seq.levels)])


def little_lemma_check(seq: IndexedSequence, v: DyadicGrid, p: float) -> LemmaReport:
    """
    If seq is a Carleson sequence with intensity Q, then
    seq(I) / (m_I v^{-1/(p-1)})^{p-1} is v-Carleson with intensity at most 4Q.
    """
    check_exponent(p)
    check_positive(v.values)
    check_same_depth(seq, v)
    intensity, _ = carleson_intensity(seq)
    weighted, argmax = carleson_intensity(divided_by_dual_average(seq, v, p), v)
    return _report("little_lemma", weighted, LITTLE_LEMMA_CONSTANT * intensity, argmax)


def alphabeta_constant(alpha: float, beta: float) -> float:
    """C_{alpha,beta} = 36 / min{alpha - 2 alpha^2, beta - 2 beta^2}."""
    for name, value in (("alpha", alpha), ("beta", beta)):
        if not 0 < value < 0.5:
            raise ParameterError(f"{name} must lie in (0, 1/2), got {value}")
    return 36.0 / min(alpha - 2 * alpha ** 2, beta - 2 * beta ** 2)


def alphabeta_lemma_check(u: DyadicGrid, v: DyadicGrid, alpha: float, beta: float) -> LemmaReport:
    """
    max over J of
    (1/|J|) sum_{I in D(J)} (|Delta_I u|^2/(m_I u)^2 + |Delta_I v|^2/(m_I v)^2) |I| (m_I u)^alpha (m_I v)^beta
    divided by C_{alpha,beta} (m_J u)^alpha (m_J v)^beta; the lemma says it is at most 1.
    """
    constant = alphabeta_constant(alpha, beta)
    check_same_depth(u, v)
    check_positive(u.values, "u")
    check_positive(v.values, "v")
    sums = subtree_sums(product_sequence(u, v, alpha, beta))
    lhs = [total * 2.0 ** level for level, total in enumerate(sums)]
    rhs = [constant * u.means[level] ** alpha * v.means[level] ** beta for level in range(len(sums))]
    ratio, argmax = tree_max([left / right for left, right in zip(lhs, rhs)])
    return _report("alphabeta_lemma", lhs[argmax.level][argmax.index], rhs[argmax.level][argmax.index],
                   argmax, ratio)


def mu_nu_intensity_check(w: DyadicGrid, q: float, alpha: float) -> List[LemmaReport]:
    """
    Lebesgue intensities of mu^{q,alpha} and nu^q against C [w]^alpha_{A_q} and
    C [w]_{A_q}, with C = C_{alpha,alpha(q-1)}. Needs alpha admissible under the
    "proof" rule, so that alpha(q-1) < 1/2 as well.
    """
    mu = sequence_mu(w, q, alpha, "proof")
    constant = alphabeta_constant(alpha, alpha * (q - 1))
    aq, _ = ap_characteristic(w, q)
    mu_intensity, mu_argmax = carleson_intensity(mu)
    nu_intensity, nu_argmax = carleson_intensity(sequence_nu(w, q))
    return [_report("mu_intensity", mu_intensity, constant * aq ** alpha, mu_argmax),
            _report("nu_intensity", nu_intensity, constant * aq, nu_argmax)]


def _infimum_sum(seq: IndexedSequence, F: DyadicGrid) -> float:
    if numpy.any(F.values < 0):
        raise ParameterError(f"F must be nonnegative, minimum is {float(numpy.min(F.values))}")
    minima = min_pyramid(F.values)
    return float(sum(numpy.dot(values, minima[level]) for level, values in enumerate(seq.levels)))


def weighted_carleson_check(seq: IndexedSequence, v: DyadicGrid, F: DyadicGrid) -> LemmaReport:
    """sum_L seq(L) inf_L F <= B integral(F v) with B the v-intensity of seq."""
    check_same_depth(seq, v, F)
    lhs = _infimum_sum(seq, F)
    intensity, argmax = carleson_intensity(seq, v)
    rhs = intensity * (F * v).integral()
    return _report("weighted_carleson", lhs, rhs, argmax)


def folk_lemma_check(seq: IndexedSequence, v: DyadicGrid, p: float, F: DyadicGrid) -> LemmaReport:
    """
    sum_J seq(J) / (m_J v^{-1/(p-1)})^{p-1} inf_J F <= 4 B integral(F v) with B the
    Lebesgue intensity of seq. `ratio` is lhs / (B integral(F v)), bounded by 4.
    """
    check_exponent(p)
    check_positive(v.values)
    check_same_depth(seq, v, F)
    lhs = _infimum_sum(divided_by_dual_average(seq, v, p), F)
    intensity, argmax = carleson_intensity(seq)
    base = intensity * (F * v).integral()
    return _report("folk_lemma", lhs, LITTLE_LEMMA_CONSTANT * base, argmax, _ratio(lhs, base),
                   limit=LITTLE_LEMMA_CONSTANT)


def lift_lemma_check(seq: IndexedSequence, w: DyadicGrid, families: Dict[IntervalId, StoppingFamily],
                     m: int) -> LemmaReport:
    """The lift of a w-Carleson sequence with intensity A has w-intensity at most (m+1)A."""
    check_same_depth(seq, w)
    intensity, _ = carleson_intensity(seq, w)
    lifted, argmax = carleson_intensity(lift_sequence(seq, families), w)
    return _report("lift_lemma", lifted, (m + 1) * intensity, argmax)


def proposition_checks(a: IndexedSequence, b: IndexedSequence, v: Optional[DyadicGrid] = None,
                       c: float = 1.0, d: float = 1.0) -> List[LemmaReport]:
    """Measured intensities of the three combinations against their predicted bounds."""
    first, _ = carleson_intensity(a, v)
    second, _ = carleson_intensity(b, v)
    bounds = {"linear": c * first + d * second,
              "geometric_mean": numpy.sqrt(first * second),
              "square_sum": 2 * c ** 2 * first + 2 * d ** 2 * second}
    reports = []
    for mode, bound in bounds.items():
        measured, argmax = carleson_intensity(combine_sequences(a, b, mode, c, d), v)
        reports.append(_report(f"combine_{mode}", measured, bound, argmax))
    return reports
