"""
Measured quantities on both sides of the multiplier norm bound

    ||T f||_2 <= C_q (m+n+2)^3 [w]^{1/2}_{C_{2t}} [w^{2t}]^{1/2}_{A_q} ||f||_2

and its refinements by the sign and size of t.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy

from haarlab.checks import check_exponent, check_positive, check_same_depth
from haarlab.carleson.sequences import sequence_eta
from haarlab.carleson.stopping import lift_sequence, stopping_families
from haarlab.dyadic.grid import DyadicGrid, min_pyramid, pyramid
from haarlab.dyadic.haar import analysis, haar_amplitudes
from haarlab.operators.auxiliary import p_per_root, root_sums
from haarlab.operators.maximal import dyadic_maximal
from haarlab.operators.multiplier import MAX_MATRIX_DIM, MultiplierSpec, apply_multiplier, assemble_matrix
from haarlab.operators.norm import NormEstimate, operator_norm
from haarlab.weights.characteristics import ap_characteristic, cs_characteristic
from haarlab.weights.relations import RelationCheck, compare

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoundRatio:
    norm: float
    c2t: float
    aq: float
    rhs_core: float
    ratio: float
    estimate: NormEstimate

    def to_row(self, spec: MultiplierSpec, q: float, weight_id: str) -> Dict:
        return {"t": spec.t, "m": spec.m, "n": spec.n, "q": q, "depth": spec.depth, "weight_id": weight_id,
                "norm": self.norm, "c2t": self.c2t, "aq": self.aq, "rhs_core": self.rhs_core, "ratio": self.ratio}


def bound_ratio(spec: MultiplierSpec, q: float, method: str = "auto", max_dim: int = MAX_MATRIX_DIM,
                **norm_options) -> BoundRatio:
    """
    norm = ||T|| on the finite section, rhs_core = (m+n+2)^3 [w]^{1/2}_{C_{2t}} [w^{2t}]^{1/2}_{A_q}
    with both characteristics measured on the same tree.
    """
    check_exponent(q, "q")
    estimate = operator_norm(assemble_matrix(spec, max_dim), method, **norm_options)
    c2t, _ = cs_characteristic(spec.w, 2 * spec.t)
    aq, _ = ap_characteristic(spec.w.power(2 * spec.t), q)
    rhs_core = spec.complexity_constant ** 3 * numpy.sqrt(c2t) * numpy.sqrt(aq)
    ratio = estimate.value / rhs_core
    logger.debug(f"t={spec.t} m={spec.m} n={spec.n} q={q}: norm {estimate.value:.6g}, ratio {ratio:.6g}")
    return BoundRatio(estimate.value, c2t, aq, float(rhs_core), float(ratio), estimate)


@dataclass(frozen=True)
class TheoremCaseReport:
    case: str
    q: float
    checks: Tuple[RelationCheck, ...]

    @property
    def passed(self) -> bool:
        return all(check.holds for check in self.checks)

    def to_json(self) -> Dict:
        return {"case": self.case, "q": self.q, "checks": [check.to_json() for check in self.checks],
                "pass": self.passed}


def theorem_case_report(w: DyadicGrid, t: float, p: float) -> TheoremCaseReport:
    """
    Which characteristic controls the bound for this t, and the measured
    relations that reduce it to [w]_{A_p}:

    0 <= 2t < 1:  [w^{2t}]^{1/2}_{A_p} <= [w]^t_{A_p}
    2t >= 1:      with q = 2t(p-1)+1, [w]^{1/2}_{C_{2t}} [w^{2t}]^{1/2}_{A_q} <= [w]_{C_{2t}} [w]^t_{A_p}
    t < 0:        with q = 1-2t, [w^{2t}]_{A_q} = [w]_{C_{2t}} = [w]^{-2t}_{A_{1-1/(2t)}}
    """
    check_exponent(p)
    check_positive(w.values)
    s = 2 * t
    c2t, _ = cs_characteristic(w, s)
    if 0 <= s < 1:
        ap_ws, _ = ap_characteristic(w.power(s), p)
        ap_w, _ = ap_characteristic(w, p)
        checks = (compare("[w^2t]_Ap^(1/2) <= [w]_Ap^t", numpy.sqrt(ap_ws), ap_w ** t),)
        return TheoremCaseReport("small_power", p, checks)
    if s >= 1:
        q = s * (p - 1) + 1
        aq_ws, _ = ap_characteristic(w.power(s), q)
        ap_w, _ = ap_characteristic(w, p)
        checks = (compare("[w]_C2t^(1/2) [w^2t]_Aq^(1/2) <= [w]_C2t [w]_Ap^t",
                          numpy.sqrt(c2t * aq_ws), c2t * ap_w ** t),)
        return TheoremCaseReport("large_power", q, checks)
    q = 1 - s
    aq_ws, _ = ap_characteristic(w.power(s), q)
    dual, _ = ap_characteristic(w, 1 - 1 / s)
    checks = (compare("[w^2t]_A(1-2t) = [w]_C2t", aq_ws, c2t, "=="),
              compare("[w]_C2t = [w]_A(1-1/(2t))^(-2t)", c2t, dual ** -s, "=="))
    return TheoremCaseReport("negative_power", q, checks)


@dataclass(frozen=True)
class SigmaSplit:
    pairing: float
    sigma1: float
    sigma2: float
    sigma1_bound: float
    sigma2_reference: float
    checks: Tuple[RelationCheck, ...]

    @property
    def passed(self) -> bool:
        return all(check.holds for check in self.checks)

    @property
    def sigma2_ratio(self) -> float:
        return self.sigma2 / self.sigma2_reference if self.sigma2_reference > 0 else 0.0

    def to_json(self) -> Dict:
        return {"pairing": self.pairing, "sigma1": self.sigma1, "sigma2": self.sigma2,
                "sigma1_bound": self.sigma1_bound, "sigma2_reference": self.sigma2_reference,
                "sigma2_ratio": self.sigma2_ratio, "checks": [check.to_json() for check in self.checks],
                "pass": self.passed}


def sigma_split(f: DyadicGrid, g: DyadicGrid, spec: MultiplierSpec, q: float = 2.0) -> SigmaSplit:
    """
    Splits <T f, g> through h_J = alpha_J h_J^v + beta_J chi_J/sqrt|J| with
    v = w^{2t} and phi = g w^{-t}:

        sigma1 = sum_L (m_L w)^{-t} P^n_L f S^{v,m}_L phi
        sigma2 = sum_L (m_L w)^{-t} P^n_L f R^{v,m}_L phi

    so that |<T f, g>| <= sigma1 + sigma2 and
    sigma1 <= [w]^{1/2}_{C_{2t}} ||f||_2 ||g||_2. sigma2 is compared with
    C [w]^{1/2}_{C_{2t}} ||f||_2 (sum_L eta^m_L / (m_L w^{-2t/(q-1)})^{q-1} inf_L F)^{1/2},
    F = (M_v(|phi|^p))^{2/p}, eta^m the lift of eta along the stopping families.
    """
    check_same_depth(f, g, spec.w)
    check_exponent(q, "q")
    w, t, depth = spec.w, spec.t, spec.depth
    v = w.power(2 * t)
    phi = g * w.power(-t)
    plain = analysis(f.values, haar_amplitudes(depth))
    weighted = analysis(phi.values, haar_amplitudes(depth, v), v.values)

    sigma1 = sigma2 = 0.0
    for level in spec.root_levels:
        factor = w.means[level] ** -t
        p_values = p_per_root(plain, level, spec.n)
        s_values, r_values = root_sums(phi, v, level, spec.m, weighted)
        sigma1 += float(numpy.sum(factor * p_values * s_values))
        sigma2 += float(numpy.sum(factor * p_values * r_values))

    pairing = (apply_multiplier(f, spec) * g).integral()
    c2t, _ = cs_characteristic(w, 2 * t)
    sigma1_bound = float(numpy.sqrt(c2t) * f.norm() * g.norm())
    checks = (compare("|<Tf,g>| <= sigma1 + sigma2", abs(pairing), sigma1 + sigma2),
              compare("sigma1 <= [w]_C2t^(1/2) ||f|| ||g||", sigma1, sigma1_bound))

    complexity = spec.complexity_constant
    p = spec.proof_exponent
    dual = v.power(-1.0 / (q - 1))
    families = stopping_families(v, dual, spec.m, 1.0 / complexity)
    eta = lift_sequence(sequence_eta(w, t, q), families)
    infimum = min_pyramid(dyadic_maximal(abs(phi).power(p), v).values ** (2.0 / p))
    dual_means = pyramid(dual.values)
    carleson_sum = sum(float(numpy.sum(eta.levels[level] / dual_means[level] ** (q - 1) * infimum[level]))
                       for level in range(depth))
    reference = float(complexity * numpy.sqrt(c2t) * f.norm() * numpy.sqrt(carleson_sum))
    split = SigmaSplit(float(pairing), sigma1, sigma2, sigma1_bound, reference, checks)
    if not split.passed:
        logger.warning(f"Bilinear split failed for t={t}, m={spec.m}, n={spec.n}: {split.checks}")
    return split


def lower_envelope(ratios: List[float]) -> Optional[float]:
    """The smallest observed norm / [w]^{1/2}_{C_{2t}} ratio of a sweep."""
    return min(ratios) if ratios else None
