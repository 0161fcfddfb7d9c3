"""
Numerical checks of the relations between the dyadic weight classes:
powers of A_p weights, reverse Hoelder products, A_p duality, the exponent
bookkeeping for w^s, and the measure-ratio sandwich with its doubling bound.
"""
import logging
from dataclasses import asdict, dataclass
from typing import Dict, List

import numpy

from haarlab.checks import ParameterError, check_exponent, check_positive
from haarlab.dyadic.grid import DyadicGrid
from haarlab.weights.characteristics import (ap_characteristic, cs_characteristic, doubling_constant,
                                             rhp_characteristic)

logger = logging.getLogger(__name__)

INEQUALITY_TOLERANCE = 1e-12
IDENTITY_TOLERANCE = 1e-10


@dataclass(frozen=True)
class RelationCheck:
    """
    One inequality (`relation` "<=") or identity ("==") between two measured
    quantities. `slack` is rhs - lhs for inequalities and -|rhs - lhs| for
    identities, so a relation holds when its slack is (numerically) >= 0.
    """
    name: str
    lhs: float
    rhs: float
    relation: str
    holds: bool
    slack: float

    def to_json(self) -> Dict:
        return asdict(self)


def compare(name: str, lhs: float, rhs: float, relation: str = "<=") -> RelationCheck:
    scale = max(1.0, abs(lhs), abs(rhs))
    if relation == "<=":
        slack = rhs - lhs
        holds = slack >= -INEQUALITY_TOLERANCE * scale
    elif relation == "==":
        slack = -abs(rhs - lhs)
        holds = -slack <= IDENTITY_TOLERANCE * scale
    else:
        raise ParameterError(f"Unknown relation {relation}")
    return RelationCheck(name, float(lhs), float(rhs), relation, bool(holds), float(slack))


def class_relations_report(w: DyadicGrid, s: float, p: float, q: float) -> List[RelationCheck]:
    """
    Evaluates every class relation whose parameter range contains `s`:

    (a) 0 <= s <= 1: [w^s]_{A_p} <= [w]_{A_p}^s
    (b) s > 1: [w^s]_{A_{s(q-1)+1}} <= [w]_{RH_s}^s [w]_{A_q}^s, [w]_{A_q}^s <= [w^s]_{A_{s(q-1)+1}}
        and [w]_{RH_s}^s <= [w^s]_{A_{s(q-1)+1}}
    (c) [w]_{A_p} = [w^{-1/(p-1)}]_{A_{p'}}^{p-1}
    (d) the class predicted for w^s beyond (a): A_{s(q-1)+1} for s > 1, bounded by
        [w]_{C_s}[w]_{A_q}^s, and A_{1-s} for s < 0, where [w^s]_{A_{1-s}} = [w]_{C_s}
        exactly. For 0 <= s <= 1 the prediction is (a) itself.
    """
    check_exponent(p)
    check_exponent(q, "q")
    check_positive(w.values)
    checks = []
    ap_w, _ = ap_characteristic(w, p)
    if 0 <= s <= 1:
        ap_ws, _ = ap_characteristic(w.power(s), p)
        checks.append(compare("(a) [w^s]_Ap <= [w]_Ap^s", ap_ws, ap_w ** s))
    elif s > 1:
        r = s * (q - 1) + 1
        ap_ws, _ = ap_characteristic(w.power(s), r)
        aq_w, _ = ap_characteristic(w, q)
        rh_w, _ = rhp_characteristic(w, s)
        cs_w, _ = cs_characteristic(w, s)
        checks.append(compare("(b) [w^s]_A(s(q-1)+1) <= [w]_RHs^s [w]_Aq^s", ap_ws, rh_w ** s * aq_w ** s))
        checks.append(compare("(b) [w]_Aq^s <= [w^s]_A(s(q-1)+1)", aq_w ** s, ap_ws))
        checks.append(compare("(b) [w]_RHs^s <= [w^s]_A(s(q-1)+1)", rh_w ** s, ap_ws))
        checks.append(compare("(d) w^s in A_(s(q-1)+1)", ap_ws, cs_w * aq_w ** s))
    else:
        ap_ws, _ = ap_characteristic(w.power(s), 1 - s)
        cs_w, _ = cs_characteristic(w, s)
        checks.append(compare("(d) [w^s]_A(1-s) = [w]_Cs", ap_ws, cs_w, "=="))
    dual_exponent = p / (p - 1)
    ap_dual, _ = ap_characteristic(w.power(-1.0 / (p - 1)), dual_exponent)
    checks.append(compare("(c) [w]_Ap = [w^(-1/(p-1))]_Ap'^(p-1)", ap_w, ap_dual ** (p - 1), "=="))
    for check in checks:
        if not check.holds:
            logger.warning(f"Class relation failed: {check}")
    return checks


def measure_sandwich_check(w: DyadicGrid, q: float, s: float) -> List[RelationCheck]:
    """
    For all dyadic E inside dyadic B:
    (|E|/|B|)^q / [w]_{A_q} <= w(E)/w(B) <= (|E|/|B|)^{1-1/s} [w]_{RH_s},
    reported as the worst pair of each side, plus D(w) <= 2^q [w]_{A_q}.
    """
    check_exponent(q, "q")
    check_exponent(s, "s")
    check_positive(w.values)
    aq, _ = ap_characteristic(w, q)
    rh, _ = rhp_characteristic(w, s)
    worst_lower = (numpy.inf, 0.0, 0.0)
    worst_upper = (numpy.inf, 0.0, 0.0)
    for big in range(w.depth + 1):
        for small in range(big, w.depth + 1):
            generations = small - big
            shrink = 2.0 ** -generations
            ratio = shrink * w.means[small] / numpy.repeat(w.means[big], 2 ** generations)
            lower = shrink ** q / aq
            upper = shrink ** (1 - 1 / s) * rh
            lower_slack = ratio - lower
            upper_slack = upper - ratio
            index = int(numpy.argmin(lower_slack))
            if lower_slack[index] < worst_lower[0]:
                worst_lower = (lower_slack[index], lower, ratio[index])
            index = int(numpy.argmin(upper_slack))
            if upper_slack[index] < worst_upper[0]:
                worst_upper = (upper_slack[index], ratio[index], upper)
    doubling, _ = doubling_constant(w)
    return [compare("(|E|/|B|)^q/[w]_Aq <= w(E)/w(B)", worst_lower[1], worst_lower[2]),
            compare("w(E)/w(B) <= (|E|/|B|)^(1-1/s)[w]_RHs", worst_upper[1], worst_upper[2]),
            compare("D(w) <= 2^q [w]_Aq", doubling, 2 ** q * aq)]
