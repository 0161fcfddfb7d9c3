"""
The Bellman function behind the A_p little lemma,

    B(u, v, l) = u - 1 / (v^{p-1} (1 + l))

on the domain uv^{p-1} > 1, 0 <= l <= 1, and the properties the induction
on scales uses: 0 <= B <= u, dB/dl >= 1/(4 v^{p-1}), concavity, and the
resulting one-step midpoint inequality.
"""
import logging
from dataclasses import asdict, dataclass
from typing import Dict, Optional, Tuple

import numpy
from scipy.integrate import simpson

from haarlab.checks import DomainError, ParameterError, check_exponent, check_positive, check_same_depth
from haarlab.carleson.intensity import carleson_intensity, subtree_sums
from haarlab.carleson.sequences import IndexedSequence
from haarlab.dyadic.grid import DyadicGrid, pyramid
from haarlab.dyadic.intervals import IntervalId

logger = logging.getLogger(__name__)

DERIVATIVE_STEP = 1e-6
HESSIAN_STEP = 1e-4
DERIVATIVE_AGREEMENT = 1e-6
ALGEBRAIC_TOLERANCE = 1e-12
PSD_FLOOR = 1e-8
QUADRATURE_NODES = 10001
QUADRATURE_TOLERANCE = 1e-6


@dataclass(frozen=True)
class BellmanPoint:
    """
    A point (u, v, l) of the domain uv^{p-1} > 1, 0 <= l <= 1.
    `closed` admits the boundary uv^{p-1} = 1, which grid averages of a
    constant weight reach exactly.
    """
    u: float
    v: float
    l: float
    p: float
    closed: bool = False

    def __post_init__(self):
        check_exponent(self.p)
        if not (self.u > 0 and self.v > 0):
            raise DomainError(f"u and v must be positive, got u={self.u}, v={self.v}")
        if not 0 <= self.l <= 1:
            raise DomainError(f"l must lie in [0, 1], got {self.l}")
        product = self.u * self.v ** (self.p - 1)
        if product < 1 or (product == 1 and not self.closed):
            raise DomainError(f"uv^(p-1) = {product!r} is not > 1 at {self}")

    def coordinates(self) -> numpy.ndarray:
        return numpy.array([self.u, self.v, self.l])


@dataclass(frozen=True)
class BellmanCheck:
    name: str
    lhs: float
    rhs: float
    passed: bool
    reference: Optional[float] = None

    @property
    def margin(self) -> float:
        return self.lhs - self.rhs

    def to_json(self) -> Dict:
        return dict(asdict(self), margin=self.margin)


def bellman_function(u, v, l, p: float):
    """B on arrays, without the domain check."""
    return u - _curved_part(v, l, p)


def _curved_part(v, l, p: float):
    """v^{1-p} / (1 + l) = u - B, the only nonlinear part of B."""
    return v ** (1 - p) / (1 + l)


def bellman_value(point: BellmanPoint) -> float:
    value = float(bellman_function(point.u, point.v, point.l, point.p))
    assert -ALGEBRAIC_TOLERANCE * point.u <= value <= point.u, f"B out of [0, u] at {point}"
    return value


def dl_closed_form(point: BellmanPoint) -> float:
    return point.v ** (1 - point.p) / (1 + point.l) ** 2


def dl_derivative_check(point: BellmanPoint) -> BellmanCheck:
    """
    dB/dl = v^{1-p}/(1+l)^2 >= 1/(4 v^{p-1}). The closed form is cross-checked
    by a central difference of the nonlinear part, which avoids cancelling
    against u.
    """
    derivative = dl_closed_form(point)
    step = DERIVATIVE_STEP
    difference = (_curved_part(point.v, point.l - step, point.p)
                  - _curved_part(point.v, point.l + step, point.p)) / (2 * step)
    agrees = abs(difference - derivative) <= DERIVATIVE_AGREEMENT * abs(derivative)
    if not agrees:
        logger.warning(f"dB/dl closed form {derivative!r} and finite difference {difference!r} disagree at {point}")
    lower_bound = 0.25 * point.v ** (1 - point.p)
    return BellmanCheck("dl_derivative", derivative, lower_bound,
                        agrees and derivative >= lower_bound * (1 - ALGEBRAIC_TOLERANCE), difference)


def negative_hessian(point: BellmanPoint) -> numpy.ndarray:
    """
    -d^2 B at the point from symmetric second differences with relative step
    1e-4 in v and l. B is affine in u, so the u row and column are zero.
    """
    v, l, p = point.v, point.l, point.p
    hv, hl = HESSIAN_STEP * v, HESSIAN_STEP * (1 + l)

    def curved(dv: int, dl: int) -> float:
        return _curved_part(v + dv * hv, l + dl * hl, p)

    centre = curved(0, 0)
    hessian = numpy.zeros((3, 3))
    hessian[1, 1] = (curved(1, 0) - 2 * centre + curved(-1, 0)) / hv ** 2
    hessian[2, 2] = (curved(0, 1) - 2 * centre + curved(0, -1)) / hl ** 2
    hessian[1, 2] = hessian[2, 1] = (curved(1, 1) - curved(1, -1) - curved(-1, 1) + curved(-1, -1)) / (4 * hv * hl)
    return hessian


def negative_hessian_closed_form(point: BellmanPoint) -> numpy.ndarray:
    v, l, p = point.v, point.l, point.p
    hessian = numpy.zeros((3, 3))
    hessian[1, 1] = p * (p - 1) * v ** (-p - 1) / (1 + l)
    hessian[2, 2] = 2 * v ** (1 - p) / (1 + l) ** 3
    hessian[1, 2] = hessian[2, 1] = (p - 1) * v ** (-p) / (1 + l) ** 2
    return hessian


def hessian_form(point: BellmanPoint, direction: Tuple[float, float, float]) -> float:
    """-(du, dv, dl) d^2B (du, dv, dl)^t, nonnegative on the whole domain."""
    direction = numpy.asarray(direction, dtype=numpy.float64)
    return float(direction @ negative_hessian(point) @ direction)


def midpoint_inequality_check(minus: BellmanPoint, plus: BellmanPoint, l: float) -> BellmanCheck:
    """
    B(u0, v0, l) - (B(minus) + B(plus))/2 >= |l - l0| / (4 v0^{p-1}) with
    (u0, v0, l0) the midpoint. The inequality is claimed for l0 <= l <= 1 only;
    an l below l0 is evaluated all the same and reported as failed.
    """
    if minus.p != plus.p:
        raise ParameterError(f"Both points need the same p, got {minus.p} and {plus.p}")
    if not 0 <= l <= 1:
        raise ParameterError(f"l must lie in [0, 1], got {l}")
    u0, v0, l0 = (minus.coordinates() + plus.coordinates()) / 2
    middle = BellmanPoint(u0, v0, l, minus.p, closed=minus.closed or plus.closed)
    lhs = bellman_value(middle) - (bellman_value(minus) + bellman_value(plus)) / 2
    rhs = abs(l - l0) / (4 * v0 ** (minus.p - 1))
    passed = bool(lhs >= rhs - ALGEBRAIC_TOLERANCE)
    if l < l0 - ALGEBRAIC_TOLERANCE:
        logger.warning(f"Midpoint inequality evaluated at l = {l} below l0 = {l0}")
        passed = False
    return BellmanCheck("midpoint_inequality", lhs, rhs, passed)


def calculus_identity_check(minus: BellmanPoint, plus: BellmanPoint) -> BellmanCheck:
    """
    b(0) - (b(1) + b(-1))/2 = -1/2 integral_{-1}^{1} (1 - |t|) b''(t) dt for
    b(t) = B(x0 + t (x+ - x0)) along the segment from `minus` to `plus`;
    lhs is the left side, rhs the Simpson value of the right side.
    """
    if minus.p != plus.p:
        raise ParameterError(f"Both points need the same p, got {minus.p} and {plus.p}")
    p = minus.p
    start, end = minus.coordinates(), plus.coordinates()
    middle = (start + end) / 2
    half = (end - start) / 2

    def b(t):
        u, v, l = middle[:, None] + half[:, None] * numpy.atleast_1d(t)[None, :]
        return bellman_function(u, v, l, p)

    nodes = numpy.linspace(-1.0, 1.0, QUADRATURE_NODES)
    _, dv, dl = half
    _, v, l = middle[:, None] + half[:, None] * nodes[None, :]
    # b'' = -(h_vv dv^2 + 2 h_vl dv dl + h_ll dl^2) with h = v^{1-p}/(1+l)
    second = -(p * (p - 1) * v ** (-p - 1) / (1 + l) * dv ** 2
               + 2 * (p - 1) * v ** (-p) / (1 + l) ** 2 * dv * dl
               + 2 * v ** (1 - p) / (1 + l) ** 3 * dl ** 2)
    rhs = -0.5 * simpson((1 - numpy.abs(nodes)) * second, x=nodes)
    lhs = float(b(0.0)[0] - (b(1.0)[0] + b(-1.0)[0]) / 2)
    return BellmanCheck("calculus_identity", lhs, float(rhs),
                        abs(lhs - rhs) <= QUADRATURE_TOLERANCE * max(1.0, abs(lhs)))


@dataclass(frozen=True)
class InductionReport:
    passed: bool
    worst_ratio: float
    worst_interval: IntervalId
    nodes: int

    def to_json(self) -> Dict:
        return {"pass": self.passed, "worst_ratio": self.worst_ratio,
                "worst_interval": None if self.worst_interval is None else self.worst_interval.to_json(),
                "nodes": self.nodes}


def induction_on_scales_check(w: DyadicGrid, seq: IndexedSequence, p: float, Q: float) -> InductionReport:
    """
    Runs the Bellman induction on grid data. At every J of levels 0..N-1 with
    u = m_J w, v = m_J w^{-1/(p-1)} and l_J = (1/(Q|J|)) sum_{I in D(J)} seq(I),
    checks |J| B(J) >= |J+| B(J+) + |J-| B(J-) + seq(J) / (4Q v^{p-1}).
    `worst_ratio` is the largest right side over left side among nodes with a
    non-negligible left side.
    """
    check_exponent(p)
    check_positive(w.values)
    check_same_depth(w, seq)
    intensity, _ = carleson_intensity(seq)
    if Q <= 0 or Q < intensity * (1 - ALGEBRAIC_TOLERANCE):
        raise ParameterError(f"Q = {Q} is below the Carleson intensity {intensity} of the sequence")
    u = w.means
    v = pyramid(w.values ** (-1.0 / (p - 1)))
    sums = subtree_sums(seq) + [numpy.zeros(2 ** w.depth)]
    l = [total * 2.0 ** level / Q for level, total in enumerate(sums)]
    if max(float(numpy.max(values)) for values in l) > 1 + ALGEBRAIC_TOLERANCE:
        raise ParameterError(f"Q = {Q} is too small: some l exceeds 1")
    l = [numpy.minimum(values, 1.0) for values in l]
    values = [bellman_function(u[level], v[level], l[level], p) * 2.0 ** -level for level in range(w.depth + 1)]

    passed, worst_ratio, worst_interval = True, -numpy.inf, None
    for level in range(w.depth):
        lhs = values[level]
        rhs = (values[level + 1][0::2] + values[level + 1][1::2]
               + seq.levels[level] / (4 * Q * v[level] ** (p - 1)))
        scale = numpy.maximum(numpy.abs(lhs), numpy.abs(rhs))
        if numpy.any(lhs < rhs - ALGEBRAIC_TOLERANCE * numpy.maximum(scale, 2.0 ** -level)):
            passed = False
        significant = lhs > ALGEBRAIC_TOLERANCE * 2.0 ** -level
        if numpy.any(significant):
            ratios = numpy.where(significant, rhs / numpy.where(significant, lhs, 1.0), -numpy.inf)
            index = int(numpy.argmax(ratios))
            if ratios[index] > worst_ratio:
                worst_ratio, worst_interval = float(ratios[index]), IntervalId(level, index)
    if not passed:
        logger.warning(f"Bellman induction failed for p={p}, Q={Q}")
    return InductionReport(passed, worst_ratio if worst_interval is not None else 0.0, worst_interval,
                           2 ** w.depth - 1)
