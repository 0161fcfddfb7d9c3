"""
Randomised verification of the Bellman properties over the domain
uv^{p-1} > 1, 0 <= l <= 1. Each check draws its own points from a
sub-seed of one master seed, so a report is reproducible from (check, seed)
regardless of how the checks are scheduled.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List, Sequence, Tuple

import numpy

from haarlab.checks import ParameterError, check_exponent
from haarlab.bellman.alphabeta import alphabeta_concavity_margin
from haarlab.bellman.little_lemma import (PSD_FLOOR, BellmanPoint, calculus_identity_check, dl_derivative_check,
                                          hessian_form, midpoint_inequality_check)

logger = logging.getLogger(__name__)

LOG_RANGE = (-2.0, 2.0)
DOMAIN_MARGIN = 1e-9
BOUNDARY_WIDTH = 0.01


@dataclass(frozen=True)
class VerificationReport:
    check: str
    samples: int
    failures: int
    worst_margin: float
    seed: int

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_json(self) -> Dict:
        return asdict(self)


def sample_points(p: float, count: int, rng: numpy.random.Generator, boundary: bool = False) -> List[BellmanPoint]:
    """
    Log-uniform u, v in [1e-2, 1e2] filtered by uv^{p-1} > 1 + 1e-9 and uniform
    l in [0, 1]. With `boundary`, u is placed so that uv^{p-1} lies in (1, 1.01).
    """
    check_exponent(p)
    points = []
    while len(points) < count:
        v = 10.0 ** rng.uniform(*LOG_RANGE, size=count)
        l = rng.uniform(0.0, 1.0, size=count)
        if boundary:
            product = 1.0 + DOMAIN_MARGIN + rng.uniform(0.0, BOUNDARY_WIDTH, size=count)
            u = product / v ** (p - 1)
        else:
            u = 10.0 ** rng.uniform(*LOG_RANGE, size=count)
        inside = u * v ** (p - 1) > 1 + DOMAIN_MARGIN
        points.extend(BellmanPoint(float(a), float(b), float(c), p) for a, b, c in zip(u[inside], v[inside], l[inside]))
    return points[:count]


def _shrunk_neighbour(point: BellmanPoint, rng: numpy.random.Generator, spread: float) -> BellmanPoint:
    """A domain point within relative distance `spread` of `point`, or `point` itself."""
    for _ in range(32):
        u = point.u * (1 + rng.uniform(-spread, spread))
        v = point.v * (1 + rng.uniform(-spread, spread))
        l = float(numpy.clip(point.l + rng.uniform(-spread, spread), 0.0, 1.0))
        if u * v ** (point.p - 1) > 1 + DOMAIN_MARGIN:
            return BellmanPoint(u, v, l, point.p)
    return point


def _summarise(check: str, margins: Sequence[float], passed: Sequence[bool], seed: int) -> VerificationReport:
    failures = int(len(passed) - sum(passed))
    report = VerificationReport(check, len(margins), failures, float(min(margins)), seed)
    if failures:
        logger.warning(f"{check}: {failures} of {len(margins)} samples failed, worst margin {report.worst_margin:.3g}")
    else:
        logger.info(f"{check}: {len(margins)} samples, worst margin {report.worst_margin:.3g}")
    return report


def derivative_samples(p: float, samples: int, seed: int) -> VerificationReport:
    rng = numpy.random.default_rng(seed)
    points = sample_points(p, samples - samples // 10, rng) + sample_points(p, samples // 10, rng, boundary=True)
    checks = [dl_derivative_check(point) for point in points]
    return _summarise(f"dl_derivative(p={p:g})", [check.margin / check.rhs for check in checks],
                      [check.passed for check in checks], seed)


def hessian_samples(p: float, samples: int, seed: int) -> VerificationReport:
    rng = numpy.random.default_rng(seed)
    points = sample_points(p, samples - samples // 10, rng) + sample_points(p, samples // 10, rng, boundary=True)
    directions = rng.standard_normal(size=(len(points), 3))
    margins = []
    for point, direction in zip(points, directions):
        # scale-free: the form is homogeneous of degree 2 in the direction
        direction = direction / numpy.linalg.norm(direction)
        margins.append(hessian_form(point, direction))
    return _summarise(f"hessian_psd(p={p:g})", margins, [margin >= -PSD_FLOOR for margin in margins], seed)


def midpoint_samples(p: float, samples: int, seed: int) -> VerificationReport:
    rng = numpy.random.default_rng(seed)
    minus = sample_points(p, samples, rng)
    plus = sample_points(p, samples, rng)
    margins, passed = [], []
    for first, second in zip(minus, plus):
        l0 = (first.l + second.l) / 2
        check = midpoint_inequality_check(first, second, rng.uniform(l0, 1.0))
        margins.append(check.margin)
        passed.append(check.passed)
    return _summarise(f"midpoint_inequality(p={p:g})", margins, passed, seed)


def calculus_samples(p: float, samples: int, seed: int) -> VerificationReport:
    rng = numpy.random.default_rng(seed)
    margins, passed = [], []
    for centre in sample_points(p, samples, rng):
        minus = _shrunk_neighbour(centre, rng, 0.25)
        plus = _shrunk_neighbour(centre, rng, 0.25)
        check = calculus_identity_check(minus, plus)
        margins.append(-abs(check.margin))
        passed.append(check.passed)
    return _summarise(f"calculus_identity(p={p:g})", margins, passed, seed)


def alphabeta_samples(alpha: float, beta: float, samples: int, seed: int) -> VerificationReport:
    rng = numpy.random.default_rng(seed)
    x, y = 10.0 ** rng.uniform(*LOG_RANGE, size=(2, samples))
    dx, dy = rng.standard_normal(size=(2, samples))
    margins = alphabeta_concavity_margin(x, y, dx, dy, alpha, beta)
    return _summarise(f"alphabeta_concavity(alpha={alpha:g}, beta={beta:g})", list(margins),
                      list(margins >= -PSD_FLOOR), seed)


BELLMAN_CHECKS: Dict[str, Callable[[float, int, int], VerificationReport]] = {
    "dl_derivative": derivative_samples,
    "hessian_psd": hessian_samples,
    "midpoint_inequality": midpoint_samples,
    "calculus_identity": calculus_samples,
}


def sub_seeds(seed: int, count: int) -> List[int]:
    """Deterministic child seeds of a master seed."""
    return [int(child.generate_state(1)[0]) for child in numpy.random.SeedSequence(seed).spawn(count)]


def run_bellman_checks(exponents: Sequence[float], samples: int, seed: int, jobs: int = 1,
                       calculus_samples_count: int = 50,
                       alphabeta_pairs: Sequence[Tuple[float, float]] = ()) -> List[VerificationReport]:
    """
    Every sampled check for every p, then the alpha-beta sampler for each
    (alpha, beta) pair; results come back in that order whatever `jobs` is.
    """
    if samples < 1:
        raise ParameterError(f"Need at least one sample, got {samples}")
    tasks = []
    for p in exponents:
        for name, check in BELLMAN_CHECKS.items():
            count = calculus_samples_count if name == "calculus_identity" else samples
            tasks.append((check, (p, count)))
    for alpha, beta in alphabeta_pairs:
        tasks.append((alphabeta_samples, (alpha, beta, samples)))
    seeds = sub_seeds(seed, len(tasks))
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as executor:
        futures = [executor.submit(check, *arguments, child) for (check, arguments), child in zip(tasks, seeds)]
        return [future.result() for future in futures]
