import logging

import numpy

from haarlab.carleson.lemmas import alphabeta_constant

logger = logging.getLogger(__name__)


def alphabeta_function(x, y, alpha: float, beta: float):
    return x ** alpha * y ** beta


def alphabeta_curvature(x, y, dx, dy, alpha: float, beta: float):
    """-d^2(x^alpha y^beta)[dx, dy] in closed form, broadcasting over arrays."""
    a, b = dx / x, dy / y
    return alphabeta_function(x, y, alpha, beta) * (alpha * (1 - alpha) * a ** 2
                                                    - 2 * alpha * beta * a * b
                                                    + beta * (1 - beta) * b ** 2)


def alphabeta_concavity_margin(x, y, dx, dy, alpha: float, beta: float):
    """
    (-d^2 B[dx, dy] - c B ((dx/x)^2 + (dy/y)^2)) / (B ((dx/x)^2 + (dy/y)^2))
    with c = min{alpha - 2 alpha^2, beta - 2 beta^2}; nonnegative because the
    remainder is (alpha dx/x - beta dy/y)^2 plus positive squares.
    """
    floor = 36.0 / alphabeta_constant(alpha, beta)
    value = alphabeta_function(x, y, alpha, beta)
    scale = value * ((dx / x) ** 2 + (dy / y) ** 2)
    return (alphabeta_curvature(x, y, dx, dy, alpha, beta) - floor * scale) / scale


def alphabeta_concavity_sample(alpha: float, beta: float, samples: int, rng: numpy.random.Generator) -> float:
    """
    Worst concavity margin over `samples` random points (log-uniform x, y in
    [1e-2, 1e2]) and random directions.
    """
    x, y = 10.0 ** rng.uniform(-2, 2, size=(2, samples))
    dx, dy = rng.standard_normal(size=(2, samples))
    margin = alphabeta_concavity_margin(x, y, dx, dy, alpha, beta)
    worst = float(numpy.min(margin))
    logger.debug(f"alpha-beta concavity margin for ({alpha}, {beta}): {worst:.3g} over {samples} samples")
    return worst
