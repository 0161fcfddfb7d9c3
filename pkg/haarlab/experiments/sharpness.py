import logging
from typing import Dict, List

import numpy
from overrides import overrides
from scipy import stats

from haarlab.checks import ConfigurationError
from haarlab.experiments.experiment import Experiment, ExperimentResult
from haarlab.weights.characteristics import ap_characteristic

logger = logging.getLogger(__name__)

# t -> (predicted slope, accepted window) of log ||T|| against log [w]_{A_2}
EXPECTED_SLOPES = {0.5: (0.5, (0.3, 0.6)), -0.5: (1.0, (0.7, 1.1))}
MIN_POINTS = 4


def fit_slope(x: List[float], y: List[float]) -> Dict:
    fit = stats.linregress(x, y)
    return {"slope": float(fit.slope), "intercept": float(fit.intercept), "r2": float(fit.rvalue ** 2)}


@Experiment.register("sharpness")
class Sharpness(Experiment):
    """
    Regresses log ||T|| on log [w]_{A_2} along a family whose characteristic
    grows. For t = -1/2 the controlling characteristic is [w]_{C_{-1}}, which
    equals [w]_{A_2}, so the same regressor serves both signs. Only the first
    (m, n) and q of the configuration are used.
    """

    @overrides
    def run(self) -> ExperimentResult:
        config = self.config
        unsupported = [t for t in config.t_list if t not in EXPECTED_SLOPES]
        if unsupported:
            raise ConfigurationError(f"Sharpness is measured at t = 1/2 and t = -1/2 only, got {unsupported}")
        families = self.weights()
        if len(families) < MIN_POINTS:
            raise ConfigurationError(f"A slope fit needs at least {MIN_POINTS} weights, got {len(families)}")
        grids = [self.generate(family) for family in families]
        log_a2 = numpy.log([ap_characteristic(w, 2.0)[0] for w in grids])
        if numpy.ptp(log_a2) < 1e-12:
            raise ConfigurationError("[w]_A2 does not vary across the family, nothing to regress")

        (m, n), q = config.mn_list[0], config.q_list[0]
        jobs = [(index, t) for t in config.t_list for index in range(len(families))]
        rows = self.map_jobs(lambda job: self.measure(families[job[0]], grids[job[0]], job[1], m, n, q), jobs)

        fits, plot = [], []
        for t in config.t_list:
            log_norm = [numpy.log(row["norm"]) for row in rows if row["t"] == t]
            fit = fit_slope(list(log_a2), log_norm)
            expected, (low, high) = EXPECTED_SLOPES[t]
            fit.update({"t": t, "expected": expected, "window": [low, high], "points": len(log_norm),
                        "in_window": bool(low <= fit["slope"] <= high)})
            logger.info(f"t={t:g}: slope {fit['slope']:.4f} (expected {expected:g}), r^2 {fit['r2']:.4f}")
            fits.append(fit)
            plot.extend({"x": float(x), "y": float(y), "series": f"t={t:g}"} for x, y in zip(log_a2, log_norm))
        summary = {"m": m, "n": n, "q": q, "fits": fits}
        return ExperimentResult(rows=rows, summary=summary, plot=plot)
