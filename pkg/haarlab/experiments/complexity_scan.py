import itertools
import logging
from typing import Dict, List

import numpy
from overrides import overrides

from haarlab.checks import ConfigurationError
from haarlab.experiments.experiment import Experiment, ExperimentResult
from haarlab.experiments.sharpness import fit_slope

logger = logging.getLogger(__name__)

MAX_SLOPE = 3.1


def rhs_core_increasing(rows: List[Dict]) -> bool:
    """rhs_core as a function of m+n+2 must be single-valued and strictly increasing."""
    by_complexity = {}
    for row in rows:
        by_complexity.setdefault(row["m"] + row["n"] + 2, []).append(row["rhs_core"])
    values = [by_complexity[complexity] for complexity in sorted(by_complexity)]
    single = all(numpy.allclose(group, group[0], rtol=1e-12, atol=0) for group in values)
    return single and all(low[0] < high[0] for low, high in zip(values, values[1:]))


@Experiment.register("complexity_scan")
class ComplexityScan(Experiment):
    """
    For fixed weight, t and q: norm against m+n+2 on a log-log scale. The
    bound grows like (m+n+2)^3, so a fitted slope above 3.1 fails the run.
    """

    @overrides
    def run(self) -> ExperimentResult:
        config = self.config
        for m, n in config.mn_list:
            if config.depth < max(m, n) + 2:
                raise ConfigurationError(f"depth {config.depth} is too small to scan complexity ({m}, {n}), "
                                         f"need at least {max(m, n) + 2}")
        if len({m + n for m, n in config.mn_list}) < 2:
            raise ConfigurationError("mn_list must contain at least two values of m+n to fit a slope")

        families = self.weights()
        grids = [self.generate(family) for family in families]
        jobs = list(itertools.product(range(len(families)), config.t_list, config.q_list, config.mn_list))
        rows = self.map_jobs(lambda job: self.measure(families[job[0]], grids[job[0]], job[1], *job[3], job[2]),
                             jobs)

        scans, plot, exit_code = [], [], 0
        for family, t, q in itertools.product(families, config.t_list, config.q_list):
            selected = [row for row in rows
                        if row["weight_id"] == family.weight_id and row["t"] == t and row["q"] == q]
            complexities = [row["m"] + row["n"] + 2 for row in selected]
            fit = fit_slope(list(numpy.log(complexities)), [numpy.log(row["norm"]) for row in selected])
            monotone = rhs_core_increasing(selected)
            passed = fit["slope"] <= MAX_SLOPE and monotone
            if not passed:
                logger.error(f"Complexity scan failed for {family.weight_id}, t={t:g}, q={q:g}: "
                             f"slope {fit['slope']:.4f}, rhs_core increasing: {monotone}")
                exit_code = 1
            fit.update({"weight_id": family.weight_id, "t": t, "q": q, "max_slope": MAX_SLOPE,
                        "rhs_core_increasing": monotone, "pass": passed})
            scans.append(fit)
            series = f"{family.weight_id},t={t:g},q={q:g}"
            plot.extend({"x": complexity, "y": row["norm"], "series": series}
                        for complexity, row in zip(complexities, selected))
        summary = {"scans": scans, "max_slope": max(scan["slope"] for scan in scans), "pass": exit_code == 0}
        return ExperimentResult(rows=rows, summary=summary, plot=plot, exit_code=exit_code)
