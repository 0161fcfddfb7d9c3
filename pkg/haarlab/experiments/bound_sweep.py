import itertools
import logging
from typing import Dict, List

import numpy
from overrides import overrides

from haarlab.dyadic.grid import DyadicGrid
from haarlab.experiments.experiment import Experiment, ExperimentResult
from haarlab.operators.bounds import lower_envelope, theorem_case_report
from haarlab.weights.families import WeightFamily

logger = logging.getLogger(__name__)


def series_name(row: Dict) -> str:
    return f"t={row['t']:g},m={row['m']},n={row['n']}"


@Experiment.register("bound_sweep")
class BoundSweep(Experiment):
    """
    Measures ||T|| / ((m+n+2)^3 [w]^{1/2}_{C_{2t}} [w^{2t}]^{1/2}_{A_q}) for every
    (weight, t, m, n, q) of the configuration. The largest ratio of each (t, q)
    is the empirical stand-in for the unspecified constant C_q.
    """

    @overrides
    def run(self) -> ExperimentResult:
        config = self.config
        families = self.weights()
        grids = [self.generate(family) for family in families]
        jobs = [(index, t, m, n, q) for index, t, (m, n), q in
                itertools.product(range(len(families)), config.t_list, config.mn_list, config.q_list)]
        logger.info(f"Bound sweep over {len(families)} weights, {len(jobs)} points, {config.jobs} jobs")

        def point(job):
            index, t, m, n, q = job
            return self.measure(families[index], grids[index], t, m, n, q)

        rows = self.map_jobs(point, jobs)

        summary = {"points": len(rows), "max_ratio": self.max_ratios(rows), "lower_envelope": {},
                   "theorem_cases": []}
        for t in config.t_list:
            if t >= 0.5:
                ratios = [row["norm"] / numpy.sqrt(row["c2t"]) for row in rows if row["t"] == t]
                summary["lower_envelope"][f"{t:g}"] = lower_envelope(ratios)
        for family, w in zip(families, grids):
            for t, p in itertools.product(config.t_list, config.q_list):
                report = theorem_case_report(w, t, p)
                if not report.passed:
                    logger.warning(f"Theorem case {report.case} failed for {family.weight_id}, t={t}, p={p}")
                summary["theorem_cases"].append({"weight_id": family.weight_id, "t": t, "p": p,
                                                 "report": report.to_json()})

        exit_code = 0
        if config.refinement_check:
            summary["refinement"] = self.refinement_stability(families, grids, jobs, rows)
            if not all(entry["stable"] for entry in summary["refinement"]):
                exit_code = 1

        plot = [{"x": float(numpy.sqrt(row["c2t"] * row["aq"])), "y": row["norm"], "series": series_name(row)}
                for row in rows]
        return ExperimentResult(rows=rows, summary=summary, plot=plot, exit_code=exit_code)

    def refinement_stability(self, families: List[WeightFamily], grids: List[DyadicGrid], jobs: List,
                             rows: List[Dict]) -> List[Dict]:
        """
        The largest ratio of each (t, q) measured again with every weight refined
        once, on twice the cells. The change has to stay within
        config.refinement_tolerance of the unrefined sweep.
        """
        refined = [w.refine() for w in grids]
        logger.info(f"Refinement pass from {2 ** self.config.depth} to {2 ** (self.config.depth + 1)} cells")

        def point(job):
            index, t, m, n, q = job
            return self.measure(families[index], refined[index], t, m, n, q)

        entries = []
        for coarse, fine in zip(self.max_ratios(rows), self.max_ratios(self.map_jobs(point, jobs))):
            change = fine["max_ratio"] / coarse["max_ratio"] - 1
            stable = bool(abs(change) <= self.config.refinement_tolerance)
            if not stable:
                logger.warning(f"t={coarse['t']:g}, q={coarse['q']:g}: max ratio moved by {change:.3%} "
                               f"under refinement")
            entries.append({"t": coarse["t"], "q": coarse["q"], "cells": 2 ** self.config.depth,
                            "max_ratio": coarse["max_ratio"], "refined_max_ratio": fine["max_ratio"],
                            "relative_change": change, "stable": stable})
        return entries

    def max_ratios(self, rows: List[Dict]) -> List[Dict]:
        maxima = []
        for t, q in itertools.product(self.config.t_list, self.config.q_list):
            selected = [row for row in rows if row["t"] == t and row["q"] == q]
            worst = max(selected, key=lambda row: row["ratio"])
            if not numpy.isfinite(worst["ratio"]):
                logger.warning(f"Ratio is not finite for t={t}, q={q} at {worst['weight_id']}")
            logger.info(f"t={t:g}, q={q:g}: max ratio {worst['ratio']:.6g} at {worst['weight_id']}, "
                        f"(m, n) = ({worst['m']}, {worst['n']})")
            maxima.append({"t": t, "q": q, "max_ratio": worst["ratio"], "weight_id": worst["weight_id"],
                           "m": worst["m"], "n": worst["n"]})
        return maxima
