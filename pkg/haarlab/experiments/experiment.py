import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Sequence

from allennlp.common import Registrable

from haarlab import util
from haarlab.dyadic.grid import DyadicGrid
from haarlab.experiments.config import ExperimentConfig
from haarlab.operators.multiplier import MultiplierSpec
from haarlab.operators.bounds import BoundRatio, bound_ratio
from haarlab.weights.families import WeightFamily, generate_weight

logger = logging.getLogger(__name__)


@dataclass
class ExperimentResult:
    """
    Everything a run writes: sweep rows (rows.csv), a summary (summary.json),
    plot points (plot.tsv) and any further named JSON documents.
    """
    rows: List[Dict] = field(default_factory=list)
    summary: Dict = field(default_factory=dict)
    plot: List[Dict] = field(default_factory=list)
    documents: Dict[str, Any] = field(default_factory=dict)
    exit_code: int = 0

    def write(self, serialization_dir: str) -> None:
        if self.rows:
            util.write_rows(os.path.join(serialization_dir, 'rows.csv'), self.rows)
        if self.plot:
            util.write_plot(os.path.join(serialization_dir, 'plot.tsv'), self.plot)
        util.write_json(os.path.join(serialization_dir, 'summary.json'), self.summary)
        for name, document in self.documents.items():
            util.write_json(os.path.join(serialization_dir, name), document)


class Experiment(Registrable):
    """
    Base class of every runnable study. Subclasses register under the name
    the command line and the configuration files use:

        @Experiment.register("bound_sweep")
        class BoundSweep(Experiment):
            ...
    """

    def __init__(self, config: ExperimentConfig):
        self.config = config

    def run(self) -> ExperimentResult:
        raise NotImplementedError

    def weights(self) -> List[WeightFamily]:
        return self.config.families()

    def map_jobs(self, function: Callable, jobs: Sequence) -> List:
        """`function` over `jobs` on up to config.jobs threads, results in job order."""
        if self.config.jobs == 1:
            return [function(job) for job in jobs]
        with ThreadPoolExecutor(max_workers=self.config.jobs) as executor:
            return list(executor.map(function, jobs))

    def measure(self, family: WeightFamily, w: DyadicGrid, t: float, m: int, n: int, q: float) -> Dict:
        """One row of the norm-report schema."""
        spec = MultiplierSpec(t, m, n, w)
        result: BoundRatio = bound_ratio(spec, q, self.config.norm_method,
                                         max_dim=self.config.max_matrix_dim, svd_max_dim=self.config.svd_max_dim,
                                         tol=self.config.power_tol, max_iters=self.config.power_max_iters)
        if not result.estimate.converged:
            logger.warning(f"Norm of T(t={t}, m={m}, n={n}) for {family.weight_id} did not converge "
                           f"in {result.estimate.iterations} iterations")
        return result.to_row(spec, q, family.weight_id)

    @staticmethod
    def generate(family: WeightFamily) -> DyadicGrid:
        return generate_weight(family)
