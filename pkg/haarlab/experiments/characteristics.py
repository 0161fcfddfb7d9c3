import logging

from overrides import overrides

from haarlab.experiments.experiment import Experiment, ExperimentResult
from haarlab.weights.characteristics import characteristic_report

logger = logging.getLogger(__name__)


@Experiment.register("characteristics")
class Characteristics(Experiment):
    """One-shot report of the measured characteristics of the first configured weight."""

    @overrides
    def run(self) -> ExperimentResult:
        config = self.config
        families = self.weights()
        if len(families) > 1:
            logger.info(f"Reporting {families[0].weight_id} only, {len(families) - 1} further weights ignored")
        family = families[0]
        report = characteristic_report(self.generate(family), config.p_list, config.p_list, config.s_list)
        summary = {"weight_id": family.weight_id, "depth": config.depth, "characteristics": report.to_json()}
        return ExperimentResult(summary=summary)
