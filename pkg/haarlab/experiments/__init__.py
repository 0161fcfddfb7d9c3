from haarlab.experiments.config import ExperimentConfig
from haarlab.experiments.experiment import Experiment, ExperimentResult
from haarlab.experiments.bound_sweep import BoundSweep
from haarlab.experiments.sharpness import Sharpness
from haarlab.experiments.complexity_scan import ComplexityScan
from haarlab.experiments.lemma_suite import LemmaSuite
from haarlab.experiments.characteristics import Characteristics
