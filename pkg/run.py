import argparse
import itertools
import json
import logging
import os
import sys
from typing import Dict

from haarlab import util
from haarlab.checks import ConfigurationError, HaarlabError
from haarlab.experiments import Experiment, ExperimentConfig

logging.basicConfig(format='%(asctime)s - %(levelname)s - %(name)s - %(message)s',
                    level=logging.INFO)
logger = logging.getLogger(__name__)

SUBCOMMANDS = ["bound-sweep", "sharpness", "complexity-scan", "lemma-suite", "characteristics"]

parser = argparse.ArgumentParser(description="Measure t-Haar multiplier norms and verify the lemmas behind them")
parser.add_argument("command", choices=SUBCOMMANDS, help="Experiment to run")
parser.add_argument("--config", default="configs/params.json", type=str,
                    help="Configuration file with the default parameters")
parser.add_argument("--experiment", default=None, type=str,
                    help="Configuration file of the experiment, defaults to configs/<experiment>.json")
parser.add_argument("--depth", default=None, type=int, help="Grid depth N")
parser.add_argument("--seed", default=None, type=int, help="Master seed, overridden by $HAARLAB_SEED")
parser.add_argument("--out", default=None, type=str, help="Output directory, defaults to logs/<experiment>/<time>")
parser.add_argument("--t", default=None, type=float, nargs='+', help="Values of t")
parser.add_argument("--m", default=None, type=int, nargs='+', help="Output complexities m")
parser.add_argument("--n", default=None, type=int, nargs='+', help="Input complexities n")
parser.add_argument("--q", default=None, type=float, nargs='+', help="Exponents q of the A_q characteristic")
parser.add_argument("--family", default=None, type=str,
                    help="Weight family kind, or a JSON object with the full family specification")
parser.add_argument("--trials", default=None, type=int, help="Number of random weights")
parser.add_argument("--jobs", default=None, type=int, help="Number of sweep points run concurrently")
parser.add_argument("--verbose", action="store_true", help="Log per-point results")


def merged_config(args: argparse.Namespace) -> Dict:
    name = args.command.replace('-', '_')
    experiment_config = args.experiment
    if experiment_config is None:
        default = os.path.join(os.path.dirname(args.config), name + '.json')
        experiment_config = default if os.path.isfile(default) else None
    params = util.merge_configs(args.config, experiment_config)
    params['experiment'] = name

    for flag, key in (('depth', 'depth'), ('seed', 'seed'), ('out', 'out'), ('trials', 'trials'),
                      ('jobs', 'jobs'), ('t', 't_list'), ('q', 'q_list')):
        value = getattr(args, flag)
        if value is not None:
            params[key] = value
    if args.m is not None or args.n is not None:
        pairs = params.get('mn_list', [[0, 0]])
        m_values = args.m if args.m is not None else sorted({m for m, _ in pairs})
        n_values = args.n if args.n is not None else sorted({n for _, n in pairs})
        params['mn_list'] = [[m, n] for m, n in itertools.product(m_values, n_values)]
    if args.family is not None:
        if args.family.lstrip().startswith('{'):
            try:
                params['family'] = json.loads(args.family)
            except json.JSONDecodeError as error:
                raise ConfigurationError(f"--family is not valid JSON: {error}")
        else:
            params['family'] = dict(params.get('family', {}), kind=args.family)
    if 'HAARLAB_SEED' in os.environ:
        try:
            params['seed'] = int(os.environ['HAARLAB_SEED'])
        except ValueError:
            raise ConfigurationError(f"HAARLAB_SEED must be an integer, got {os.environ['HAARLAB_SEED']}")
    return params.as_dict(quiet=True)


def main() -> int:
    args = parser.parse_args()
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    try:
        config = ExperimentConfig.from_dict(merged_config(args))
    except ConfigurationError as error:
        logger.error(f"Invalid configuration: {error}")
        return 2

    serialization_dir = util.serialization_dir(config.experiment, config.out)
    util.write_json(os.path.join(serialization_dir, 'config.json'), config.to_dict())
    logger.info(f"Running {config.experiment}, writing to {serialization_dir}")
    try:
        result = Experiment.by_name(config.experiment)(config).run()
    except ConfigurationError as error:
        logger.error(f"Invalid configuration: {error}")
        return 2
    except HaarlabError as error:
        logger.error(f"{config.experiment} stopped: {error}")
        return 2
    result.write(serialization_dir)
    if config.experiment == "characteristics":
        print(json.dumps(util.to_builtin(result.summary), indent=4, sort_keys=True))
    logger.info(f"{config.experiment} finished with exit code {result.exit_code}")
    return result.exit_code


if __name__ == '__main__':
    sys.exit(main())
