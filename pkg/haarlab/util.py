import json
import logging
import os
from datetime import datetime
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy
import pandas
from allennlp.common import Params
from allennlp.common.params import with_fallback

from haarlab.checks import ConfigurationError

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
ROW_COLUMNS = ["t", "m", "n", "q", "depth", "weight_id", "norm", "c2t", "aq", "rhs_core", "ratio"]
PLOT_COLUMNS = ["x", "y", "series"]


def read_config(path: str) -> Params:
    if not os.path.isfile(path):
        raise ConfigurationError(f"Configuration file {path} does not exist")
    try:
        return Params.from_file(path)
    except (ValueError, RuntimeError) as error:
        raise ConfigurationError(f"{path} is not a valid configuration: {error}")


def merge_configs(params_config_path: str, experiment_config_path: Optional[str]) -> Params:
    """
    Defaults from the parameters file, overwritten key by key by the
    experiment file; nested dictionaries are merged rather than replaced.
    """
    params_config = read_config(params_config_path)
    if experiment_config_path is None:
        return params_config
    experiment_config = read_config(experiment_config_path)
    return Params(with_fallback(preferred=experiment_config.as_dict(quiet=True),
                                fallback=params_config.as_dict(quiet=True)))


def serialization_dir(name: str, out: Optional[str] = None) -> str:
    """`out`, or logs/<name>/<timestamp>/ like every other run of the project."""
    if out is None:
        now = datetime.now()
        out = os.path.join('logs', name, now.strftime("%Y.%m.%d_%H.%M.%S"))
    if not os.path.isdir(out):
        os.makedirs(out)
    return out


def to_builtin(value: Any) -> Any:
    """numpy scalars, tuples and objects with `to_json` as plain JSON values."""
    if hasattr(value, "to_json"):
        return to_builtin(value.to_json())
    if isinstance(value, dict):
        return {str(key): to_builtin(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_builtin(item) for item in value]
    if isinstance(value, numpy.generic):
        return value.item()
    if isinstance(value, float) and not numpy.isfinite(value):
        return repr(value)
    return value


def write_json(path: str, data: Any) -> None:
    with open(path, 'w') as handle:
        json.dump(to_builtin(data), handle, indent=4, sort_keys=True)
        handle.write('\n')


def write_rows(path: str, rows: Sequence[Dict], columns: List[str] = ROW_COLUMNS) -> None:
    frame = pandas.DataFrame(list(rows), columns=columns)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')


def write_plot(path: str, points: Iterable[Dict]) -> None:
    frame = pandas.DataFrame(list(points), columns=PLOT_COLUMNS)
    frame.to_csv(path, sep='\t', index=False, float_format=FLOAT_FORMAT, lineterminator='\n')


def read_rows(path: str) -> pandas.DataFrame:
    return pandas.read_csv(path)
