import json
import os

import numpy
import pytest
from allennlp.common import Params

from haarlab import util
from haarlab.checks import ConfigurationError


def write(path, data):
    with open(path, "w") as handle:
        json.dump(data, handle)
    return str(path)


def test_merge_configs(tmp_path):
    params = write(tmp_path / "params.json", {"depth": 8, "family": {"kind": "log_random_walk", "step": 0.5}})
    experiment = write(tmp_path / "experiment.json", {"depth": 10, "family": {"step": 1.0}})
    merged = util.merge_configs(params, experiment)
    assert isinstance(merged, Params)
    assert merged.as_dict(quiet=True) == {"depth": 10, "family": {"kind": "log_random_walk", "step": 1.0}}
    assert util.merge_configs(params, None)["depth"] == 8


def test_read_config_errors(tmp_path):
    with pytest.raises(ConfigurationError):
        util.read_config(str(tmp_path / "missing.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{depth: 8")
    with pytest.raises(ConfigurationError):
        util.read_config(str(broken))


def test_to_builtin():
    data = {"a": numpy.float64(0.1), 2: (numpy.int64(3), float("inf"))}
    assert util.to_builtin(data) == {"a": 0.1, "2": [3, "inf"]}


def test_write_json_uses_shortest_round_trip_floats(tmp_path):
    path = str(tmp_path / "summary.json")
    util.write_json(path, {"ratio": 0.075})
    with open(path) as handle:
        assert '"ratio": 0.075' in handle.read()


def test_write_rows(tmp_path):
    path = str(tmp_path / "rows.csv")
    row = {"t": 1.0, "m": 0, "n": 0, "q": 2.0, "depth": 1, "weight_id": "two_value(c=3)", "norm": 0.1,
           "c2t": 1.25, "aq": 25 / 9, "rhs_core": 1.0, "ratio": 0.075}
    util.write_rows(path, [row])
    with open(path) as handle:
        header, line = handle.read().splitlines()
    assert header == ",".join(util.ROW_COLUMNS)
    assert "0.10000000000000001" in line
    assert float(line.split(",")[8]) == 25 / 9
    assert util.read_rows(path)["weight_id"][0] == "two_value(c=3)"


def test_write_plot(tmp_path):
    path = str(tmp_path / "plot.tsv")
    util.write_plot(path, [{"x": 1.0, "y": 2.0, "series": "t=1"}])
    with open(path) as handle:
        assert handle.read().splitlines() == ["x\ty\tseries", "1\t2\tt=1"]


def test_serialization_dir(tmp_path):
    out = str(tmp_path / "a" / "b")
    assert util.serialization_dir("bound_sweep", out) == out
    assert os.path.isdir(out)
