import json
import os
import sys

import pytest

import run


@pytest.fixture
def params(tmp_path):
    path = tmp_path / "params.json"
    path.write_text(json.dumps({"depth": 1, "family": {"kind": "two_value", "value": 3}, "p_list": [2],
                                "s_list": [2, -1]}))
    return str(path)


def main(monkeypatch, *arguments):
    monkeypatch.setattr(sys, "argv", ["run.py", *arguments])
    return run.main()


def test_characteristics_prints_the_summary(monkeypatch, capsys, tmp_path, params):
    out = str(tmp_path / "out")
    assert main(monkeypatch, "characteristics", "--config", params, "--out", out) == 0
    assert json.loads(capsys.readouterr().out)["characteristics"]["ap"]["2"] == pytest.approx(4 / 3)
    assert sorted(os.listdir(out)) == ["config.json", "summary.json"]


def test_seed_from_the_environment(monkeypatch, tmp_path, params):
    out = str(tmp_path / "out")
    monkeypatch.setenv("HAARLAB_SEED", "17")
    assert main(monkeypatch, "characteristics", "--config", params, "--out", out, "--seed", "4") == 0
    with open(os.path.join(out, "config.json")) as handle:
        assert json.load(handle)["seed"] == 17


def test_flags_override_the_files(monkeypatch, tmp_path, params):
    out = str(tmp_path / "out")
    assert main(monkeypatch, "bound-sweep", "--config", params, "--out", out, "--t", "1", "--m", "0",
                "--n", "0", "--q", "2") == 0
    with open(os.path.join(out, "config.json")) as handle:
        config = json.load(handle)
    assert config["experiment"] == "bound_sweep"
    assert config["t_list"] == [1.0]
    assert config["mn_list"] == [[0, 0]]


def test_invalid_configuration_exits_with_two(monkeypatch, tmp_path, params):
    assert main(monkeypatch, "characteristics", "--config", params, "--depth", "0") == 2
    assert main(monkeypatch, "characteristics", "--config", params, "--family", "{not json") == 2
    monkeypatch.setenv("HAARLAB_SEED", "seventeen")
    assert main(monkeypatch, "characteristics", "--config", params) == 2
