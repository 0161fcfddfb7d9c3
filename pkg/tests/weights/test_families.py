import numpy
import pytest

from haarlab.checks import ConfigurationError, ParameterError
from haarlab.weights.families import WeightFamily, generate_weight, log_random_walk, power_cell_averages


def test_constant_and_two_value():
    assert generate_weight(WeightFamily("constant", 3, value=2.0)).values.tolist() == [2.0] * 8
    assert generate_weight(WeightFamily("two_value", 1, value=3.0)).values.tolist() == [1.0, 3.0]


def test_power_cell_averages_are_exact():
    numpy.testing.assert_allclose(power_cell_averages(2, 1.0), [0.125, 0.375, 0.625, 0.875])
    numpy.testing.assert_allclose(power_cell_averages(1, 0.0), [1.0, 1.0])
    assert numpy.mean(power_cell_averages(6, -0.5)) == pytest.approx(2.0)


def test_power_must_be_integrable():
    with pytest.raises(ParameterError):
        generate_weight(WeightFamily("power", 3, exponent=-1.0))


def test_log_random_walk_is_deterministic():
    first = log_random_walk(6, 0.5, 7)
    numpy.testing.assert_array_equal(first, log_random_walk(6, 0.5, 7))
    assert not numpy.array_equal(first, log_random_walk(6, 0.5, 8))


def test_log_random_walk_is_a_martingale():
    # children carry +step and -step, so every log average over a node is preserved
    values = numpy.log(log_random_walk(5, 0.3, 1))
    assert numpy.mean(values) == pytest.approx(0.0, abs=1e-12)


def test_custom_family():
    w = generate_weight(WeightFamily("custom", 1, values=(1.0, 3.0)))
    assert w.values.tolist() == [1.0, 3.0]
    with pytest.raises(ConfigurationError):
        generate_weight(WeightFamily("custom", 2, values=(1.0, 3.0)))


def test_values_are_clamped():
    w = generate_weight(WeightFamily("custom", 1, values=(0.0, 1.0)))
    assert w.values[0] == 1e-12


def test_unknown_kind():
    with pytest.raises(ConfigurationError):
        WeightFamily("gaussian", 3)


def test_weight_ids():
    assert WeightFamily("power", 3, exponent=0.5).weight_id == "power(a=0.5)"
    family = WeightFamily.from_dict({"kind": "log_random_walk", "step": 0.25}, depth=4).with_seed(3)
    assert family.weight_id == "log_random_walk(step=0.25,seed=3)"


def test_from_dict_rejects_unknown_fields():
    with pytest.raises(ConfigurationError):
        WeightFamily.from_dict({"kind": "constant", "colour": "red"}, depth=2)
