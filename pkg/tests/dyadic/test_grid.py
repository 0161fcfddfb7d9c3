import numpy
import pytest

from haarlab.checks import ParameterError, StructuralError
from haarlab.dyadic.grid import DyadicGrid, average, delta, delta_levels, min_pyramid, pyramid, weighted_average
from haarlab.dyadic.intervals import ROOT, IntervalId


def test_constant_average():
    f = DyadicGrid.constant(5, 2.5)
    for interval in (ROOT, IntervalId(3, 5), IntervalId(5, 31)):
        assert average(f, interval) == 2.5


def test_two_cell_average():
    assert average(DyadicGrid([0.0, 1.0]), ROOT) == 0.5


def test_weighted_average_of_one(two_cell_weight):
    assert weighted_average(DyadicGrid.constant(1), two_cell_weight, ROOT) == pytest.approx(1.0)


def test_weighted_average_definition(rng, random_weight):
    v = random_weight(6)
    f = DyadicGrid(rng.standard_normal(64))
    interval = IntervalId(2, 1)
    cells = interval.cells(6)
    expected = numpy.sum(f.values[cells] * v.values[cells]) / numpy.sum(v.values[cells])
    assert weighted_average(f, v, interval) == pytest.approx(expected, rel=1e-12)


def test_depth_mismatch():
    with pytest.raises(StructuralError):
        weighted_average(DyadicGrid.constant(2), DyadicGrid.constant(3), ROOT)


def test_weighted_average_needs_positive_weight():
    with pytest.raises(ParameterError):
        weighted_average(DyadicGrid.constant(1), DyadicGrid([1.0, 0.0]), ROOT)


def test_interval_deeper_than_grid():
    with pytest.raises(StructuralError):
        average(DyadicGrid.constant(2), IntervalId(3, 0))


def test_grid_size_must_be_power_of_two():
    with pytest.raises(StructuralError):
        DyadicGrid([1.0, 2.0, 3.0])
    with pytest.raises(StructuralError):
        DyadicGrid([1.0])


@pytest.mark.parametrize("values,expected", [([1.0, 1.0], 0.0), ([1.0, 3.0], 2.0), ([3.0, 1.0], -2.0)])
def test_delta(values, expected):
    assert delta(DyadicGrid(values), ROOT) == expected


def test_delta_of_leaf():
    with pytest.raises(StructuralError):
        delta(DyadicGrid([1.0, 3.0]), IntervalId(1, 0))


def test_delta_levels_match_delta(random_weight):
    v = random_weight(5)
    levels = delta_levels(v)
    for interval in (ROOT, IntervalId(2, 3), IntervalId(4, 15)):
        assert levels[interval.level][interval.index] == pytest.approx(delta(v, interval))


def test_pyramids():
    values = numpy.array([4.0, 2.0, 1.0, 5.0])
    means = pyramid(values)
    assert [level.tolist() for level in means] == [[3.0], [3.0, 3.0], [4.0, 2.0, 1.0, 5.0]]
    minima = min_pyramid(values)
    assert [level.tolist() for level in minima] == [[1.0], [2.0, 1.0], [4.0, 2.0, 1.0, 5.0]]


def test_pyramid_on_stacked_rows():
    stacked = numpy.eye(4)
    assert numpy.allclose(pyramid(stacked)[0], 0.25)


def test_mean_of_grid_is_root_average(rng):
    f = DyadicGrid(rng.random(128))
    assert f.integral() == pytest.approx(numpy.mean(f.values), rel=1e-14)


def test_measure_and_norms(two_cell_weight):
    assert two_cell_weight.measure(IntervalId(1, 1)) == 1.5
    f = DyadicGrid([1.0, -1.0])
    assert f.norm() == pytest.approx(1.0)
    assert f.norm(2.0, two_cell_weight) == pytest.approx(numpy.sqrt(2.0))


def test_refine_keeps_averages(random_weight):
    w = random_weight(4)
    refined = w.refine()
    assert refined.depth == 5
    for level in range(5):
        assert numpy.allclose(refined.means[level], w.means[level])


def test_grid_is_immutable():
    f = DyadicGrid([1.0, 2.0])
    with pytest.raises(ValueError):
        f.values[0] = 5.0


def test_json(random_weight):
    w = random_weight(3)
    assert numpy.array_equal(DyadicGrid.from_json(w.to_json()).values, w.values)
    with pytest.raises(StructuralError):
        DyadicGrid.from_json({"depth": 2, "values": [1.0, 2.0]})
