import numpy
import pytest

from haarlab.dyadic.grid import DyadicGrid
from haarlab.dyadic.intervals import ROOT, IntervalId, iter_intervals
from haarlab.weights.characteristics import (ap_characteristic, characteristic_report, cs_characteristic,
                                             doubling_constant, rhp_characteristic, tree_max)
from haarlab.weights.families import WeightFamily, generate_weight


def test_two_cell_characteristics(two_cell_weight):
    assert ap_characteristic(two_cell_weight, 2.0) == (pytest.approx(4 / 3), ROOT)
    assert cs_characteristic(two_cell_weight, 2.0) == (pytest.approx(5 / 4), ROOT)
    assert cs_characteristic(two_cell_weight, -1.0)[0] == pytest.approx(4 / 3)
    assert rhp_characteristic(two_cell_weight, 2.0)[0] == pytest.approx(numpy.sqrt(5) / 2)


def test_two_cell_doubling(two_cell_weight):
    value, argmax = doubling_constant(two_cell_weight)
    assert value == pytest.approx(4.0)
    assert argmax == IntervalId(1, 0)


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_constant_weight(p):
    w = DyadicGrid.constant(6, 4.0)
    assert ap_characteristic(w, p)[0] == pytest.approx(1.0)
    assert rhp_characteristic(w, p)[0] == pytest.approx(1.0)
    assert cs_characteristic(w, p)[0] == pytest.approx(1.0)
    assert doubling_constant(w)[0] == pytest.approx(2.0)


@pytest.mark.parametrize("trial", range(100))
def test_characteristics_are_at_least_one(random_weight, trial):
    w = random_weight(7)
    for p in (1.5, 2.0, 3.0):
        assert ap_characteristic(w, p)[0] >= 1 - 1e-12
        assert rhp_characteristic(w, p)[0] >= 1 - 1e-12
    assert cs_characteristic(w, -1.0)[0] == pytest.approx(ap_characteristic(w, 2.0)[0], rel=1e-12)


def test_ap_decreases_in_p(random_weight):
    w = random_weight(7)
    assert ap_characteristic(w, 3.0)[0] <= ap_characteristic(w, 2.0)[0] * (1 + 1e-12)


def test_refinement_does_not_change_characteristics(random_weight):
    w = random_weight(5)
    assert ap_characteristic(w.refine(), 2.0)[0] == pytest.approx(ap_characteristic(w, 2.0)[0])


def test_tree_max_ties_break_to_coarsest_leftmost():
    levels = [numpy.array([1.0]), numpy.array([2.0, 2.0]), numpy.array([2.0, 0.0, 2.0, 0.0])]
    assert tree_max(levels) == (2.0, IntervalId(1, 0))


def test_report(two_cell_weight):
    report = characteristic_report(two_cell_weight, (2.0,), (2.0,), (2.0, -1.0))
    data = report.to_json()
    assert data["ap"]["2"] == pytest.approx(4 / 3)
    assert data["cs"]["-1"] == pytest.approx(4 / 3)
    assert data["argmax"]["doubling"] == {"level": 1, "index": 0}


def brute_force_ap(w: DyadicGrid, p: float) -> float:
    best = 0.0
    for interval in iter_intervals(w.depth):
        cells = w.values[interval.cells(w.depth)]
        best = max(best, float(numpy.mean(cells) * numpy.mean(cells ** (-1.0 / (p - 1))) ** (p - 1)))
    return best


def test_ap_of_the_square_root_weight_matches_enumeration():
    w = generate_weight(WeightFamily("power", 10, exponent=0.5))
    value, _ = ap_characteristic(w, 2.0)
    assert value == pytest.approx(brute_force_ap(w, 2.0), rel=1e-12)
    assert value > 1.0


@pytest.mark.parametrize("trial", range(20))
def test_reverse_holder_grows_with_the_exponent(random_weight, trial):
    w = random_weight(7)
    values = [rhp_characteristic(w, p)[0] for p in (1.5, 2.0, 3.0, 5.0)]
    for smaller, larger in zip(values, values[1:]):
        assert smaller <= larger * (1 + 1e-12)


@pytest.mark.parametrize("s", [0.1, 0.5, 0.9])
def test_cs_is_at_most_one_between_zero_and_one(random_weight, s):
    assert cs_characteristic(random_weight(7, 1.0), s)[0] <= 1 + 1e-12


@pytest.mark.parametrize("s", [2.0, 3.0])
def test_cs_root_is_the_reverse_holder_characteristic(random_weight, s):
    w = random_weight(7)
    assert cs_characteristic(w, s)[0] ** (1 / s) == pytest.approx(rhp_characteristic(w, s)[0], rel=1e-12)
