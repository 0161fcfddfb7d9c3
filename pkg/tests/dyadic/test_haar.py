import numpy
import pytest

from haarlab.checks import StructuralError
from haarlab.dyadic.grid import DyadicGrid, delta
from haarlab.dyadic.haar import haar_alpha_beta, haar_coefficients, haar_function, reconstruct
from haarlab.dyadic.intervals import ROOT, IntervalId, iter_intervals


def test_lebesgue_haar_on_unit_interval():
    assert haar_function(ROOT, depth=1).values.tolist() == [-1.0, 1.0]


def test_weighted_haar_on_two_cells(two_cell_weight):
    h = haar_function(ROOT, two_cell_weight)
    numpy.testing.assert_allclose(h.values, [-numpy.sqrt(1.5), numpy.sqrt(1 / 6)], rtol=1e-14)
    assert (h * h * two_cell_weight).integral() == pytest.approx(1.0, rel=1e-14)
    assert (h * two_cell_weight).integral() == pytest.approx(0.0, abs=1e-15)


def test_haar_function_of_leaf(two_cell_weight):
    with pytest.raises(StructuralError):
        haar_function(IntervalId(1, 0), two_cell_weight)


def test_lebesgue_haar_needs_depth():
    with pytest.raises(StructuralError):
        haar_function(ROOT)


@pytest.mark.parametrize("trial", range(5))
def test_weighted_gram_identity(random_weight, trial):
    v = random_weight(5)
    functions = numpy.array([haar_function(interval, v).values for interval in iter_intervals(4)])
    gram = (functions * v.values) @ functions.T / v.size
    numpy.testing.assert_allclose(gram, numpy.eye(len(functions)), atol=1e-10)
    numpy.testing.assert_allclose(functions @ v.values / v.size, 0.0, atol=1e-10)


def test_parseval_with_mean_term(rng):
    f = DyadicGrid(rng.standard_normal(256))
    table = haar_coefficients(f)
    assert table.energy() + table.mean ** 2 == pytest.approx(f.norm() ** 2, rel=1e-12)


def test_two_cell_coefficient():
    table = haar_coefficients(DyadicGrid([0.0, 1.0]))
    assert table[ROOT] == pytest.approx(0.5)
    assert table.mean == pytest.approx(0.5)
    with pytest.raises(StructuralError):
        _ = table[IntervalId(1, 0)]


def test_coefficients_match_inner_products(rng, random_weight):
    v = random_weight(4)
    f = DyadicGrid(rng.standard_normal(16))
    table = haar_coefficients(f, v)
    for interval in (ROOT, IntervalId(2, 3), IntervalId(3, 5)):
        expected = (f * haar_function(interval, v) * v).integral()
        assert table[interval] == pytest.approx(expected, rel=1e-12, abs=1e-14)


@pytest.mark.parametrize("trial", range(10))
def test_weighted_reconstruction(rng, random_weight, trial):
    v = random_weight(8)
    f = DyadicGrid(rng.standard_normal(256))
    numpy.testing.assert_allclose(reconstruct(haar_coefficients(f, v)).values, f.values, atol=1e-10)


def test_lebesgue_reconstruction(rng):
    f = DyadicGrid(rng.standard_normal(64))
    numpy.testing.assert_allclose(reconstruct(haar_coefficients(f)).values, f.values, atol=1e-12)


def test_alpha_beta_decomposition(random_weight):
    v = random_weight(6)
    for interval in (ROOT, IntervalId(3, 2), IntervalId(5, 30)):
        alpha, beta = haar_alpha_beta(v, interval)
        lebesgue = haar_function(interval, depth=6)
        combination = (alpha * haar_function(interval, v).values
                       + beta * DyadicGrid.indicator(6, interval).values / numpy.sqrt(interval.length))
        numpy.testing.assert_allclose(combination, lebesgue.values, atol=1e-10)


@pytest.mark.parametrize("trial", range(5))
def test_alpha_beta_bounds(random_weight, trial):
    v = random_weight(8)
    for interval in iter_intervals(7):
        alpha, beta = haar_alpha_beta(v, interval)
        mean = v.average(interval)
        assert abs(alpha) <= numpy.sqrt(mean) * (1 + 1e-12)
        assert abs(beta) <= abs(delta(v, interval)) / mean * (1 + 1e-12) + 1e-300


def test_table_json(two_cell_weight):
    data = haar_coefficients(DyadicGrid([0.0, 1.0]), two_cell_weight).to_json()
    assert data["entries"][0]["level"] == 0
    assert data["measure"]["depth"] == 1
