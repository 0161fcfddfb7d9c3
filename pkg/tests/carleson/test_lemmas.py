import numpy
import pytest

from haarlab.checks import ParameterError
from haarlab.carleson.lemmas import (alphabeta_constant, alphabeta_lemma_check, folk_lemma_check, lift_lemma_check,
                                     little_lemma_check, mu_nu_intensity_check, proposition_checks,
                                     weighted_carleson_check)
from haarlab.carleson.sequences import IndexedSequence
from haarlab.carleson.stopping import stopping_families
from haarlab.dyadic.grid import DyadicGrid
from haarlab.dyadic.intervals import ROOT


def test_little_lemma_on_two_cells(two_cell_weight):
    seq = IndexedSequence.from_function(1, lambda interval: interval.length)
    report = little_lemma_check(seq, two_cell_weight, 2.0)
    assert report.lhs == pytest.approx(0.75)
    assert report.rhs == pytest.approx(4.0)
    assert report.passed
    assert report.argmax == ROOT


def test_alphabeta_on_two_cells(two_cell_weight):
    report = alphabeta_lemma_check(two_cell_weight, two_cell_weight, 0.25, 0.25)
    assert report.lhs == pytest.approx(2 ** 1.5)
    assert report.ratio == pytest.approx(2 / 288)
    assert report.passed


def test_alphabeta_constant():
    assert alphabeta_constant(0.25, 0.25) == pytest.approx(288.0)
    with pytest.raises(ParameterError):
        alphabeta_constant(0.5, 0.25)


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_little_and_folk_lemmas_hold(random_weight, random_sequence, rng, p):
    for _ in range(5):
        seq, v = random_sequence(8, sparsity=0.2), random_weight(8)
        F = DyadicGrid(rng.random(2 ** 8))
        assert little_lemma_check(seq, v, p).passed
        folk = folk_lemma_check(seq, v, p, F)
        assert folk.passed
        assert folk.ratio <= 4 * (1 + 1e-12)


@pytest.mark.parametrize("alpha,beta", [(0.1, 0.1), (0.25, 0.4), (0.45, 0.2)])
def test_alphabeta_lemma_holds(random_weight, alpha, beta):
    assert alphabeta_lemma_check(random_weight(8, 1.0), random_weight(8, 1.0), alpha, beta).passed


def test_weighted_carleson(random_weight, random_sequence, rng):
    seq, v = random_sequence(7), random_weight(7)
    assert weighted_carleson_check(seq, v, DyadicGrid(rng.random(2 ** 7))).passed
    with pytest.raises(ParameterError):
        weighted_carleson_check(seq, v, DyadicGrid(-numpy.ones(2 ** 7)))


def test_constant_function_saturates_weighted_carleson():
    seq = IndexedSequence.from_function(4, lambda interval: interval.length)
    report = weighted_carleson_check(seq, DyadicGrid.constant(4), DyadicGrid.constant(4))
    assert report.ratio == pytest.approx(1.0)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_lift_lemma(random_weight, random_sequence, m):
    u, v = random_weight(8), random_weight(8)
    seq = random_sequence(8)
    families = stopping_families(u, v, m, 1.0 / (m + 2))
    report = lift_lemma_check(seq, u, families, m)
    assert report.passed


def test_combinations(random_weight, random_sequence):
    a, b = random_sequence(6), random_sequence(6, sparsity=0.5)
    v = random_weight(6)
    for weight in (None, v):
        reports = proposition_checks(a, b, weight, 2.0, 0.5)
        assert [report.name for report in reports] == ["combine_linear", "combine_geometric_mean",
                                                      "combine_square_sum"]
        assert all(report.passed for report in reports)


def test_mu_nu_intensities_on_two_cells(two_cell_weight):
    mu, nu = mu_nu_intensity_check(two_cell_weight, 2.0, 0.25)
    assert (mu.name, nu.name) == ("mu_intensity", "nu_intensity")
    assert mu.lhs == pytest.approx(2 * (4 / 3) ** 0.25)
    assert nu.lhs == pytest.approx(8 / 3)
    assert nu.rhs == pytest.approx(384.0)
    assert mu.ratio == pytest.approx(1 / 144)
    assert nu.ratio == pytest.approx(1 / 144)
    assert mu.argmax == ROOT


@pytest.mark.slow
@pytest.mark.parametrize("q,alpha", [(2.0, 0.25), (1.5, 0.4), (3.0, 0.2)])
def test_mu_nu_intensities_are_bounded(random_weight, q, alpha):
    for _ in range(100):
        reports = mu_nu_intensity_check(random_weight(8, 1.0), q, alpha)
        assert all(report.passed for report in reports), reports


def test_mu_nu_intensities_need_the_proof_window(two_cell_weight):
    with pytest.raises(ParameterError):
        mu_nu_intensity_check(two_cell_weight, 3.0, 0.4)


@pytest.mark.slow
@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_little_and_folk_lemmas_over_a_hundred_draws(random_weight, random_sequence, rng, p):
    for _ in range(100):
        seq, v = random_sequence(8, sparsity=0.2), random_weight(8)
        F = DyadicGrid(rng.random(2 ** 8))
        assert little_lemma_check(seq, v, p).passed
        assert folk_lemma_check(seq, v, p, F).passed


@pytest.mark.slow
def test_alphabeta_lemma_over_a_hundred_pairs(random_weight):
    for _ in range(100):
        assert alphabeta_lemma_check(random_weight(8, 1.0), random_weight(8, 1.0), 0.25, 0.25).passed
