import numpy
import pytest

from haarlab.checks import DomainError, ParameterError
from haarlab.carleson.intensity import carleson_intensity
from haarlab.carleson.sequences import IndexedSequence
from haarlab.bellman.little_lemma import (BellmanPoint, bellman_value, calculus_identity_check, dl_derivative_check,
                                          hessian_form, induction_on_scales_check, midpoint_inequality_check,
                                          negative_hessian, negative_hessian_closed_form)
from haarlab.dyadic.grid import DyadicGrid


def test_values():
    assert bellman_value(BellmanPoint(2.0, 1.0, 0.0, 2.0)) == pytest.approx(1.0)
    assert bellman_value(BellmanPoint(2.0, 1.0, 1.0, 2.0)) == pytest.approx(1.5)


def test_domain():
    with pytest.raises(DomainError):
        BellmanPoint(1.0, 0.5, 0.0, 2.0)
    with pytest.raises(DomainError):
        BellmanPoint(2.0, 1.0, 1.5, 2.0)
    with pytest.raises(DomainError):
        BellmanPoint(1.0, 1.0, 0.0, 2.0)
    with pytest.raises(ParameterError):
        BellmanPoint(2.0, 1.0, 0.0, 1.0)
    assert bellman_value(BellmanPoint(1.0, 1.0, 0.0, 2.0, closed=True)) == pytest.approx(0.0, abs=1e-15)


def test_dl_derivative_meets_its_bound():
    check = dl_derivative_check(BellmanPoint(2.0, 1.0, 1.0, 2.0))
    assert check.lhs == pytest.approx(0.25)
    assert check.rhs == pytest.approx(0.25)
    assert check.passed
    assert check.reference == pytest.approx(0.25, rel=1e-6)


def test_hessian_form():
    point = BellmanPoint(2.0, 1.0, 0.0, 2.0)
    assert hessian_form(point, (0.0, 1.0, 1.0)) == pytest.approx(6.0, rel=1e-5)
    assert hessian_form(point, (1.0, 0.0, 0.0)) == 0.0


@pytest.mark.parametrize("p", [1.5, 2.0, 4.0])
def test_hessian_matches_closed_form(p):
    point = BellmanPoint(3.0, 2.0, 0.3, p)
    numpy.testing.assert_allclose(negative_hessian(point), negative_hessian_closed_form(point), rtol=1e-5)


def test_midpoint_inequality():
    minus, plus = BellmanPoint(2.0, 1.0, 0.0, 2.0), BellmanPoint(2.0, 2.0, 0.0, 2.0)
    check = midpoint_inequality_check(minus, plus, 0.0)
    assert check.lhs == pytest.approx(1 / 12)
    assert check.rhs == 0.0
    assert check.passed
    assert midpoint_inequality_check(minus, plus, 1.0).passed


def test_midpoint_reports_l_below_the_midpoint_as_failed():
    minus, plus = BellmanPoint(2.0, 1.0, 0.5, 2.0), BellmanPoint(2.0, 2.0, 0.5, 2.0)
    check = midpoint_inequality_check(minus, plus, 0.2)
    assert not check.passed
    assert check.lhs == pytest.approx(-1 / 18)
    assert check.rhs == pytest.approx(0.05)
    assert midpoint_inequality_check(minus, plus, 0.5).passed


def test_midpoint_preconditions():
    minus, plus = BellmanPoint(2.0, 1.0, 0.5, 2.0), BellmanPoint(2.0, 2.0, 0.5, 2.0)
    with pytest.raises(ParameterError):
        midpoint_inequality_check(minus, plus, 1.2)
    with pytest.raises(ParameterError):
        midpoint_inequality_check(minus, BellmanPoint(2.0, 2.0, 0.5, 3.0), 0.6)


def test_calculus_identity():
    check = calculus_identity_check(BellmanPoint(2.0, 1.0, 0.0, 2.0), BellmanPoint(3.0, 2.0, 0.5, 2.0))
    assert check.passed
    assert check.lhs == pytest.approx(check.rhs, rel=1e-6)


def test_induction_on_flat_weight():
    seq = IndexedSequence.from_function(3, lambda interval: interval.length)
    report = induction_on_scales_check(DyadicGrid.constant(3), seq, 2.0, 3.0)
    assert report.passed
    assert report.nodes == 7
    with pytest.raises(ParameterError):
        induction_on_scales_check(DyadicGrid.constant(3), seq, 2.0, 2.0)


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_induction_on_random_data(random_weight, random_sequence, p):
    seq = random_sequence(7, sparsity=0.3)
    intensity, _ = carleson_intensity(seq)
    report = induction_on_scales_check(random_weight(7), seq, p, intensity)
    assert report.passed
    assert report.worst_ratio <= 1 + 1e-12
