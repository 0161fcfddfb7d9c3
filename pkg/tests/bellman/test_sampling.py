import numpy
import pytest

from haarlab.checks import ParameterError
from haarlab.bellman.alphabeta import alphabeta_concavity_margin, alphabeta_concavity_sample, alphabeta_curvature
from haarlab.bellman.sampling import run_bellman_checks, sample_points, sub_seeds


def test_sampled_points_lie_in_the_domain(rng):
    points = sample_points(2.5, 200, rng)
    assert len(points) == 200
    assert all(point.u * point.v ** 1.5 > 1 for point in points)
    boundary = sample_points(2.5, 50, rng, boundary=True)
    assert all(1 < point.u * point.v ** 1.5 < 1.0101 for point in boundary)


def test_sub_seeds():
    assert sub_seeds(3, 4) == sub_seeds(3, 4)
    assert len(set(sub_seeds(3, 4))) == 4
    assert sub_seeds(3, 2) != sub_seeds(4, 2)


def test_reports_do_not_depend_on_jobs():
    arguments = dict(exponents=[1.5, 3.0], samples=40, seed=11, calculus_samples_count=3,
                     alphabeta_pairs=[(0.25, 0.25)])
    serial = run_bellman_checks(jobs=1, **arguments)
    parallel = run_bellman_checks(jobs=3, **arguments)
    assert serial == parallel
    assert [report.check for report in serial] == [
        "dl_derivative(p=1.5)", "hessian_psd(p=1.5)", "midpoint_inequality(p=1.5)", "calculus_identity(p=1.5)",
        "dl_derivative(p=3)", "hessian_psd(p=3)", "midpoint_inequality(p=3)", "calculus_identity(p=3)",
        "alphabeta_concavity(alpha=0.25, beta=0.25)"]
    assert all(report.passed for report in serial)
    assert serial[3].samples == 3


def test_needs_samples():
    with pytest.raises(ParameterError):
        run_bellman_checks([2.0], 0, 1)


def test_alphabeta_margin(rng):
    assert alphabeta_concavity_sample(0.2, 0.3, 500, rng) >= -1e-8
    # along dx/x = dy/y the curvature reduces to (alpha + beta)(1 - alpha - beta) x^alpha y^beta
    x, y = numpy.array([2.0]), numpy.array([3.0])
    curvature = alphabeta_curvature(x, y, x, y, 0.25, 0.25)
    assert curvature[0] == pytest.approx(0.25 * 6 ** 0.25)
    assert alphabeta_concavity_margin(x, y, x, y, 0.25, 0.25)[0] >= 0
