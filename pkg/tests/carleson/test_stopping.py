import numpy
import pytest

from haarlab.checks import ParameterError
from haarlab.carleson.intensity import carleson_intensity
from haarlab.carleson.sequences import IndexedSequence
from haarlab.carleson.stopping import (lift_sequence, mean_ratio_range, stopping_families, stopping_family,
                                       trivial_families)
from haarlab.dyadic.grid import DyadicGrid
from haarlab.dyadic.intervals import ROOT, IntervalId


def test_flat_weights_stop_at_the_floor():
    one = DyadicGrid.constant(3)
    family = stopping_family(one, one, ROOT, 2, 0.1)
    assert family.members == tuple(ROOT.descendants(2))
    assert family.is_partition()


def test_oscillating_weight_stops_at_the_root():
    u = DyadicGrid([1.0, 1.0, 3.0, 3.0])
    family = stopping_family(u, DyadicGrid.constant(2), ROOT, 1, 0.25)
    assert family.members == (ROOT,)


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_families_partition_their_roots(random_weight, m):
    u, v = random_weight(7), random_weight(7)
    families = stopping_families(u, v, m, 1.0 / (m + 2))
    assert set(families) == {IntervalId(level, index) for level in range(7 - m) for index in range(2 ** level)}
    for root, family in families.items():
        assert family.root == root
        assert family.is_partition()
        assert [member.left for member in family] == sorted(member.left for member in family)


def test_members_have_comparable_averages(random_weight):
    u, v = random_weight(8), random_weight(8)
    for m in (1, 2, 3):
        for family in stopping_families(u, v, m, 1.0 / (m + 2)).values():
            for weight in (u, v):
                low, high = mean_ratio_range(weight, family)
                assert numpy.exp(-1) <= low and high <= numpy.e


def test_preconditions():
    one = DyadicGrid.constant(3)
    with pytest.raises(ParameterError):
        stopping_family(one, one, IntervalId(2, 0), 1, 0.5)
    with pytest.raises(ParameterError):
        stopping_families(one, one, 3, 0.5)
    with pytest.raises(ParameterError):
        stopping_families(one, one, -1, 0.5)
    with pytest.raises(ParameterError):
        stopping_families(one, one, 1, 0.0)


def test_lift_of_zero():
    lifted = lift_sequence(IndexedSequence.zeros(4), trivial_families(4, 1))
    assert lifted.total() == 0.0


def test_lift_of_lengths():
    seq = IndexedSequence.from_function(4, lambda interval: interval.length)
    lifted = lift_sequence(seq, trivial_families(4, 1), depth=3)
    for interval, value in lifted.items():
        assert value == pytest.approx(interval.length)
    assert carleson_intensity(lifted)[0] == pytest.approx(3.0)


def test_members_below_the_tree_contribute_nothing():
    seq = IndexedSequence.from_function(3, lambda interval: interval.length)
    lifted = lift_sequence(seq, trivial_families(3, 1))
    assert lifted[IntervalId(1, 0)] == pytest.approx(0.5)
    assert lifted[IntervalId(2, 0)] == 0.0
