import pytest
from allennlp.common.checks import ConfigurationError as AllennlpConfigurationError

from haarlab.checks import (ConfigurationError, DomainError, HaarlabError, ParameterError, StructuralError,
                            check_same_depth)
from haarlab.dyadic.grid import DyadicGrid


def test_error_hierarchy():
    assert ConfigurationError is AllennlpConfigurationError
    assert issubclass(DomainError, ParameterError)
    assert issubclass(StructuralError, HaarlabError)
    assert str(ParameterError("p must be > 1")) == "p must be > 1"


def test_same_depth_skips_missing_grids():
    assert check_same_depth(DyadicGrid.constant(3), None, DyadicGrid.constant(3)) == 3
    with pytest.raises(StructuralError):
        check_same_depth(DyadicGrid.constant(3), DyadicGrid.constant(4))


def test_same_depth_without_any_grid():
    with pytest.raises(StructuralError):
        check_same_depth(None, None)
    with pytest.raises(StructuralError):
        check_same_depth()
