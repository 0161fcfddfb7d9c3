"""
Exceptions and argument checks shared by every subpackage. Configuration
errors are allennlp's `ConfigurationError`; everything the numerics reject
derives from `HaarlabError`.
"""
import logging

import numpy
from allennlp.common.checks import ConfigurationError

logger = logging.getLogger(__name__)

__all__ = ["ConfigurationError", "HaarlabError", "StructuralError", "ParameterError", "DomainError",
           "check_same_depth", "check_positive", "check_exponent"]


class HaarlabError(Exception):
    """
    Base class for the numerical errors raised by haarlab.
    """

    def __init__(self, message: str):
        super().__init__()
        self.message = message

    def __str__(self):
        return self.message


class StructuralError(HaarlabError):
    """
    Grids, intervals or sequences do not fit together (depth mismatch,
    interval outside the tree, leaf where children are needed).
    """


class ParameterError(HaarlabError):
    """
    A numeric parameter is outside its admissible range.
    """


class DomainError(ParameterError):
    """
    A Bellman point lies outside the domain uv^{p-1} > 1, 0 <= l <= 1.
    """


def check_same_depth(*grids) -> int:
    depths = {grid.depth for grid in grids if grid is not None}
    if not depths:
        raise StructuralError("No grid to take the depth from")
    if len(depths) > 1:
        raise StructuralError(f"Grids have different depths: {sorted(depths)}")
    return depths.pop()


def check_positive(values: numpy.ndarray, name: str = "weight") -> None:
    if not numpy.all(values > 0):
        raise ParameterError(f"{name} must be strictly positive on every cell, "
                             f"minimum is {float(numpy.min(values))}")


def check_exponent(p: float, name: str = "p") -> None:
    if not p > 1:
        raise ParameterError(f"{name} must be > 1, got {p}")
