"""
The t-Haar multiplier of complexity (m, n),

    T f(x) = sum_L sum_{I in D_n(L), J in D_m(L)} (sqrt(|I||J|)/|L|) (w(x)/m_L w)^t <f, h_I> h_J(x),

truncated to the roots L of level <= N-1-max(m, n) so that every Haar
function involved is resolved by the grid. Inputs sit n levels below L and
outputs m levels below L.
"""
import json
import logging
import os
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy

from haarlab.checks import ParameterError, StructuralError, check_positive, check_same_depth
from haarlab.dyadic.grid import DyadicGrid
from haarlab.dyadic.haar import analysis, haar_amplitudes, synthesis

logger = logging.getLogger(__name__)

MAX_MATRIX_DIM = 2 ** 13
ASSEMBLY_CHUNK = 256


@dataclass(frozen=True, eq=False)
class MultiplierSpec:
    """
    # Parameters

    t : `float`
        Power of the weight in the symbol (w(x)/m_L w)^t.
    m : `int`
        Output generations below each root.
    n : `int`
        Input generations below each root.
    w : `DyadicGrid`
        The weight; its depth fixes the grid of the operator.
    """
    t: float
    m: int
    n: int
    w: DyadicGrid

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ParameterError(f"Complexity must be nonnegative, got (m, n) = ({self.m}, {self.n})")
        check_positive(self.w.values)
        if self.w.depth < max(self.m, self.n) + 1:
            raise ParameterError(f"A grid of depth {self.w.depth} has no root for complexity ({self.m}, {self.n}), "
                                 f"need depth >= {max(self.m, self.n) + 1}")

    @property
    def depth(self) -> int:
        return self.w.depth

    @property
    def dim(self) -> int:
        return self.w.size

    @property
    def complexity_constant(self) -> int:
        """C_n^m = m + n + 2."""
        return self.m + self.n + 2

    @property
    def proof_exponent(self) -> float:
        """p = 2 - 1/C_n^m, strictly between 1 and 2."""
        return 2.0 - 1.0 / self.complexity_constant

    @property
    def root_levels(self) -> range:
        return range(self.depth - max(self.m, self.n))

    def to_json(self) -> Dict:
        return {"t": self.t, "m": self.m, "n": self.n, "depth": self.depth}


def _root_factors(spec: MultiplierSpec) -> List[numpy.ndarray]:
    return [spec.w.means[level] ** -spec.t for level in spec.root_levels]


def _apply_to_rows(values: numpy.ndarray, spec: MultiplierSpec) -> numpy.ndarray:
    """T applied to every row of `values` (shape (..., 2^N))."""
    depth = spec.depth
    amplitudes = haar_amplitudes(depth)
    coefficients = analysis(values, amplitudes)
    outputs = [numpy.zeros(coefficient.shape) for coefficient in coefficients]
    batch = values.shape[:-1]
    for level, factor in zip(spec.root_levels, _root_factors(spec)):
        inputs = coefficients[level + spec.n].reshape(batch + (2 ** level, 2 ** spec.n))
        # a_L = sum_{I in D_n(L)} sqrt|I| <f, h_I>
        aggregated = inputs.sum(axis=-1) * 2.0 ** (-(level + spec.n) / 2)
        # sqrt|J| / |L| for J in D_m(L)
        link = 2.0 ** (-(level + spec.m) / 2) * 2.0 ** level
        outputs[level + spec.m] += numpy.repeat(aggregated * factor * link, 2 ** spec.m, axis=-1)
    return spec.w.values ** spec.t * synthesis(outputs, amplitudes, numpy.zeros(batch))


def apply_multiplier(f: DyadicGrid, spec: MultiplierSpec) -> DyadicGrid:
    """
    Coefficient space first: one Haar transform of f, aggregation per root,
    one inverse transform, then the pointwise factor w^t.
    """
    check_same_depth(f, spec.w)
    return DyadicGrid(_apply_to_rows(f.values, spec))


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """
    T in the orthonormal cell basis u_j = 2^{N/2} chi_{cell j}:
    entries[i, j] = <T u_j, u_i>, which equals the value of T chi_{cell j}
    on cell i.
    """
    entries: numpy.ndarray
    spec: Optional[MultiplierSpec] = None

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def apply(self, f: DyadicGrid) -> DyadicGrid:
        if f.size != self.dim:
            raise StructuralError(f"A {self.dim}-dimensional matrix cannot act on {f.size} cells")
        return DyadicGrid(self.entries @ f.values)

    def save(self, path: str, q: Optional[float] = None) -> None:
        """Column-major float64 at `path` plus a JSON sidecar at `path`.json."""
        with open(path, "wb") as binary:
            binary.write(numpy.asfortranarray(self.entries, dtype="<f8").tobytes(order="F"))
        sidecar = {"dim": self.dim}
        if self.spec is not None:
            sidecar.update(self.spec.to_json())
        sidecar["q"] = q
        with open(path + ".json", "w") as handle:
            json.dump(sidecar, handle, indent=4, sort_keys=True)

    @classmethod
    def load(cls, path: str) -> "OperatorMatrix":
        with open(path + ".json") as handle:
            sidecar = json.load(handle)
        dim = int(sidecar["dim"])
        if os.path.getsize(path) != 8 * dim * dim:
            raise StructuralError(f"{path} does not hold a {dim}x{dim} float64 matrix")
        entries = numpy.fromfile(path, dtype="<f8").reshape((dim, dim), order="F")
        return cls(entries)


def assemble_matrix(spec: MultiplierSpec, max_dim: int = MAX_MATRIX_DIM,
                    chunk: int = ASSEMBLY_CHUNK) -> OperatorMatrix:
    """Applies T to the cell indicators in chunks of `chunk` columns."""
    if spec.dim > max_dim:
        raise ParameterError(f"Refusing to assemble a {spec.dim}x{spec.dim} matrix, the limit is {max_dim}")
    entries = numpy.empty((spec.dim, spec.dim))
    for start in range(0, spec.dim, chunk):
        stop = min(start + chunk, spec.dim)
        indicators = numpy.zeros((stop - start, spec.dim))
        indicators[numpy.arange(stop - start), numpy.arange(start, stop)] = 1.0
        entries[:, start:stop] = _apply_to_rows(indicators, spec).T
    logger.debug(f"Assembled the {spec.dim}x{spec.dim} matrix of T(t={spec.t}, m={spec.m}, n={spec.n})")
    return OperatorMatrix(entries, spec)
