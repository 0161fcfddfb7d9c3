import logging
from dataclasses import asdict, dataclass

import numpy
import torch

from haarlab.checks import ConfigurationError
from haarlab.operators.multiplier import OperatorMatrix

logger = logging.getLogger(__name__)

SVD_MAX_DIM = 1024
POWER_SEED = 0xDA1D
POWER_TOLERANCE = 1e-10
POWER_MAX_ITERS = 100000


@dataclass(frozen=True)
class NormEstimate:
    value: float
    method: str
    converged: bool = True
    iterations: int = 0

    def to_json(self):
        return asdict(self)


@torch.no_grad()
def power_iteration(entries: numpy.ndarray, tol: float = POWER_TOLERANCE, max_iters: int = POWER_MAX_ITERS,
                    seed: int = POWER_SEED) -> NormEstimate:
    """
    Largest singular value from power iteration on A^T A, stopping when the
    relative change of the estimate drops below `tol`.
    """
    A = torch.as_tensor(entries, dtype=torch.float64)
    generator = torch.Generator().manual_seed(seed)
    x = torch.randn(A.shape[1], generator=generator, dtype=torch.float64)
    x = x / torch.linalg.norm(x)
    estimate = 0.0
    for iteration in range(1, max_iters + 1):
        y = A.T @ (A @ x)
        norm = float(torch.linalg.norm(y))
        if norm == 0.0:
            return NormEstimate(0.0, "power_iteration", True, iteration)
        x = y / norm
        previous, estimate = estimate, norm ** 0.5
        if abs(estimate - previous) <= tol * estimate:
            logger.debug(f"Power iteration converged after {iteration} iterations")
            return NormEstimate(estimate, "power_iteration", True, iteration)
    logger.warning(f"Power iteration stopped after {max_iters} iterations without reaching tolerance {tol}")
    return NormEstimate(estimate, "power_iteration", False, max_iters)


@torch.no_grad()
def full_svd_norm(entries: numpy.ndarray) -> NormEstimate:
    singular_values = torch.linalg.svdvals(torch.as_tensor(entries, dtype=torch.float64))
    value = float(singular_values[0]) if singular_values.numel() else 0.0
    return NormEstimate(value, "full_svd")


def operator_norm(mat: OperatorMatrix, method: str = "auto", svd_max_dim: int = SVD_MAX_DIM,
                  tol: float = POWER_TOLERANCE, max_iters: int = POWER_MAX_ITERS) -> NormEstimate:
    """
    ||A||_{2->2}: full SVD up to `svd_max_dim`, power iteration beyond, unless
    `method` ("full_svd" or "power_iteration") forces one of them.
    """
    if method == "auto":
        method = "full_svd" if mat.dim <= svd_max_dim else "power_iteration"
    logger.debug(f"Estimating the norm of a {mat.dim}x{mat.dim} matrix with {method}")
    if method == "full_svd":
        return full_svd_norm(mat.entries)
    if method == "power_iteration":
        return power_iteration(mat.entries, tol, max_iters)
    raise ConfigurationError(f"Unknown norm method {method}")
