from haarlab.operators.multiplier import MultiplierSpec, OperatorMatrix, apply_multiplier, assemble_matrix
from haarlab.operators.norm import NormEstimate, operator_norm, power_iteration, full_svd_norm
from haarlab.operators.maximal import MaximalBound, dyadic_maximal, maximal_bound_check
from haarlab.operators.auxiliary import AuxiliaryReport, aux_quantities, aux_estimates_check
from haarlab.operators.bounds import (BoundRatio, SigmaSplit, TheoremCaseReport, bound_ratio, sigma_split,
                                      theorem_case_report)
