from haarlab.bellman.little_lemma import (BellmanPoint, BellmanCheck, InductionReport, bellman_function, bellman_value,
                                          dl_derivative_check, hessian_form, negative_hessian,
                                          negative_hessian_closed_form, midpoint_inequality_check,
                                          calculus_identity_check, induction_on_scales_check)
from haarlab.bellman.alphabeta import alphabeta_concavity_sample, alphabeta_concavity_margin, alphabeta_curvature
from haarlab.bellman.sampling import VerificationReport, sample_points, run_bellman_checks, sub_seeds, BELLMAN_CHECKS
