from haarlab.dyadic.intervals import IntervalId, ROOT, iter_intervals
from haarlab.dyadic.grid import (DyadicGrid, average, weighted_average, delta, delta_levels, pyramid,
                                 min_pyramid, WEIGHT_FLOOR)
from haarlab.dyadic.haar import (HaarCoefficientTable, haar_function, haar_coefficients, haar_alpha_beta,
                                 reconstruct, haar_amplitudes, analysis, synthesis)
