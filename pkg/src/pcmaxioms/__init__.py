"""Inconsistency indices and axiom checks for pairwise-comparison matrices."""

from .matrix import (ComparisonMatrix, CornerSpec, MatrixError, MatrixFormatError,
                     ReciprocityError, Triad, ValidationReport, corner, elementwise_power,
                     from_upper_triangle, from_weights, is_consistent, parse, permute,
                     perturb_entry, serialize, triads, validate)
from .solvers import (ConvergenceError, EigenResult, PriorityVector, geometric_mean_weights,
                      principal_eigen, weights)
from .indices import (IndexReport, RiTable, bundled_ri_table, ci, compromise, cr, gci, gwi,
                      gwi_max, kii, pli, pli_max, report, ric)

__version__ = "0.1.0"
