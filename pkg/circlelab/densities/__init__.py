"""Complete character sums, local densities and the singular series."""
from .enum import DensityMethod, SeriesStatus
from .sigma import PhaseCounts, complete_sum_sigma, phase_counts, phase_sum, exact_integer_sum, weighted_polynomial
from .local import LocalFactor, local_density, partial_factor, rho, dual_lattice, primitive_solution_exists, \
    prime_valuation
from .series import DensityReport, EulerFactor, singular_series, ideal_coefficient, gamma_sum, euler_factor, \
    matched_product
