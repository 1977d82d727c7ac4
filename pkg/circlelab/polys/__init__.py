"""Polynomial systems over O_K, polar forms and Weil restriction."""
from .polynomial import Polynomial, IntPolynomial
from .system import PolySystem, parse_system, evaluate
from .box import BoxRegion
from .polar import polar_eval, polar_eval_array
from .weil import WeilSystem, weil_restrict, coordinate_polynomials, integer_variables, flat_coordinates
from .separable import variable_components, offending_monomial
