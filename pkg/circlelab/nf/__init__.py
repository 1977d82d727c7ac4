"""Exact arithmetic in number fields, ideals and residue systems."""
from .enum import ResidueMode
from .field import NumberField, FieldElement, TraceNorm, field_from_poly, element_mul, trace_norm, dedekind_criterion
from .ideals import IdealLattice, PrimeIdeal, denominator_ideal, primes_above, residue_system, enumerate_ideals, \
    ideal_mul, ideal_power, ideal_to_omega, fractional_lattice, unit_ideal, is_ideal
