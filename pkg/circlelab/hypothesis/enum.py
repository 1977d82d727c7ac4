from enum import Enum


class BdMethod(Enum):
    """How B_d is obtained."""

    UserOverride = 'user_override'
    """str: The configured value is taken as given"""
    FiniteFieldDimension = 'finite_field_dimension'
    """str: Growth of point counts of the singular locus over F_p"""


class BdConfidence(Enum):
    """How much an estimate of B_d can be trusted."""

    Asserted = 'asserted'
    """str: Supplied by the user"""
    Fitted = 'fitted'
    """str: Integer closest to a log-log slope within tolerance"""
    Convention = 'convention'
    """str: Empty singular locus, dimension -1 by convention"""
