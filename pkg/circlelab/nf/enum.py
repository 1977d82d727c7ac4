from enum import Enum


class ResidueMode(Enum):
    """Which residue system :func:`circlelab.nf.ideals.residue_system` returns."""

    Quotient = 'quotient_of_n'
    """str: Representatives of n / a n, used as summation range of complete sums"""
    Fractional = 'fractional_in_R'
    """str: Representatives of n a^-1 / n inside the fundamental box, used as arc centers"""
