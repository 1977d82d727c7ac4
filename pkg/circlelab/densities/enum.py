from enum import Enum


class DensityMethod(Enum):
    """How a local factor is evaluated."""

    Character = 'character'
    """str: Complete character sums over all arc centers of the prime power"""
    Counting = 'counting'
    """str: Solutions modulo the prime power, by orthogonality the same rational"""
    Auto = 'auto'
    """str: Character sums while they fit the residue budget, counting otherwise"""


class SeriesStatus(Enum):
    """Whether convergence claims about the singular series are backed by the hypothesis."""

    Verified = 'verified'
    Unverified = 'unverified'
