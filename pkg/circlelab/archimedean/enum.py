from enum import Enum


class OuterMethod(Enum):
    """How the outer integral over |gamma| <= H is evaluated."""

    Quadrature = 'quadrature'
    """str: Gauss-Legendre panels of unit width on every axis"""
    MonteCarlo = 'monte_carlo'
    """str: Uniform samples, used when nT exceeds the quadrature dimension limit"""
