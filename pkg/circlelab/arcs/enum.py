from enum import Enum


class Membership(Enum):
    """Which part of the Weyl-type dichotomy a point alpha falls into."""

    Degree = 'I1'
    """str: The bound holds at some degree d and fails at every larger degree"""
    Approximable = 'I2'
    """str: The bound fails at every degree, so alpha is approximable at all degrees"""
