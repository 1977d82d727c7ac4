from enum import Enum


class Engine(Enum):
    """Counting engine for N(P)."""

    Direct = 'direct'
    """str: Full enumeration of the integer box"""
    Mitm = 'mitm'
    """str: Value tables of a variable split, matched against each other"""
    Auto = 'auto'
    """str: Direct enumeration when it fits the budget, otherwise mitm"""
