"""Singular locus dimensions and the hypothesis of the asymptotic formula."""
from .enum import BdMethod, BdConfidence
from .singular_locus import BdEstimate, estimate_Bd
from .report import HypothesisReport, CorollaryBounds, check_main_hypothesis, corollary_bounds, s_values, \
    hypothesis_lhs
