"""Exponential sums, the major/minor arc dissection and the Weyl-type dichotomy."""
from .enum import Membership
from .errors import ArcOverlapError, PreconditionError
from .dissection import ArcCenter, DissectionPlan, dissect, varpi
from .sums import ArcPoint, CircleIdentityReport, MinorArcReport, as_flat_alpha, exp_sum, exp_sum_grid, \
    circle_identity_check, minor_arc_integral, minor_arc_sweep
from .classify import ApproximationLink, ArcClassification, classify, classify_e_grid, find_approximation, \
    q_levels, bound_holds
from .identities import WeylReport, WeylTrial, MajorArcReport, MajorArcSweep, weyl_identity_check, \
    major_arc_expansion_check, major_arc_sweep
