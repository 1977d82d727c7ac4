"""Exact counts of N(P) and of the multilinear singular locus."""
from .enum import Engine
from .job import CountJob
from .engines import CountResult, ComponentTable, count_points, count_direct, count_mitm, box_component_tables
from .singular import count_singular_multilinear
