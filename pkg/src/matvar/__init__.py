"""Equivariant cohomology classes of matrix matroid varieties."""

from .matroid import Configuration
from .polyring import GradedPolynomial, VariableSet
from .restriction import TestConfiguration
from .solver import KnownCount, SolveOptions, compute_class, solve

__all__ = ["Configuration", "GradedPolynomial", "VariableSet", "TestConfiguration",
           "KnownCount", "SolveOptions", "compute_class", "solve"]
