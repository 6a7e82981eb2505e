"""Exact computation of Weyl-invariant standard coordinates, versal forms
and hyperplane-section bounds for ADE rational double points."""

from .poly import Polynomial, VarTable, parse
from .solvelist import RuleSet, SolveList

__all__ = ["Polynomial", "VarTable", "parse", "RuleSet", "SolveList"]

__version__ = "0.1.0"
