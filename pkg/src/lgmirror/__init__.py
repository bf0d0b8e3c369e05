"""Exact Laurent-polynomial mirrors for complete intersections in Grassmannians of planes."""

from .exact import LaurentPolynomial, RationalFunction, VariableSet, parse_expression
from .transform import ModelSpec, PipelineTrace, run_main_theorem

__all__ = ["LaurentPolynomial", "RationalFunction", "VariableSet", "parse_expression",
           "ModelSpec", "PipelineTrace", "run_main_theorem"]
