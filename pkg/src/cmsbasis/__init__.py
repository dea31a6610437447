"""Exact eigenfunctions of deformed Calogero-Moser-Sutherland operators.

Everything is computed over Q(theta); see the submodules for the pieces.
"""
from .scalarfield import ONE, THETA, ZERO, RationalFunction
from .partitions import IntVector, Partition, HookShape
from .multipoly import MultiPoly, VarSpace
from .opspec import OperatorSpec, PRESETS, preset, parse_spec

__version__ = "0.1.0"

__all__ = [
    "RationalFunction",
    "THETA",
    "ONE",
    "ZERO",
    "Partition",
    "IntVector",
    "HookShape",
    "MultiPoly",
    "VarSpace",
    "OperatorSpec",
    "PRESETS",
    "preset",
    "parse_spec",
]
