"""Exact degree computations for graded modules and equivariant cohomology fixtures."""
from ._accel import BACKEND
from .series import SeriesExpr, degree_at_one, expand, pole_order

__version__ = "0.1.0"
__all__ = ["BACKEND", "SeriesExpr", "degree_at_one", "expand", "pole_order"]
