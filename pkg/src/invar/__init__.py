"""Exact invariant theory of finite matrix groups over cyclotomic fields."""

from invar.cyclotomic import CycNum, cyclotomic_poly
from invar.errors import BudgetExceeded, InvarError, ValidationError
from invar.matrix import CycMatrix

__all__ = [
    "BudgetExceeded",
    "CycMatrix",
    "CycNum",
    "InvarError",
    "ValidationError",
    "cyclotomic_poly",
]

__version__ = "0.1.0"
