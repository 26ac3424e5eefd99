"""Exact computations with finite-dimensional weak Hopf algebras and weak Doi-Hopf modules."""

from .errors import WHKError
from .hopfcore import Algebra, Coalgebra, WeakBialgebra, WeakHopfAlgebra, check_wba, check_wha
from .kernel import QQ, Field, LinMap, Subspace, Tensor, ein
from .report import Check, Report

__all__ = [
    "QQ",
    "Algebra",
    "Check",
    "Coalgebra",
    "Field",
    "LinMap",
    "Report",
    "Subspace",
    "Tensor",
    "WHKError",
    "WeakBialgebra",
    "WeakHopfAlgebra",
    "check_wba",
    "check_wha",
    "ein",
]
