"""Exact enumeration engine for PG(k,q), its non-singular quadrics, and hyperplane families
satisfying the point-degree axiom (P1) and the codimension-2 axiom (P2)."""

from .family import HyperplaneFamily, Sign
from .gf import FieldSpec, make_field
from .pg import Codim2Subspace, Hyperplane, ProjPoint, ProjSpace, make_space
from .quadric import CountTable, Kind, QuadraticForm, expected_counts, parabolic_family, standard_form
from .sigma import Verdict, analyze, check_p1, check_p2, classify_family

__version__ = "0.1.0"

__all__ = [
    "CountTable", "Codim2Subspace", "FieldSpec", "Hyperplane", "HyperplaneFamily", "Kind",
    "ProjPoint", "ProjSpace", "QuadraticForm", "Sign", "Verdict", "analyze", "check_p1",
    "check_p2", "classify_family", "expected_counts", "make_field", "make_space",
    "parabolic_family", "standard_form",
]
