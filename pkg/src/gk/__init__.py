"""Grassmann and Clifford algebra kernel: blades, fermionic matrices, q-calculus, rotors."""

from gk.blades import Multivector, blade_canonicalize, grade_project, wedge
from gk.clifford import (
    CliffordElement,
    Signature,
    anticommutator,
    bracket,
    commutator,
    contract_left,
    contract_right,
    geometric_product,
    left_contraction,
)
from gk.errors import DomainError, UnsupportedError

__all__ = [
    "CliffordElement",
    "DomainError",
    "Multivector",
    "Signature",
    "UnsupportedError",
    "anticommutator",
    "blade_canonicalize",
    "bracket",
    "commutator",
    "contract_left",
    "contract_right",
    "geometric_product",
    "grade_project",
    "left_contraction",
    "wedge",
]
