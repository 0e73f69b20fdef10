"""Finite braces, pre-Lie rings and p-groups as exact tables."""
from .abelian import AbelianPGroup
from .brace import Brace, verify_brace_axioms
from .prelie import LieRing, PreLieRing, verify_lie_axioms, verify_prelie_axioms

__version__ = "0.1.0"

__all__ = [
    "AbelianPGroup",
    "Brace",
    "LieRing",
    "PreLieRing",
    "verify_brace_axioms",
    "verify_lie_axioms",
    "verify_prelie_axioms",
]
