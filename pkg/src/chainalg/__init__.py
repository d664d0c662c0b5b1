"""chainalg: exact computational homological algebra over Z and Z/p^k."""

from .exactlin import IntMatrix, SnfDecomposition, snf, solve_int_linear, kernel_basis
from .fgmod import Ring, INTEGERS, FgModule, ModMorphism, SesWitness

__version__ = "0.1.0"

__all__ = [
    "IntMatrix",
    "SnfDecomposition",
    "snf",
    "solve_int_linear",
    "kernel_basis",
    "Ring",
    "INTEGERS",
    "FgModule",
    "ModMorphism",
    "SesWitness",
]
