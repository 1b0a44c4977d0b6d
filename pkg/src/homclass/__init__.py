"""Homomorphism and conjunctive-query toolkit.

Relational structures, exact width measures with witnesses, cores, minors,
first-order model checking, witness-carrying instance reductions and
homomorphism counting, each cross-checked against brute-force search.
"""

from .kernels import BACKEND
from .structures import RelSymbol, Structure, Vocabulary

__all__ = ["BACKEND", "RelSymbol", "Structure", "Vocabulary"]
__version__ = "0.1.0"
