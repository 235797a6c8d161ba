"""Automata and exact enumeration for words with constrained palindromic factors."""

from .words import (
    Word,
    PalFacSet,
    Eertree,
    palindromic_factors,
    naive_palindromic_factors,
    enumerate_palindromes,
    minimal_elements,
)

__all__ = [
    "Word",
    "PalFacSet",
    "Eertree",
    "palindromic_factors",
    "naive_palindromic_factors",
    "enumerate_palindromes",
    "minimal_elements",
]
