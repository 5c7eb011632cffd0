"""Coset enumeration and finite checks for groups with small element orders."""

from .enumerator import CosetTable, EnumerationResult, Status, Strategy, check_table, enumerate_cosets, to_permutation_rep
from .permcalc import PermGroup, Permutation
from .presentation import Presentation, Word, builtin_presentation, parse_presentation, parse_word

__version__ = "0.1.0"

__all__ = [
    "CosetTable",
    "EnumerationResult",
    "PermGroup",
    "Permutation",
    "Presentation",
    "Status",
    "Strategy",
    "Word",
    "builtin_presentation",
    "check_table",
    "enumerate_cosets",
    "parse_presentation",
    "parse_word",
    "to_permutation_rep",
]
