"""Optimal LCD codes over GF(2) and GF(3) in dimensions 2 to 4."""

from .classifier import ClassificationResult, are_equivalent, canonical_form, classify
from .codes import MultiplicityVector, is_lcd, min_weight
from .gf import GFMatrix
from .theory import largest_lcd_weight, optimal_generator

__all__ = [
    "ClassificationResult", "GFMatrix", "MultiplicityVector", "are_equivalent",
    "canonical_form", "classify", "is_lcd", "largest_lcd_weight", "min_weight",
    "optimal_generator",
]
