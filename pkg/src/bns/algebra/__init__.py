"""Exact linear algebra over the integers, prime fields and the rationals."""

from bns.algebra.complex import FilteredComplex
from bns.algebra.gauss import gauss_reduce, reduce_pair
from bns.algebra.graded import GradedPiece, Group, graded_pieces, homology
from bns.algebra.matrix import SparseIntMatrix, elementary_divisors, smith_normal_form
from bns.algebra.rings import QQ, ZZ, Integers, PrimeField, Rationals, ring_for

__all__ = [
    "FilteredComplex",
    "GradedPiece",
    "Group",
    "Integers",
    "PrimeField",
    "QQ",
    "Rationals",
    "SparseIntMatrix",
    "ZZ",
    "elementary_divisors",
    "gauss_reduce",
    "graded_pieces",
    "homology",
    "reduce_pair",
    "ring_for",
    "smith_normal_form",
]
