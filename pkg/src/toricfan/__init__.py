"""Exact-arithmetic toolkit for simplicial complete toric varieties.

The package models a toric variety purely by its fan: primitive ray
generators plus full-dimensional simplicial cones. On top of that it
provides singularity classification, wall-relation intersection theory,
extremal contractions, quasi-etale universal covers, standard constructions
(weighted projective spaces, projectivized rank-2 sums, blow-ups), and the
Picard-number-2/3 classification machinery, all in exact integer and
rational arithmetic.
"""

from .fans import Fan, Wall, ValidationReport, FanError, validate, is_complete, \
    multiplicity, walls, picard_number, stellar_subdivision
from .lattice import AbelianGroupShape, IntMatrix, LatticeError, primitive_part, \
    quotient_group, smith_normal_form, solve_affine_dual

__version__ = "0.1.0"

__all__ = [
    "Fan", "Wall", "ValidationReport", "FanError",
    "validate", "is_complete", "multiplicity", "walls", "picard_number",
    "stellar_subdivision",
    "AbelianGroupShape", "IntMatrix", "LatticeError",
    "primitive_part", "quotient_group", "smith_normal_form", "solve_affine_dual",
]
