"""Multi-index polynomial algebra over real and complex coefficient vectors."""

from ssmkit.polyfield._backend import backend_name
from ssmkit.polyfield.polymap import (
    PRUNE_TOL,
    PolyMap,
    grlex_key,
    max_coefficient_difference,
    monomials_of_degree,
)
from ssmkit.polyfield.realification import complexify, pairing_matrices, realify

__all__ = [
    "PRUNE_TOL",
    "PolyMap",
    "backend_name",
    "complexify",
    "grlex_key",
    "max_coefficient_difference",
    "monomials_of_degree",
    "pairing_matrices",
    "realify",
]
