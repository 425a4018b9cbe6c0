"""Calabi-Yau varieties built from Sylvester's sequence: weights, invertible
potentials, orbifold Hodge numbers and the extremal families."""

from .exceptions import (
    BudgetExceeded,
    ConstructionError,
    InputError,
    PoleError,
    SingularMatrixError,
    UnsupportedInputError,
)
from .wps import WeightSystem, DiagonalAction, is_calabi_yau, well_formed
from .potential import InvertiblePotential, faithfulness
from .hodge import HodgeDiamond, betti_sum, diamond, euler, middle_dim
from .families import family_x, loop_family

__all__ = [
    "BudgetExceeded", "ConstructionError", "InputError", "PoleError",
    "SingularMatrixError", "UnsupportedInputError",
    "WeightSystem", "DiagonalAction", "is_calabi_yau", "well_formed",
    "InvertiblePotential", "faithfulness",
    "HodgeDiamond", "betti_sum", "diamond", "euler", "middle_dim",
    "family_x", "loop_family",
]

__version__ = "0.1.0"
