"""Finite state MV-algebras, their state operators, and the two dualities with spaces.

Modules: :mod:`~statone.mv` (product and table MV-algebras), :mod:`~statone.operators`
(state operators), :mod:`~statone.stone` (Boolean case), :mod:`~statone.simplex`
(states and affine representation), :mod:`~statone.bauer` (simplex duality) and
:mod:`~statone.cli`.
"""
from .errors import CapExceededError, IntertwiningError, InvalidOperatorError, SignatureMismatch
from .mv import ChainSignature, MvElement, ProductMvAlgebra, TableMvAlgebra
from .operators import OperatorSpec, StateHom

__all__ = [
    "CapExceededError", "ChainSignature", "IntertwiningError", "InvalidOperatorError", "MvElement",
    "OperatorSpec", "ProductMvAlgebra", "SignatureMismatch", "StateHom", "TableMvAlgebra",
]
