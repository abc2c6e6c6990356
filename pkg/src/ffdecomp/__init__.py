"""Exact low-rank decomposition of order-3 tensors over finite fields."""

from .budget import Budget, BudgetExhausted
from .decompose import decompose, tensor_rank
from .field import GF, field, field_of_order
from .reduction import (
    ConstantlyUnsat,
    GadgetTensor,
    Nae3SatInstance,
    assignment_to_decomposition,
    extract_assignment,
    nae_brute_force,
    reduce_to_rank2_wildcard,
    verify_nae,
)
from .tensor import Decomposition, evaluate, identity_gadget
from .wildcard import WILDCARD, rank1_wildcard, rank1_wildcard_gf2, rank1_wildcard_matrix

__all__ = [
    "Budget",
    "BudgetExhausted",
    "ConstantlyUnsat",
    "Decomposition",
    "GF",
    "GadgetTensor",
    "Nae3SatInstance",
    "WILDCARD",
    "assignment_to_decomposition",
    "decompose",
    "evaluate",
    "extract_assignment",
    "field",
    "field_of_order",
    "identity_gadget",
    "nae_brute_force",
    "rank1_wildcard",
    "rank1_wildcard_gf2",
    "rank1_wildcard_matrix",
    "reduce_to_rank2_wildcard",
    "tensor_rank",
    "verify_nae",
]
