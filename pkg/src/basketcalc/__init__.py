"""Exact basket arithmetic and plurigenus search for 3-folds of general type."""

from .basket import (
    Basket,
    BasketError,
    Pair,
    basket_from_json,
    basket_to_json,
    canonicalize,
    delta,
    is_prime_packing,
    pack,
    packing_defect,
    prime_packing_candidates,
    rr_correction,
    sigma,
    sigma_prime,
)
from .canonical import InconsistencyError, epsilon, initial_basket, sequence, step_basket
from .farey import farey_level, neighbors, new_fractions
from .formal import (
    ChiVector,
    FormalBasket,
    NegativeCoefficient,
    PackingChoice,
    assemble_ladder,
    chi_closed,
    chi_seq,
    k3,
    rr_invert,
)

__version__ = "0.1.0"
