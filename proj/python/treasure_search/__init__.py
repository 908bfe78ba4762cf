"""Exact values, strategy tables and simulations for discrete treasure-search games.

All probabilities are returned as ``fractions.Fraction``. Diagrams and
allocations are tuples of ints.
"""

from ._core import (
    AdversarialRevealUnsupportedError,
    BudgetExceededError,
    DoorBudgetError,
    ExceedsUnitError,
    InvalidArgumentError,
    InvalidTableError,
    NonMonotoneError,
    TreasureError,
    base_table,
    binomial,
    certify,
    closed_form_value,
    count_allocations,
    enumerate_allocations,
    enumerate_partitions,
    evaluate,
    lp_value,
    min_valid_n,
    p_lambda,
    partition_weight,
    scaled_table,
    searcher_best_response,
    simulate,
    verify_equalizing,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
