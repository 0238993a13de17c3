"""Symbolic CAR algebra engine: normal ordering, state evaluation, symmetry batteries."""

from carsym._core import (
    Dyadic,
    DomainError,
    InvalidExpression,
    Orthogonal,
    Permutation,
    PLMap,
    Polynomial,
    PreconditionError,
    SpreadingMap,
    State,
    annihilator,
    car_relation_deviation,
    check_dyadic_invariance,
    check_extremality,
    check_symmetry,
    clustering_gap,
    creator,
    ergodic_average,
    ergodic_average_sampled,
    folner_count,
    folner_subset_report,
    mixture,
    oracle_product_expectation,
    parse,
    position,
    product_state,
    pullback,
    rescale,
    rescale_inverse,
    sample_folner,
    state,
    vacuum_state,
)

__all__ = [
    "Dyadic",
    "DomainError",
    "InvalidExpression",
    "Orthogonal",
    "Permutation",
    "PLMap",
    "Polynomial",
    "PreconditionError",
    "SpreadingMap",
    "State",
    "annihilator",
    "car_relation_deviation",
    "check_dyadic_invariance",
    "check_extremality",
    "check_symmetry",
    "clustering_gap",
    "creator",
    "ergodic_average",
    "ergodic_average_sampled",
    "folner_count",
    "folner_subset_report",
    "mixture",
    "oracle_product_expectation",
    "parse",
    "position",
    "product_state",
    "pullback",
    "rescale",
    "rescale_inverse",
    "sample_folner",
    "state",
    "vacuum_state",
]
