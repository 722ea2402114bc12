"""Neron-Severi lattices of moduli of G-bundles on curves."""

from ._core import (
    ComputationError,
    Error,
    Group,
    InputError,
    catalog,
    dynkin_by_weights,
    dynkin_index,
    group_from_root_datum,
    ns_basis,
    ns_bruteforce,
    product,
    pullback,
    rank_formula,
    report,
    run_cli,
    standard_catalog,
)

__all__ = [
    "ComputationError",
    "Error",
    "Group",
    "InputError",
    "catalog",
    "dynkin_by_weights",
    "dynkin_index",
    "group_from_root_datum",
    "ns_basis",
    "ns_bruteforce",
    "product",
    "pullback",
    "rank_formula",
    "report",
    "run_cli",
    "standard_catalog",
]
