"""Pseudospectral solver for the dissipative Ostrovsky-Hunter equation.

The heavy lifting lives in the compiled extension; this package just
re-exports it.
"""

from ._core import (
    Grid,
    cfl_dt,
    check_elliptic_identity,
    coupling_product,
    dealias,
    derivative,
    inner_product,
    l2_norm,
    linear_symbol,
    linf_norm,
    mean,
    prepare_initial_data,
    run,
    solve_p,
    verify,
)

__all__ = [
    "Grid",
    "cfl_dt",
    "check_elliptic_identity",
    "coupling_product",
    "dealias",
    "derivative",
    "inner_product",
    "l2_norm",
    "linear_symbol",
    "linf_norm",
    "mean",
    "prepare_initial_data",
    "run",
    "solve_p",
    "verify",
]
