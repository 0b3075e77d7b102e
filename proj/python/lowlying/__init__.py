"""Character families, zeros of their L-functions and one-level densities."""

import json

from ._lowlying import (
    CapacityError,
    ConvergenceError,
    DirichletChar,
    DomainError,
    G_m_closed_form,
    Kernel,
    TestFunction,
    TestShape,
    density,
    family,
    find_zeros,
    gauss_factor,
    gauss_sum,
    kernel_density,
    mobius_split,
    predicted_integral,
    quadratic_character,
    suites,
    tau_m_bruteforce,
    verify,
    zero_count_expected,
)


def density_report(kind, X, **kwargs):
    """density() decoded from its JSON report."""
    return json.loads(density(kind, X, format="json", **kwargs))


__all__ = [
    "CapacityError",
    "ConvergenceError",
    "DirichletChar",
    "DomainError",
    "G_m_closed_form",
    "Kernel",
    "TestFunction",
    "TestShape",
    "density",
    "density_report",
    "family",
    "find_zeros",
    "gauss_factor",
    "gauss_sum",
    "kernel_density",
    "mobius_split",
    "predicted_integral",
    "quadratic_character",
    "suites",
    "tau_m_bruteforce",
    "verify",
    "zero_count_expected",
]
