"""Convex Hamilton-Jacobi toolkit: Hopf-Lax-Oleinik solves, exact trigonometric
initial data, non-degeneracy checks and long-time decay certificates."""

from ._core import (  # noqa: F401
    Hamiltonian,
    TrigPolynomial,
    InvalidInput,
    NumericalFailure,
    quadratic,
    abs_linear,
    max_affine,
    hamiltonian_sum,
    coercify,
    conjugate_symbolic,
    subdifferential_at,
    support_function,
    polar_membership,
    minimal_norm_point,
    legendre,
    bohr_coefficient,
    module_info,
    lift_info,
    check_nd,
    check_nd_lattice,
    is_linear_near_zero,
    solve_decay,
    lifted_probe,
    lax_friedrichs,
    decay_certificate,
    run_decay_config,
)

__all__ = [
    "Hamiltonian",
    "TrigPolynomial",
    "InvalidInput",
    "NumericalFailure",
    "quadratic",
    "abs_linear",
    "max_affine",
    "hamiltonian_sum",
    "coercify",
    "conjugate_symbolic",
    "subdifferential_at",
    "support_function",
    "polar_membership",
    "minimal_norm_point",
    "legendre",
    "bohr_coefficient",
    "module_info",
    "lift_info",
    "check_nd",
    "check_nd_lattice",
    "is_linear_near_zero",
    "solve_decay",
    "lifted_probe",
    "lax_friedrichs",
    "decay_certificate",
    "run_decay_config",
]
