"""Nonlinear heat equation with absorption on sectors.

Thin wrapper over the compiled ``_sector_heat`` module.
"""

from ._sector_heat import (
    ConfigError,
    DomainError,
    DomainSpec,
    NumericalError,
    VerificationReport,
    absorption_flow,
    bessel_first_zero,
    bessel_j,
    bessel_oracle,
    default_config,
    elliptic_residual,
    erf_product,
    kernel,
    kernel_domination_check,
    parse_config,
    psi0,
    psi0_constant,
    regime,
    run,
    sector_ball_eigen,
    solve_psi0,
    weight,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "DomainSpec",
    "NumericalError",
    "VerificationReport",
    "absorption_flow",
    "bessel_first_zero",
    "bessel_j",
    "bessel_oracle",
    "default_config",
    "elliptic_residual",
    "erf_product",
    "kernel",
    "kernel_domination_check",
    "parse_config",
    "psi0",
    "psi0_constant",
    "regime",
    "run",
    "sector_ball_eigen",
    "solve_psi0",
    "weight",
]
