"""Verification-grade computational toolkit for prime counting in
arithmetic progressions and the pretentious-distance machinery behind it."""

__version__ = "0.1.0"

from .arith import (
    ArithmeticTables,
    build_tables,
    chebyshev_psi,
    dirichlet_convolve,
    load_tables,
    save_tables,
    tau_r,
    theta_sum,
)

__all__ = [
    "ArithmeticTables",
    "build_tables",
    "chebyshev_psi",
    "dirichlet_convolve",
    "load_tables",
    "save_tables",
    "tau_r",
    "theta_sum",
    "__version__",
]
