"""cyclowalk: exact periodicity analysis of 3-state quantum walks on cycles.

The package decides whether the walk operator on the N-cycle has finite order,
entirely in exact cyclotomic arithmetic: finite periods come with verified
block orders, infinite ones with an independently checkable non-integrality
certificate.
"""

from .cyclo import (
    CycloNum,
    CycloPoly,
    LevelCapExceeded,
    LevelMismatch,
    NotAMultiple,
    Rational,
    common_level,
    cyclotomic_poly,
    descend,
    get_level_cap,
    in_ring_of_integers,
    set_level_cap,
    totient,
    zeta,
)
from .period import (
    CertifiedInfinite,
    CoinConditionReport,
    CoinEntryCheck,
    Finite,
    PeriodResult,
    TraceCertificate,
    UnknownUpTo,
    block_order,
    certify_infinite,
    char_poly_exact,
    check_coin_necessary,
    verify_certificate,
    walk_period,
)
from .walk import (
    CoinMatrix,
    DimensionMismatch,
    ExactMatrix,
    ShiftType,
    WalkSpec,
    WalkState,
    build_blocks,
    build_full,
    delta_state,
    evolve,
    fourier_coin,
    fourier_transform,
    grover_coin,
    inverse_fourier_transform,
    load_coin_file,
    spectrum_numeric,
    sqrt_cyclo,
    uniform_state,
)

__version__ = "0.1.0"

__all__ = [
    "CycloNum",
    "CycloPoly",
    "Rational",
    "LevelMismatch",
    "NotAMultiple",
    "LevelCapExceeded",
    "DimensionMismatch",
    "totient",
    "cyclotomic_poly",
    "zeta",
    "descend",
    "in_ring_of_integers",
    "common_level",
    "get_level_cap",
    "set_level_cap",
    "CoinMatrix",
    "ExactMatrix",
    "ShiftType",
    "WalkSpec",
    "WalkState",
    "grover_coin",
    "fourier_coin",
    "sqrt_cyclo",
    "build_blocks",
    "build_full",
    "evolve",
    "delta_state",
    "uniform_state",
    "fourier_transform",
    "inverse_fourier_transform",
    "spectrum_numeric",
    "load_coin_file",
    "Finite",
    "CertifiedInfinite",
    "UnknownUpTo",
    "PeriodResult",
    "TraceCertificate",
    "CoinConditionReport",
    "CoinEntryCheck",
    "block_order",
    "walk_period",
    "certify_infinite",
    "check_coin_necessary",
    "char_poly_exact",
    "verify_certificate",
]
