"""Classical and areal Mahler measures, Zeta Mahler functions and their oracles."""

from .errors import (
    ArealMahlerError,
    BranchCutError,
    ConvergenceError,
    DomainError,
    InvalidSpecError,
    NonFiniteError,
    PoleError,
    ZeroCountMismatch,
)
from .mahler import (
    MeasureValue,
    UniPoly,
    deninger_volume,
    jensen_mahler,
    m_qk,
    m_xyk,
    md_qk,
    md_xyk,
    pritsker_areal,
)
from .zetamahler import find_zeros, mahler_from_derivative, z_x_plus_k, z_xyk, zd_xy, zd_xyk

__version__ = "0.1.0"

__all__ = [
    "ArealMahlerError",
    "BranchCutError",
    "ConvergenceError",
    "DomainError",
    "InvalidSpecError",
    "NonFiniteError",
    "PoleError",
    "ZeroCountMismatch",
    "MeasureValue",
    "UniPoly",
    "deninger_volume",
    "jensen_mahler",
    "m_qk",
    "m_xyk",
    "md_qk",
    "md_xyk",
    "pritsker_areal",
    "find_zeros",
    "mahler_from_derivative",
    "z_x_plus_k",
    "z_xyk",
    "zd_xy",
    "zd_xyk",
]
