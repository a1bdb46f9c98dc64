"""Generalized filter functions and Zeno/anti-Zeno decay rates for driven two-level systems."""

from ._core import (
    AngleProfile,
    EulerDrive,
    OhmicSpectralDensity,
    QuadratureConfig,
    bessel_j,
    classify_regimes,
    decay_rate_dephasing,
    decay_rate_polaron,
    decay_rate_weak,
    phi_i,
    phi_r,
    q_dephasing,
    q_dephasing_closed,
    q_full,
    q_large_spin,
    q_rwa,
    q_rwa_sinusoidal_series,
    survival,
)

__all__ = [
    "AngleProfile",
    "EulerDrive",
    "OhmicSpectralDensity",
    "QuadratureConfig",
    "bessel_j",
    "classify_regimes",
    "decay_rate_dephasing",
    "decay_rate_polaron",
    "decay_rate_weak",
    "phi_i",
    "phi_r",
    "q_dephasing",
    "q_dephasing_closed",
    "q_full",
    "q_large_spin",
    "q_rwa",
    "q_rwa_sinusoidal_series",
    "survival",
]
