"""Physical constants (SI, CODATA 2018) and characteristic thermal scales."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "PhysicalConstants",
    "CODATA_2018",
    "HBAR",
    "K_B",
    "C",
    "EPS0",
    "MU0",
    "E_CHARGE",
    "thermal_frequency",
    "thermal_wavelength",
    "bose_occupation",
]


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float
    k_B: float
    c: float
    eps0: float
    mu0: float
    e: float
    version: str


CODATA_2018 = PhysicalConstants(
    hbar=1.054571817e-34,  # J s
    k_B=1.380649e-23,  # J/K
    c=299792458.0,  # m/s
    eps0=8.8541878128e-12,  # F/m
    mu0=1.25663706212e-6,  # H/m
    e=1.602176634e-19,  # C
    version="CODATA-2018",
)

HBAR = CODATA_2018.hbar
K_B = CODATA_2018.k_B
C = CODATA_2018.c
EPS0 = CODATA_2018.eps0
MU0 = CODATA_2018.mu0
E_CHARGE = CODATA_2018.e


def thermal_frequency(T: float) -> float:
    """Return the thermal angular frequency k_B T / hbar in rad/s."""
    if T < 0:
        raise DomainError(f"temperature must be >= 0 K, got {T!r}")
    return K_B * T / HBAR


def thermal_wavelength(T: float) -> float:
    """Return the reduced thermal wavelength c / (2 omega_T) in m.

    Distances well below this value are in the quantum (zero-point dominated)
    regime, distances well above it in the classical thermal regime.
    """
    if T <= 0:
        raise DomainError("thermal wavelength is infinite at T = 0")
    return C / (2.0 * thermal_frequency(T))


def bose_occupation(omega, T: float):
    """Mean Bose occupation 1/(exp(hbar omega / k_B T) - 1).

    Accepts scalars or arrays of ``omega``. Returns zero at ``T == 0``.
    ``omega == 0`` at finite temperature is a divergence and raises.
    """
    if T < 0:
        raise DomainError(f"temperature must be >= 0 K, got {T!r}")
    w = np.asarray(omega, dtype=float)
    if T == 0:
        out = np.zeros_like(w)
        return out if out.ndim else float(out)
    if np.any(w <= 0):
        raise DomainError("Bose occupation diverges at omega = 0 for T > 0")
    x = HBAR * w / (K_B * T)
    with np.errstate(over="ignore"):
        out = 1.0 / np.expm1(x)
    return out if out.ndim else float(out)


def matsubara_spacing(T: float) -> float:
    """Spacing 2 pi k_B T / hbar of the bosonic Matsubara frequencies."""
    return 2.0 * math.pi * thermal_frequency(T)
