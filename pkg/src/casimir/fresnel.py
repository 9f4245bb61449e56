"""Single-interface Fresnel amplitudes for vacuum / nonmagnetic medium.

Real-frequency amplitudes use the vacuum axial wavevector ``k_z`` on the
contour running from ``omega/c`` through the origin to ``+i inf``; the
medium wavevector is always taken on the decaying branch ``Im k_zm >= 0``.
Imaginary-axis amplitudes (``omega = i xi``) are real and are what the
Matsubara engine consumes.
"""

from __future__ import annotations

import enum
import math

import numpy as np
from scipy.optimize import brentq

from .errors import InputError, RootNotFoundError, UnsupportedModelError
from .materials import Drude, PerfectConductor, Plasma, Vacuum, permittivity
from .scales import C

__all__ = [
    "Polarization",
    "TE",
    "TM",
    "branch_sqrt",
    "axial_vacuum",
    "axial_medium",
    "reflection_te",
    "reflection_tm",
    "reflection",
    "reflection_kz",
    "reflection_imag_axis",
    "imag_axis_excess",
    "surface_plasmon_frequency",
]


class Polarization(str, enum.Enum):
    TE = "TE"
    TM = "TM"

    @classmethod
    def parse(cls, value) -> "Polarization":
        if isinstance(value, cls):
            return value
        key = str(value).upper()
        aliases = {"S": "TE", "TE_S": "TE", "P": "TM", "TM_P": "TM"}
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise InputError(f"unknown polarization {value!r}") from None


TE = Polarization.TE
TM = Polarization.TM


def _scalar(out):
    return out if np.ndim(out) else complex(out)


def branch_sqrt(z):
    """Square root on the branch Im >= 0 (and Re >= 0 when purely real).

    Principal root first, then a sign flip wherever it landed in the lower
    half plane. Signed zeros in ``z`` therefore do not matter.
    """
    s = np.sqrt(np.asarray(z, dtype=complex))
    flip = (s.imag < 0) | ((s.imag == 0) & (s.real < 0))
    s = np.where(flip, -s, s)
    return _scalar(s)


def axial_vacuum(omega, k_par):
    """Vacuum k_z = sqrt(omega^2/c^2 - k_par^2), real or i*kappa."""
    w = np.asarray(omega, dtype=complex)
    k = np.asarray(k_par, dtype=float)
    a = w / C
    # factored so that k_par == omega/c gives an exact zero
    return branch_sqrt((a - k) * (a + k))


def _medium_term(model, omega):
    """i mu0 omega sigma(omega), i.e. (eps - 1) omega^2 / c^2, finite at omega = 0."""
    w = np.asarray(omega, dtype=complex)
    if isinstance(model, Vacuum):
        return np.zeros_like(w)
    if isinstance(model, Plasma):
        return np.full_like(w, -(model.omega_p / C) ** 2)
    if isinstance(model, Drude):
        return -(model.omega_p / C) ** 2 * w / (w + 1j / model.tau)
    raise UnsupportedModelError(f"no medium wavevector for {type(model).__name__}")


def axial_medium(model, omega, k_par):
    """Axial wavevector inside the medium, sqrt(i mu0 omega sigma + k_z^2), Im >= 0."""
    w = np.asarray(omega, dtype=complex)
    k = np.asarray(k_par, dtype=float)
    return branch_sqrt(_medium_term(model, w) + w**2 / C**2 - k**2)


def reflection_te(model, omega, k_par):
    """TE (s) amplitude (k_z - k_zm)/(k_z + k_zm); -1 for a perfect conductor."""
    w = np.asarray(omega, dtype=complex)
    k = np.asarray(k_par, dtype=float)
    shape = np.broadcast(w, k).shape
    if isinstance(model, PerfectConductor):
        return _scalar(np.full(shape, -1.0 + 0j))
    if isinstance(model, Vacuum):
        return _scalar(np.zeros(shape, dtype=complex))
    kz = np.asarray(axial_vacuum(w, k))
    kzm = np.asarray(axial_medium(model, w, k))
    # k_z^2 - k_zm^2 = -medium term; avoids cancellation when the medium is dilute
    r = -_medium_term(model, w) / (kz + kzm) ** 2
    return _scalar(np.broadcast_to(r, shape).copy())


def reflection_tm(model, omega, k_par):
    """TM (p) amplitude (eps k_z - k_zm)/(eps k_z + k_zm); +1 for a perfect conductor."""
    w = np.asarray(omega, dtype=complex)
    k = np.asarray(k_par, dtype=float)
    shape = np.broadcast(w, k).shape
    if isinstance(model, PerfectConductor):
        return _scalar(np.full(shape, 1.0 + 0j))
    if isinstance(model, Vacuum):
        return _scalar(np.zeros(shape, dtype=complex))
    w, k = np.broadcast_arrays(w, k)
    static = w == 0
    ws = np.where(static, 1.0, w)
    eps = np.asarray(permittivity(model, ws))
    kz = np.asarray(axial_vacuum(ws, k))
    kzm = np.asarray(axial_medium(model, ws, k))
    r = (eps * kz - kzm) / (eps * kz + kzm)
    # |eps| -> infinity at omega -> 0 for both conductors
    r = np.where(static, 1.0 + 0j, r)
    return _scalar(r)


def reflection_kz(model, omega, kz, pol):
    """Amplitude as a function of the vacuum axial wavevector ``kz``.

    Works for complex ``omega`` and any ``kz`` on the contour (real in the
    propagating sector, ``i kappa`` in the evanescent one). ``omega`` must be
    nonzero for the TM amplitude of a conductor.
    """
    pol = Polarization.parse(pol)
    w = np.asarray(omega, dtype=complex)
    kz = np.asarray(kz, dtype=complex)
    shape = np.broadcast(w, kz).shape
    if isinstance(model, PerfectConductor):
        return np.full(shape, -1.0 + 0j if pol is TE else 1.0 + 0j)
    if isinstance(model, Vacuum):
        return np.zeros(shape, dtype=complex)
    m = _medium_term(model, w)
    kzm = np.asarray(branch_sqrt(m + kz**2))
    if pol is TE:
        return np.broadcast_to(-m / (kz + kzm) ** 2, shape).copy()
    eps = np.asarray(permittivity(model, w))
    return np.broadcast_to((eps * kz - kzm) / (eps * kz + kzm), shape).copy()


def reflection(model, omega, k_par, pol):
    pol = Polarization.parse(pol)
    return reflection_te(model, omega, k_par) if pol is TE else reflection_tm(model, omega, k_par)


def imag_axis_excess(model, xi):
    """(eps(i xi) - 1) xi^2 / c^2, the medium's extra decay constant squared.

    Finite at xi = 0 for every model: 1/lambda_p^2 for plasma, 0 for Drude.
    """
    x = np.asarray(xi, dtype=float)
    if isinstance(model, Vacuum):
        return np.zeros_like(x)
    if isinstance(model, Plasma):
        return np.full_like(x, (model.omega_p / C) ** 2)
    if isinstance(model, Drude):
        return (model.omega_p / C) ** 2 * x / (x + 1.0 / model.tau)
    raise UnsupportedModelError(f"no permittivity for {type(model).__name__}")


def imag_axis_rq(model, xi, q, pol):
    """Imaginary-axis amplitude as a function of xi and q = sqrt(xi^2/c^2 + k^2).

    Vectorized over broadcastable ``xi`` and ``q``; ``xi == 0`` entries get
    the static limits. This is the form the Matsubara engine integrates.
    """
    pol = Polarization.parse(pol)
    xi = np.asarray(xi, dtype=float)
    q = np.asarray(q, dtype=float)
    shape = np.broadcast(xi, q).shape
    if isinstance(model, PerfectConductor):
        return np.full(shape, -1.0 if pol is TE else 1.0)
    if isinstance(model, Vacuum):
        return np.zeros(shape)
    excess = imag_axis_excess(model, xi)
    kappa_m = np.sqrt(q**2 + excess)
    static = xi == 0
    if pol is TE:
        r = -excess / (q + kappa_m) ** 2
        if isinstance(model, Drude):
            # Bohr-van Leeuwen: transparent to static magnetic fields
            r = np.where(static, 0.0, r)
        return np.broadcast_to(r, shape).copy()
    with np.errstate(divide="ignore", invalid="ignore"):
        eps_q = q * excess / np.where(static, 1.0, xi / C) ** 2 + q
        r = (eps_q - kappa_m) / (eps_q + kappa_m)
    return np.broadcast_to(np.where(static, 1.0, r), shape).copy()


def reflection_imag_axis(model, xi, k_par, pol):
    """Real reflection amplitude at omega = i xi (xi >= 0).

    ``xi = 0`` returns the static limits: perfect conductor (-1, +1),
    plasma (static Meissner-like TE value, +1), Drude (0, +1).
    """
    xi = np.asarray(xi, dtype=float)
    if np.any(xi < 0):
        raise InputError("xi must be >= 0")
    k = np.asarray(k_par, dtype=float)
    q = np.sqrt((xi / C) ** 2 + k**2)
    out = imag_axis_rq(model, xi, q, pol)
    return out if out.ndim else float(out)


def surface_plasmon_frequency(model: Plasma, k_par: float) -> float:
    """Real root of the TM pole eps(omega) kappa + kappa_m = 0 below the light line.

    The root lies in (0, min(c k_par, omega_p/sqrt 2)); found with Brent's method.
    """
    if not isinstance(model, Plasma):
        raise UnsupportedModelError("surface plasmon search needs a lossless Plasma model")
    if not k_par > 0:
        raise InputError("k_par must be > 0")
    wp = model.omega_p

    def pole(w):
        kappa = math.sqrt(max(k_par**2 - (w / C) ** 2, 0.0))
        kappa_m = math.sqrt(k_par**2 + (wp**2 - w**2) / C**2)
        return ((1.0 - wp**2 / w**2) * kappa + kappa_m) / k_par

    hi = min(C * k_par, wp / math.sqrt(2.0))
    lo = 1e-9 * hi
    g_lo, g_hi = pole(lo), pole(hi)
    if not (g_lo < 0 < g_hi):
        raise RootNotFoundError(f"no sign change of the TM pole condition in [{lo:g}, {hi:g}] rad/s")
    return brentq(pole, lo, hi, xtol=1e-14 * hi, rtol=4 * np.finfo(float).eps, maxiter=500)
