"""Independent reference computations used as test oracles.

Nothing here imports the engine's quadrature or Fresnel code: constants are
restated, reflection amplitudes are written out from the textbook formulas
and integrals are done either by plain trapezoid sums or by
``scipy.integrate.quad``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate

HBAR = 1.054571817e-34
K_B = 1.380649e-23
C = 299792458.0
EPS0 = 8.8541878128e-12
MU0 = 1.25663706212e-6
EV = 1.602176634e-19

GOLD_WP = 9.0 * EV / HBAR
GOLD_TAU = 27e-15


def zeta3(terms: int = 200_000) -> float:
    """sum_{m>=1} m^-3 by direct summation plus the Euler-Maclaurin tail."""
    m = np.arange(1, terms + 1, dtype=float)
    n = float(terms)
    return float(np.sum(m**-3.0)) + 1.0 / (2 * n**2) - 1.0 / (2 * n**3)


def ideal_casimir_pressure(d):
    return -math.pi**2 * HBAR * C / (240.0 * d**4)


def ideal_thermal_pressure(d, T):
    return -zeta3() * K_B * T / (4.0 * math.pi * d**3)


def ideal_pressure_trapezoid(d: float, T: float, n_k: int = 40_001) -> float:
    """Matsubara pressure for ideal mirrors by trapezoid sums in k.

    P = -(k_B T / pi) sum'_n int_0^inf k dk q_n * 2 e^{-2 q d} / (1 - e^{-2 q d}),
    the factor 2 counting both polarizations.
    """
    total = 0.0
    n = 0
    k_max = 40.0 / d
    while True:
        xi = 2 * math.pi * n * K_B * T / HBAR
        k = np.linspace(0.0, k_max, n_k)
        q = np.sqrt((xi / C) ** 2 + k**2)
        e = np.exp(-2 * q * d)
        with np.errstate(divide="ignore", invalid="ignore"):
            f = np.where(q > 0, k * q * 2 * e / (1 - e), 0.0)
        if n == 0:
            # k q e/(1-e) -> k/(2d) as k -> 0
            f[0] = 0.0
        term = np.trapezoid(f, k) if hasattr(np, "trapezoid") else np.trapz(f, k)
        weight = 0.5 if n == 0 else 1.0
        total += weight * term
        if n > 0 and abs(term) < 1e-15 * abs(total):
            break
        n += 1
    return -K_B * T / math.pi * total


def eps_imag(model: str, xi: float, wp: float, tau: float | None = None) -> float:
    if model == "plasma":
        return 1.0 + wp**2 / xi**2
    return 1.0 + wp**2 / (xi * (xi + 1.0 / tau))


def r_imag(model: str, pol: str, xi: float, k: float, wp: float, tau: float | None = None) -> float:
    """Imaginary-axis amplitudes written directly from the Fresnel formulas."""
    if model == "ideal":
        return -1.0 if pol == "TE" else 1.0
    q = math.sqrt((xi / C) ** 2 + k**2)
    if xi == 0.0:
        if pol == "TM":
            return 1.0
        if model == "drude":
            return 0.0
        km = math.sqrt(k**2 + (wp / C) ** 2)
        return (q - km) / (q + km)
    eps = eps_imag(model, xi, wp, tau)
    km = math.sqrt(q**2 + (eps - 1.0) * (xi / C) ** 2)
    if pol == "TE":
        return (q - km) / (q + km)
    return (eps * q - km) / (eps * q + km)


def lifshitz_quad(model: str, d: float, T: float, wp=GOLD_WP, tau=GOLD_TAU, rel=1e-12):
    """(free energy, pressure, n=0 TE pressure) from scipy quad per Matsubara term."""
    f_sum = p_sum = p_n0_te = 0.0
    n = 0
    while True:
        xi = 2 * math.pi * n * K_B * T / HBAR
        f_term = p_term = 0.0
        for pol in ("TE", "TM"):

            def f_int(k, pol=pol):
                q = math.sqrt((xi / C) ** 2 + k**2)
                rr = r_imag(model, pol, xi, k, wp, tau) ** 2 * math.exp(-2 * q * d)
                return k * math.log1p(-rr)

            def p_int(k, pol=pol):
                q = math.sqrt((xi / C) ** 2 + k**2)
                rr = r_imag(model, pol, xi, k, wp, tau) ** 2 * math.exp(-2 * q * d)
                return k * q * rr / (1.0 - rr)

            upper = 60.0 / d
            pts = [1e-3 / d, 0.1 / d, 1.0 / d, 5.0 / d]
            fv = integrate.quad(f_int, 0.0, upper, points=pts, epsabs=0, epsrel=rel, limit=400)[0]
            pv = integrate.quad(p_int, 0.0, upper, points=pts, epsabs=0, epsrel=rel, limit=400)[0]
            w = 0.5 if n == 0 else 1.0
            f_term += w * fv
            p_term += w * pv
            if n == 0 and pol == "TE":
                p_n0_te = -K_B * T / math.pi * w * pv
        f_sum += f_term
        p_sum += p_term
        if n > 2 and abs(p_term) < 1e-13 * abs(p_sum) and abs(f_term) < 1e-13 * abs(f_sum):
            break
        n += 1
    return K_B * T / (2 * math.pi) * f_sum, -K_B * T / math.pi * p_sum, p_n0_te


def fresnel_real(model: str, pol: str, omega: complex, kpar: float, wp: float, tau: float | None = None):
    """Real-frequency amplitude via eps = 1 + i sigma/(eps0 omega), branch Im k_zm >= 0."""
    if model == "plasma":
        sigma = 1j * EPS0 * wp**2 / omega
    else:
        sigma = EPS0 * wp**2 * tau / (1 - 1j * omega * tau)
    eps = 1 + 1j * sigma / (EPS0 * omega)
    kz = np.sqrt(complex(omega**2 / C**2 - kpar**2))
    if kz.imag < 0 or (kz.imag == 0 and kz.real < 0):
        kz = -kz
    kzm = np.sqrt(1j * MU0 * omega * sigma + kz**2)
    if kzm.imag < 0 or (kzm.imag == 0 and kzm.real < 0):
        kzm = -kzm
    if pol == "TE":
        return (kz - kzm) / (kz + kzm)
    return (eps * kz - kzm) / (eps * kz + kzm)


def mode_density_direct(omega, kappa, d, wp=GOLD_WP, tau=GOLD_TAU):
    """Drude TE + TM evanescent density kappa Re[2 hbar i kappa f] on a grid (diffusive r_s form)."""
    w = np.asarray(omega, dtype=float)[:, None]
    k = np.asarray(kappa, dtype=float)[None, :]
    D = (C / wp) ** 2 / tau
    kzm = np.sqrt((1j * w / D) / (1 - 1j * w * tau) - k**2 + 0j)
    kzm = np.where(kzm.imag < 0, -kzm, kzm)
    rs = (1j * k - kzm) / (1j * k + kzm)
    eps = 1 - wp**2 / (w * (w + 1j / tau))
    rp = (eps * 1j * k - kzm) / (eps * 1j * k + kzm)
    total = 0.0
    for r in (rs, rp):
        x = r * r * np.exp(-2 * k * d)
        total = total + k * np.real(2 * HBAR * 1j * k * x / (1 - x))
    return total
