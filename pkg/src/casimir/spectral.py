"""Real-frequency, mode-resolved diagnostics of the plate-plate pressure.

The pressure is written as an integral over real frequencies::

    P = hbar/pi^2 * int_0^inf d omega [1/2 + n(omega, T)] G(omega)
    G = Re int_0^inf k dk k_z sum_sigma f_sigma(omega, k_z)
    f = r1 r2 e^{2 i k_z d} / (1 - r1 r2 e^{2 i k_z d})

normalized so that rotating it onto the Matsubara poles reproduces
:func:`casimir.lifshitz.pressure` exactly. ``G`` splits into a propagating
part (``0 <= k_z <= omega/c``) and an evanescent part (``k_z = i kappa``);
in the latter ``hbar G`` is half the integral over kappa of the mode
density ``kappa Re[2 hbar (i kappa) f]`` plotted in the spectral map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .errors import ConvergenceError, DomainError, PoleError, UnsupportedModelError
from .fresnel import TE, TM, Polarization, reflection_kz
from .lifshitz import (
    PlateSystem,
    PressureBreakdown,
    QuadratureConfig,
    pressure,
    pressure_zero_temperature,
)
from .materials import Drude, PerfectConductor, Plasma, Vacuum, magnetic_diffusivity, material_to_dict
from .quadrature import composite_gauss_legendre, merge_breaks, tanh_sinh
from .scales import C, HBAR, CODATA_2018, bose_occupation, thermal_frequency

__all__ = [
    "SpectralSample",
    "SpectralMap",
    "SpectrumRecord",
    "RealAxisPressure",
    "roundtrip_factor",
    "mode_density",
    "mode_density_grid",
    "default_grids",
    "spectral_map",
    "spectrum_kernel",
    "pressure_spectrum",
    "thermal_sector_pressures",
    "zero_point_pressure_ray",
    "pressure_real_axis",
]

PREFACTOR = HBAR / math.pi**2
POLE_TOL = 1e-12
SECTORS = ("propagating", "evanescent")
# e^{-x} below 1e-30 past these dimensionless cutoffs
_KAPPA_BREAKS = np.array(
    [0.0, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 0.03, 0.1, 0.3, 0.6, 1.0, 1.5, 2.2, 3.0, 4.5, 6.5, 9.0, 13.0, 18.0, 25.0, 35.0]
)
_OMEGA_BREAKS = np.array(
    [0.0, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 0.03, 0.1, 0.3, 0.6, 1.0, 1.5, 2.2, 3.0, 4.5, 6.5, 9.0, 13.0, 18.0, 25.0, 33.0, 45.0]
)
DEFAULT_RAY_ANGLE = math.pi / 12


def _pols(pol):
    if pol in (None, "sum", "SUM"):
        return (TE, TM)
    return (Polarization.parse(pol),)


def _roundtrip(sys, omega, kz, pol, check_pole=True):
    r1 = reflection_kz(sys.material_1, omega, kz, pol)
    r2 = reflection_kz(sys.material_2, omega, kz, pol)
    x = r1 * r2 * np.exp(2j * kz * sys.gap)
    denom = 1.0 - x
    if check_pole is None:
        # quadrature use: grazing nodes approach the integrable kz -> 0 singularity
        return x / denom
    pole = np.abs(denom) < POLE_TOL
    if check_pole and np.any(pole):
        raise PoleError("round-trip denominator vanishes (cavity resonance)")
    with np.errstate(divide="ignore", invalid="ignore"):
        f = np.where(pole, np.nan + 0j, x / np.where(pole, 1.0, denom))
    return f


def roundtrip_factor(sys: PlateSystem, omega, kz):
    """Multiple-reflection factor f per polarization, ``{"TE": f, "TM": f}``."""
    out = {}
    for pol in (TE, TM):
        f = _roundtrip(sys, omega, kz, pol)
        out[pol.value] = f if np.ndim(f) else complex(f)
    return out


@dataclass(frozen=True)
class SpectralSample:
    omega: float
    kappa: float
    pol: str
    value: float


def mode_density_grid(sys: PlateSystem, omega, kappa, pol="sum", check_pole=False):
    """kappa Re[2 hbar (i kappa) f(omega, i kappa)] on broadcast grids (J s / m^2).

    Cells sitting on a pole are NaN unless ``check_pole`` is set.
    """
    w = np.asarray(omega, dtype=float)
    kap = np.asarray(kappa, dtype=float)
    if np.any(kap <= 0):
        raise DomainError("kappa must be > 0 for evanescent samples")
    kz = 1j * kap
    total = 0.0
    for p in _pols(pol):
        f = _roundtrip(sys, w, kz, p, check_pole=check_pole)
        total = total + kap * np.real(2.0 * HBAR * kz * f)
    return total


def mode_density(sys: PlateSystem, omega: float, kappa: float, pol="sum") -> SpectralSample:
    value = mode_density_grid(sys, omega, kappa, pol, check_pole=True)
    label = "sum" if pol in (None, "sum", "SUM") else Polarization.parse(pol).value
    return SpectralSample(float(omega), float(kappa), label, float(value))


def _first_drude(sys):
    for m in (sys.material_1, sys.material_2):
        if isinstance(m, Drude):
            return m
    return None


def default_grids(sys: PlateSystem, n_omega: int = 200, n_kappa: int = 200):
    """Log grids over [1e-3, 1e2]/tau (or c/d without a Drude plate) and [1e-2, 1e2]/d."""
    drude = _first_drude(sys)
    w0 = 1.0 / drude.tau if drude else C / sys.gap
    return (
        np.logspace(math.log10(1e-3 * w0), math.log10(1e2 * w0), n_omega),
        np.logspace(math.log10(1e-2 / sys.gap), math.log10(1e2 / sys.gap), n_kappa),
    )


@dataclass
class SpectralMap:
    """Mode density on an (omega, kappa) grid; ``values[pol][i, j]`` at (omega_i, kappa_j)."""

    omega_grid: np.ndarray
    kappa_grid: np.ndarray
    values: dict
    kappa_cutoff: float
    diffusion_curve: np.ndarray | None
    diffusivity: float | None
    pole_cells: np.ndarray
    system: PlateSystem

    def argmax(self, pol="sum"):
        v = np.where(np.isnan(self.values[pol]), -np.inf, self.values[pol])
        i, j = np.unravel_index(int(np.argmax(v)), v.shape)
        return float(self.omega_grid[i]), float(self.kappa_grid[j]), float(v[i, j])

    def csv_rows(self):
        """Long-form rows (omega, kappa, pol, value) in row-major grid order."""
        for i, w in enumerate(self.omega_grid):
            for j, k in enumerate(self.kappa_grid):
                for pol in ("TE", "TM", "sum"):
                    yield float(w), float(k), pol, float(self.values[pol][i, j])

    def sidecar(self):
        sys = self.system
        return {
            "omega_grid_rad_s": [float(x) for x in self.omega_grid],
            "kappa_grid_per_m": [float(x) for x in self.kappa_grid],
            "overlays": {
                "kappa_cutoff_per_m": self.kappa_cutoff,
                "diffusion_curve_omega_rad_s": None
                if self.diffusion_curve is None
                else [float(x) for x in self.diffusion_curve],
                "diffusivity_m2_s": self.diffusivity,
            },
            "materials": [material_to_dict(sys.material_1), material_to_dict(sys.material_2)],
            "gap_m": sys.gap,
            "pole_cells": int(self.pole_cells.sum()),
            "constants": CODATA_2018.version,
            "engine_version": __version__,
        }


def spectral_map(sys: PlateSystem, omega_grid=None, kappa_grid=None) -> SpectralMap:
    """Fill the mode-density map per polarization and summed, with overlays.

    Overlays are the cutoff kappa = 1/d and, for a Drude plate, the
    diffusion curve omega = D kappa^2 evaluated on ``kappa_grid``.
    """
    if omega_grid is None or kappa_grid is None:
        dw, dk = default_grids(sys)
        omega_grid = dw if omega_grid is None else omega_grid
        kappa_grid = dk if kappa_grid is None else kappa_grid
    w = np.asarray(omega_grid, dtype=float)
    k = np.asarray(kappa_grid, dtype=float)
    if w.size < 2 or k.size < 2:
        raise DomainError("map grids need at least two points each")
    W, K = np.meshgrid(w, k, indexing="ij")
    values = {}
    for pol in (TE, TM):
        values[pol.value] = mode_density_grid(sys, W, K, pol)
    values["sum"] = values["TE"] + values["TM"]
    drude = _first_drude(sys)
    D = magnetic_diffusivity(drude) if drude else None
    return SpectralMap(
        omega_grid=w,
        kappa_grid=k,
        values=values,
        kappa_cutoff=1.0 / sys.gap,
        diffusion_curve=None if D is None else D * k**2,
        diffusivity=D,
        pole_cells=np.isnan(values["sum"]),
        system=sys,
    )


# k-integrals at a real frequency


def _require_lossy(sys):
    for m in (sys.material_1, sys.material_2):
        if isinstance(m, Plasma):
            raise UnsupportedModelError(
                "real-frequency integration needs dissipative or ideal plates; the lossless plasma "
                "integrand is a distribution (use the Matsubara engine)"
            )


def _both_ideal(sys):
    return isinstance(sys.material_1, PerfectConductor) and isinstance(sys.material_2, PerfectConductor)


def _evanescent_breaks(sys, omega):
    d = sys.gap
    extra = []
    for m in (sys.material_1, sys.material_2):
        if isinstance(m, Drude):
            extra += [math.sqrt(omega / magnetic_diffusivity(m)) * d, m.omega_p * d / C]
    return merge_breaks(_KAPPA_BREAKS, extra, lo=0.0, hi=_KAPPA_BREAKS[-1]) / d


def _evanescent(sys, omega, pol, n_nodes):
    kap, w = composite_gauss_legendre(_evanescent_breaks(sys, omega), n_nodes)
    f = _roundtrip(sys, omega, 1j * kap, pol)
    return float(np.sum(w * kap**2 * np.real(1j * f)))


def _propagating_breaks(sys, omega, pol):
    d = sys.gap
    a = omega / C
    pts = [0.0, a]
    j = 1
    while j * math.pi / d < a * (1 + 1e-12) + math.pi / (2 * d):
        kz0 = j * math.pi / d
        pts.append(kz0)
        rr = reflection_kz(sys.material_1, omega, kz0, pol) * reflection_kz(sys.material_2, omega, kz0, pol)
        rr = complex(np.ravel(rr)[0])
        if abs(rr) > 0:
            phase = math.atan2(rr.imag, rr.real)
            center = kz0 - phase / (2 * d)
            width = -math.log(min(abs(rr), 1 - 1e-16)) / (2 * d)
            pts += [center + s * width for s in (-16, -4, -1, 0, 1, 4, 16)]
        j += 1
    pts = np.unique(np.clip(pts, 0.0, a))
    return pts


def _propagating(sys, omega, pol, level):
    """int_0^{omega/c} k_z^2 Re f dk_z with tanh-sinh panels split at resonances."""
    a = omega / C
    if _both_ideal(sys):
        # Re f = -1/2 + (pi/2d) sum_j delta(k_z - j pi/d): mode staircase minus continuum
        d = sys.gap
        jmax = int(math.floor(a * d / math.pi))
        modes = sum((j * math.pi / d) ** 2 for j in range(1, jmax + 1))
        return math.pi / (2 * d) * modes - a**3 / 6.0
    breaks = _propagating_breaks(sys, omega, pol)
    total = 0.0
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        if hi <= lo:
            continue
        kz, w = tanh_sinh(lo, hi, level=level)
        f = _roundtrip(sys, omega, kz, pol, check_pole=None)
        total += float(np.sum(w * kz**2 * np.real(f)))
    return total


def spectrum_kernel(sys: PlateSystem, omega: float, cfg: QuadratureConfig | None = None):
    """G(omega) split as ``{(pol, sector): (value, error)}`` in m^-3."""
    cfg = cfg or QuadratureConfig()
    _require_lossy(sys)
    out = {}
    trivial = isinstance(sys.material_1, Vacuum) or isinstance(sys.material_2, Vacuum)
    for pol in (TE, TM):
        if trivial:
            out[(pol.value, "propagating")] = (0.0, 0.0)
            out[(pol.value, "evanescent")] = (0.0, 0.0)
            continue
        hi = _propagating(sys, omega, pol, level=6)
        lo = _propagating(sys, omega, pol, level=5)
        out[(pol.value, "propagating")] = (hi, abs(hi - lo))
        if _both_ideal(sys):
            out[(pol.value, "evanescent")] = (0.0, 0.0)
        else:
            hi = _evanescent(sys, omega, pol, cfg.k_nodes)
            lo = _evanescent(sys, omega, pol, cfg.k_nodes // 2)
            out[(pol.value, "evanescent")] = (hi, abs(hi - lo))
    return out


@dataclass(frozen=True)
class SpectrumRecord:
    """Pressure spectral density dP/d omega in Pa s/rad, by part, polarization and sector."""

    omega: float
    temperature: float
    zero_point: dict
    thermal: dict
    errors: dict = field(default_factory=dict)

    @property
    def total(self):
        return sum(self.zero_point.values()) + sum(self.thermal.values())

    def rows(self):
        for part, table in (("zero_point", self.zero_point), ("thermal", self.thermal)):
            for (pol, sector), value in sorted(table.items()):
                yield part, pol, sector, value


def pressure_spectrum(sys: PlateSystem, T: float, omega: float, cfg: QuadratureConfig | None = None):
    """Frequency-resolved pressure integrand at one real omega > 0."""
    if not omega > 0:
        raise DomainError("omega must be > 0")
    if T < 0:
        raise DomainError("temperature must be >= 0")
    nbar = bose_occupation(omega, T)
    kernel = spectrum_kernel(sys, omega, cfg)
    zp = {key: PREFACTOR * 0.5 * v for key, (v, _) in kernel.items()}
    th = {key: PREFACTOR * nbar * v for key, (v, _) in kernel.items()}
    errs = {key: PREFACTOR * (0.5 + nbar) * e for key, (_, e) in kernel.items()}
    return SpectrumRecord(float(omega), float(T), zp, th, errs)


def _omega_breaks(sys, T, omega_max):
    wT = thermal_frequency(T)
    pts = list(_OMEGA_BREAKS * wT)
    d = sys.gap
    j = 1
    while j * math.pi * C / d < omega_max:
        pts.append(j * math.pi * C / d)
        j += 1
    drude = _first_drude(sys)
    if drude:
        pts += [0.3 / drude.tau, 1.0 / drude.tau, 3.0 / drude.tau]
    return merge_breaks(pts, [omega_max], lo=0.0, hi=omega_max)


def thermal_sector_pressures(sys: PlateSystem, T: float, cfg: QuadratureConfig | None = None, omega_max=None):
    """Thermal (Bose-weighted) pressure per (pol, sector), integrated over omega on the real axis.

    Returns ``{(pol, sector): (value_Pa, error_Pa)}``.
    """
    cfg = cfg or QuadratureConfig()
    if not T > 0:
        return {(p.value, s): (0.0, 0.0) for p in (TE, TM) for s in SECTORS}
    _require_lossy(sys)
    if omega_max is None:
        omega_max = 45.0 * thermal_frequency(T)
    breaks = _omega_breaks(sys, T, omega_max)
    results = []
    for n in (cfg.k_nodes, cfg.k_nodes // 2):
        w_nodes, w_weights = composite_gauss_legendre(breaks, n)
        acc = {}
        kerr = {}
        for w, wt in zip(w_nodes, w_weights):
            nbar = bose_occupation(w, T)
            for key, (v, e) in spectrum_kernel(sys, w, cfg).items():
                acc[key] = acc.get(key, 0.0) + wt * nbar * v
                kerr[key] = kerr.get(key, 0.0) + wt * nbar * e
        results.append((acc, kerr))
    (hi, kerr), (lo, _) = results
    return {key: (PREFACTOR * hi[key], PREFACTOR * (abs(hi[key] - lo[key]) + kerr[key])) for key in hi}


def _ray_k_rule(n):
    near = np.array([0.0, 0.25, 0.5, 0.75, 0.9, 0.97, 1.0, 1.03, 1.1, 1.3, 1.6, 2.0])
    far = np.array([0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 14.0, 22.0, 32.0, 45.0])
    u1, w1 = composite_gauss_legendre(near, n)
    u2, w2 = composite_gauss_legendre(far, n)
    return u1, w1, u2, w2


def _ray_integral(sys, phi, n, s_breaks):
    d = sys.gap
    s, ws = composite_gauss_legendre(s_breaks, n)
    u1, w1, u2, w2 = _ray_k_rule(n)
    tilt = np.exp(1j * phi)
    omega = s * tilt
    a = s / C
    k = np.concatenate([a[:, None] * u1[None, :], 2.0 * a[:, None] + u2[None, :] / d], axis=1)
    wk = np.concatenate([a[:, None] * w1[None, :], np.broadcast_to(w2[None, :] / d, (s.size, u2.size))], axis=1)
    from .fresnel import branch_sqrt

    kz = np.asarray(branch_sqrt((omega[:, None] / C) ** 2 - k**2))
    out = []
    for pol in (TE, TM):
        f = _roundtrip(sys, omega[:, None], kz, pol)
        g = np.sum(wk * k * kz * f, axis=1)
        out.append(float(np.real(tilt * np.sum(ws * g))))
    return np.array(out)


def zero_point_pressure_ray(sys: PlateSystem, cfg: QuadratureConfig | None = None, phi: float = DEFAULT_RAY_ANGLE):
    """Zero-point part of the real-frequency integral, taken along omega = s e^{i phi}.

    Any 0 < phi < pi/2 gives the same value because the zero-point integrand
    has no poles in the first quadrant; a small tilt regularizes the cavity
    resonances that make the literal real-axis integral a distribution.
    Returns ``(te, tm, error)`` in Pa.
    """
    cfg = cfg or QuadratureConfig()
    if not 0 < phi < math.pi / 2:
        raise DomainError("ray angle must lie in (0, pi/2)")
    if isinstance(sys.material_1, Vacuum) or isinstance(sys.material_2, Vacuum):
        return 0.0, 0.0, 0.0
    d = sys.gap
    s_max = 36.0 / math.sin(phi)
    pts = [0.0, 1e-4, 1e-3, 1e-2, 0.05, 0.2, 0.5]
    pts += list(np.arange(1.0, s_max, 1.0))
    for m in (sys.material_1, sys.material_2):
        if isinstance(m, (Plasma, Drude)):
            pts += [m.omega_p * d / C / math.sqrt(2.0), m.omega_p * d / C]
    breaks = merge_breaks(pts, [s_max], lo=0.0, hi=s_max) * C / d
    hi = _ray_integral(sys, phi, cfg.k_nodes, breaks)
    lo = _ray_integral(sys, phi, cfg.k_nodes // 2, breaks)
    te, tm = 0.5 * PREFACTOR * hi
    return te, tm, 0.5 * PREFACTOR * float(np.sum(np.abs(hi - lo)))


@dataclass(frozen=True)
class RealAxisPressure:
    """Real-frequency evaluation; ``thermal_sectors`` maps (pol, sector) to Pa."""

    total: float
    te: float
    tm: float
    zero_point: float
    thermal: float
    thermal_sectors: dict
    estimated_error: float
    temperature: float
    gap: float

    @property
    def by_polarization(self):
        return {"TE": self.te, "TM": self.tm}

    def as_breakdown(self) -> PressureBreakdown:
        return PressureBreakdown(
            self.total, self.te, self.tm, 0.0, 0.0, 0.0, self.estimated_error, self.temperature, self.gap
        )


def pressure_real_axis(
    sys: PlateSystem, T: float, cfg: QuadratureConfig | None = None, phi: float = DEFAULT_RAY_ANGLE
) -> RealAxisPressure:
    """Pressure from the real-frequency form, independent of the Matsubara sum.

    The Bose-weighted part is integrated on the real axis sector by sector;
    the zero-point part along a slightly tilted ray (see
    :func:`zero_point_pressure_ray`).
    """
    cfg = cfg or QuadratureConfig()
    if T < 0:
        raise DomainError("temperature must be >= 0")
    _require_lossy(sys)
    zp_te, zp_tm, zp_err = zero_point_pressure_ray(sys, cfg, phi)
    sectors = thermal_sector_pressures(sys, T, cfg)
    th_te = sum(v for (pol, _), (v, _) in sectors.items() if pol == "TE")
    th_tm = sum(v for (pol, _), (v, _) in sectors.items() if pol == "TM")
    err = zp_err + sum(e for _, e in sectors.values())
    te, tm = zp_te + th_te, zp_tm + th_tm
    total = te + tm
    if err > max(cfg.rel_tol, 1e-4) * abs(total) and total != 0:
        raise ConvergenceError(f"real-axis pressure error {err:.3g} too large", estimate=total, error=err)
    return RealAxisPressure(
        total=total,
        te=te,
        tm=tm,
        zero_point=zp_te + zp_tm,
        thermal=th_te + th_tm,
        thermal_sectors={k: v for k, (v, _) in sectors.items()},
        estimated_error=err,
        temperature=float(T),
        gap=sys.gap,
    )
