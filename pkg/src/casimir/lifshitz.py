"""Free energy, pressure and entropy of two parallel plates on the Matsubara axis.

With q = sqrt(xi^2/c^2 + k^2) and the dimensionless variable x = 2 q d the
finite-temperature sums read::

    F = k_B T / (8 pi d^2) * sum'_n  int_{x_n}^inf  x ln(1 - r1 r2 e^-x) dx
    P = -k_B T / (8 pi d^3) * sum'_n int_{x_n}^inf x^2 r1 r2 e^-x / (1 - r1 r2 e^-x) dx

summed over both polarizations, with x_n = 2 xi_n d / c and the n = 0 term
at half weight. At T = 0 the sum becomes an integral over y = 2 xi d / c::

    F =  hbar c / (32 pi^2 d^3) int_0^inf dy int_y^inf x ln(...) dx
    P = -hbar c / (32 pi^2 d^4) int_0^inf dy int_y^inf x^2 (...) dx
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.special import zeta

from .errors import ConvergenceError, DomainError, InputError, UnsupportedModelError
from .fresnel import TE, TM, imag_axis_rq
from .materials import Drude, PerfectConductor, Plasma, Vacuum, plasma_wavelength
from .quadrature import composite_gauss_legendre, merge_breaks
from .scales import C, HBAR, K_B

__all__ = [
    "PlateSystem",
    "QuadratureConfig",
    "PressureBreakdown",
    "FreeEnergyResult",
    "EntropyResult",
    "ThermalCorrection",
    "ModelComparison",
    "Asymptote",
    "Regime",
    "matsubara_xi",
    "free_energy_area",
    "free_energy_and_pressure",
    "pressure",
    "free_energy_zero_temperature",
    "pressure_zero_temperature",
    "entropy_area",
    "thermal_correction",
    "asymptote",
    "compare_models",
    "ideal_pressure_zero_temperature",
    "ideal_free_energy_zero_temperature",
    "ideal_pressure_high_temperature",
    "ideal_free_energy_high_temperature",
]

ZETA3 = float(zeta(3.0))

# offsets from the lower limit x_n; dense at the start where the integrand
# is small but reflection amplitudes can vary on short scales
_X_OFFSETS = np.array([0.0, 1e-3, 1e-2, 0.05, 0.2, 0.5, 1.0, 2.0, 4.0, 7.0, 11.0, 17.0, 25.0, 36.0, 48.0, 60.0])
_X_SPAN = 60.0
_Y_BREAKS = np.array([0.0, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 3e-2, 0.1, 0.3, 1.0, 2.0, 4.0, 8.0, 14.0, 22.0, 32.0, 45.0, 60.0])
# tail terms must fall this far below rel_tol before the Matsubara sum stops;
# keeps the truncation smooth in T so entropy differences stay clean
_TRUNCATION_MARGIN = 1e-6


@dataclass(frozen=True)
class PlateSystem:
    material_1: object
    material_2: object
    gap: float

    def __post_init__(self):
        if not self.gap > 0:
            raise DomainError(f"gap must be > 0, got {self.gap!r}")

    @classmethod
    def symmetric(cls, material, gap):
        return cls(material, material, gap)


@dataclass(frozen=True)
class QuadratureConfig:
    """Convergence knobs.

    ``k_nodes`` is the Gauss-Legendre order per panel (the error estimate
    compares against half that order). ``matsubara_max`` of ``None`` selects
    automatic truncation; an integer N sums exactly the terms n = 0..N, with
    the estimated remainder reported as error rather than added.
    """

    k_nodes: int = 24
    matsubara_max: int | None = None
    rel_tol: float = 1e-6
    temp_step_fraction: float = 1e-2
    matsubara_cap: int = 1_000_000

    def __post_init__(self):
        if self.k_nodes < 16:
            raise InputError("k_nodes must be >= 16")
        if not 0 < self.rel_tol <= 1e-2:
            raise InputError("rel_tol must lie in (0, 1e-2]")
        if self.matsubara_max is not None and self.matsubara_max < 0:
            raise InputError("matsubara_max must be >= 0")
        if not 0 < self.temp_step_fraction < 0.5:
            raise InputError("temp_step_fraction must lie in (0, 0.5)")


@dataclass(frozen=True)
class PressureBreakdown:
    """Pressure in Pa; negative is attractive.

    ``n0_*`` hold the (half-weighted) Matsubara n = 0 contribution; they are
    zero for T = 0 results, where no discrete term exists.
    """

    total: float
    te: float
    tm: float
    n0: float
    n0_te: float
    n0_tm: float
    estimated_error: float
    temperature: float
    gap: float
    n_terms: int = 0

    @property
    def by_polarization(self):
        return {"TE": self.te, "TM": self.tm}

    @property
    def by_matsubara_n0(self):
        return self.n0


@dataclass(frozen=True)
class FreeEnergyResult:
    """Free energy per area in J/m^2, same decomposition as :class:`PressureBreakdown`."""

    value: float
    te: float
    tm: float
    n0: float
    n0_te: float
    n0_tm: float
    estimated_error: float
    temperature: float
    gap: float
    n_terms: int = 0

    @property
    def total(self):
        return self.value

    @property
    def by_polarization(self):
        return {"TE": self.te, "TM": self.tm}


@dataclass(frozen=True)
class EntropyResult:
    value: float
    estimated_error: float
    step: float
    coarse: float
    temperature: float
    gap: float


@dataclass(frozen=True)
class ThermalCorrection:
    value: float
    estimated_error: float
    at_temperature: PressureBreakdown
    at_zero: PressureBreakdown


@dataclass(frozen=True)
class ModelComparison:
    p_drude: PressureBreakdown
    p_plasma: PressureBreakdown
    f_drude: FreeEnergyResult
    f_plasma: FreeEnergyResult

    @property
    def difference(self):
        return self.p_drude.total - self.p_plasma.total

    @property
    def plasma_n0_te(self):
        return self.p_plasma.n0_te

    @property
    def free_energy_ratio(self):
        return self.f_drude.value / self.f_plasma.value


class Regime(str, enum.Enum):
    NONRETARDED = "nonretarded"
    RETARDED = "retarded"
    THERMAL = "thermal"


@dataclass(frozen=True)
class Asymptote:
    regime: Regime
    free_energy: float
    pressure: float
    note: str = ""


def matsubara_xi(T: float, n: int) -> float:
    """n-th bosonic Matsubara frequency 2 pi n k_B T / hbar."""
    if T <= 0:
        raise DomainError("Matsubara frequencies need T > 0")
    if n < 0:
        raise DomainError("Matsubara index must be >= 0")
    return 2.0 * math.pi * n * K_B * T / HBAR


# closed forms for ideal mirrors


def ideal_pressure_zero_temperature(d: float) -> float:
    return -math.pi**2 * HBAR * C / (240.0 * d**4)


def ideal_free_energy_zero_temperature(d: float) -> float:
    return -math.pi**2 * HBAR * C / (720.0 * d**3)


def ideal_pressure_high_temperature(d: float, T: float) -> float:
    return -ZETA3 * K_B * T / (4.0 * math.pi * d**3)


def ideal_free_energy_high_temperature(d: float, T: float) -> float:
    return -ZETA3 * K_B * T / (8.0 * math.pi * d**2)


# integrand machinery


def _is_trivial(sys: PlateSystem) -> bool:
    return isinstance(sys.material_1, Vacuum) or isinstance(sys.material_2, Vacuum)


def _check_supported(sys: PlateSystem):
    for m in (sys.material_1, sys.material_2):
        if not isinstance(m, (PerfectConductor, Plasma, Drude, Vacuum)):
            raise UnsupportedModelError(f"unknown material model {m!r}")


def _x_rule(n_nodes: int):
    return composite_gauss_legendre(_X_OFFSETS, n_nodes)


def _k_integrals(sys: PlateSystem, xi, lower, cfg: QuadratureConfig):
    """x-integrals at each (xi, lower limit) pair.

    Returns arrays of shape (2, 2, len(xi)) indexed [quantity, pol] where
    quantity 0 is the free-energy kernel int x ln(1 - R e^-x) and 1 is the
    pressure kernel int x^2 R e^-x/(1 - R e^-x); plus a matching error array
    from comparison with a rule of half the order.
    """
    d = sys.gap
    xi = np.asarray(xi, dtype=float)[:, None]
    lower = np.asarray(lower, dtype=float)[:, None]
    out = np.zeros((2, 2, xi.shape[0]))
    err = np.zeros_like(out)
    for order_idx, n in enumerate((cfg.k_nodes, cfg.k_nodes // 2)):
        u, w = _x_rule(n)
        x = lower + u[None, :]
        q = x / (2.0 * d)
        decay = np.exp(-x)
        for p, pol in enumerate((TE, TM)):
            rr = imag_axis_rq(sys.material_1, xi, q, pol) * imag_axis_rq(sys.material_2, xi, q, pol)
            a = rr * decay
            f_kernel = x * np.log1p(-a)
            p_kernel = x * x * a / (1.0 - a)
            vals = (np.sum(f_kernel * w, axis=1), np.sum(p_kernel * w, axis=1))
            for qty in range(2):
                if order_idx == 0:
                    out[qty, p] = vals[qty]
                else:
                    err[qty, p] = np.abs(out[qty, p] - vals[qty])
    return out, err


@dataclass
class _Sums:
    # [quantity, pol]
    total: np.ndarray = field(default_factory=lambda: np.zeros((2, 2)))
    n0: np.ndarray = field(default_factory=lambda: np.zeros((2, 2)))
    error: np.ndarray = field(default_factory=lambda: np.zeros(2))
    n_terms: int = 0


def _first_run_of_three(small, carry):
    """Index of the first element completing three consecutive Trues, or None."""
    ext = np.concatenate([np.ones(carry, dtype=int), small.astype(int)])
    hits = np.flatnonzero(np.convolve(ext, np.ones(3, dtype=int), mode="valid") == 3)
    if hits.size == 0:
        return None
    return int(hits[0]) + 2 - carry


def _trailing_trues(small, carry):
    if small.all():
        return min(carry + small.size, 2)
    return min(small.size - 1 - int(np.flatnonzero(~small)[-1]), 2)


def _matsubara_sums(sys: PlateSystem, T: float, cfg: QuadratureConfig) -> _Sums:
    d = sys.gap
    xi1 = matsubara_xi(T, 1)
    x1 = 2.0 * xi1 * d / C
    res = _Sums()
    if _is_trivial(sys):
        return res
    fixed = cfg.matsubara_max
    cap = cfg.matsubara_cap if fixed is None else fixed + 1
    partial = np.zeros((2, 2))
    qerr = np.zeros(2)
    recent = []  # last two per-term totals, for the tail estimate
    carry = 0
    n_start = 0
    batch = 64
    converged = fixed is not None
    while n_start < cap:
        n = np.arange(n_start, min(n_start + batch, cap))
        vals, errs = _k_integrals(sys, n * xi1, n * x1, cfg)
        weight = np.where(n == 0, 0.5, 1.0)
        vals = vals * weight
        errs = errs * weight
        if n_start == 0:
            res.n0 = vals[:, :, 0].copy()
        per_term = vals.sum(axis=1)  # (quantity, n)
        stop = None
        if fixed is None:
            running = partial.sum(axis=1)[:, None] + np.cumsum(per_term, axis=1)
            small = np.all(np.abs(per_term) <= cfg.rel_tol * _TRUNCATION_MARGIN * np.abs(running), axis=0)
            stop = _first_run_of_three(small, carry)
            carry = _trailing_trues(small, carry)
        k = n.size if stop is None else stop + 1
        partial += vals[:, :, :k].sum(axis=2)
        qerr += errs[:, :, :k].sum(axis=(1, 2))
        recent = (recent + list(per_term[:, :k].T))[-2:]
        res.n_terms = int(n[k - 1]) + 1
        n_start = res.n_terms
        if stop is not None:
            converged = True
            break
        batch = min(batch * 2, 4096)
    if not converged:
        raise ConvergenceError(
            f"Matsubara sum not converged after {cap} terms (d={d:g} m, T={T:g} K)",
            estimate=partial.sum(axis=1),
        )
    # geometric tail from the ratio of the last two terms
    tail = np.zeros(2)
    if len(recent) == 2:
        prev, last = recent
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(prev != 0, last / prev, 0.0)
        ratio = np.clip(np.nan_to_num(ratio), 0.0, 0.999999)
        tail = last * ratio / (1.0 - ratio)
    scale = partial.sum(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        share = np.where(scale[:, None] != 0, partial / scale[:, None], 0.5)
    if fixed is not None:
        # plain truncation as requested; the would-be tail only enters the error
        res.total = partial
        res.error = qerr + np.abs(tail)
        return res
    # tail split between polarizations by their share of the partial sum
    res.total = partial + share * tail[:, None]
    res.error = qerr + 0.5 * np.abs(tail)
    return res


def _zero_temperature_sums(sys: PlateSystem, cfg: QuadratureConfig) -> _Sums:
    d = sys.gap
    res = _Sums()
    if _is_trivial(sys):
        return res
    scales = []
    for m in (sys.material_1, sys.material_2):
        if isinstance(m, (Plasma, Drude)):
            scales.append(2.0 * d * m.omega_p / C)
        if isinstance(m, Drude):
            scales.append(2.0 * d / (C * m.tau))
    breaks = merge_breaks(_Y_BREAKS, scales, lo=0.0, hi=_Y_BREAKS[-1])
    vals = []
    for n in (cfg.k_nodes, cfg.k_nodes // 2):
        y, w = composite_gauss_legendre(breaks, n)
        xi = C * y / (2.0 * d)
        k_int, k_err = _k_integrals(sys, xi, y, cfg)
        vals.append((np.sum(k_int * w, axis=2), np.sum(k_err * w, axis=2).sum(axis=1)))
    (hi, kerr), (lo, _) = vals
    res.total = hi
    res.error = np.abs(hi - lo).sum(axis=1) + kerr
    return res


def _check_tolerance(value, error, cfg, what):
    if error > cfg.rel_tol * abs(value):
        raise ConvergenceError(
            f"{what}: estimated error {error:.3g} exceeds rel_tol*|value| = {cfg.rel_tol * abs(value):.3g}",
            estimate=value,
            error=error,
        )


def _free_energy_from(sums: _Sums, pref: float, sys, T, cfg, check=True) -> FreeEnergyResult:
    te, tm = pref * sums.total[0]
    n0_te, n0_tm = pref * sums.n0[0]
    value = te + tm
    err = abs(pref) * sums.error[0]
    if check:
        _check_tolerance(value, err, cfg, "free energy")
    return FreeEnergyResult(value, te, tm, n0_te + n0_tm, n0_te, n0_tm, err, T, sys.gap, sums.n_terms)


def _pressure_from(sums: _Sums, pref: float, sys, T, cfg, check=True) -> PressureBreakdown:
    te, tm = pref * sums.total[1]
    n0_te, n0_tm = pref * sums.n0[1]
    total = te + tm
    err = abs(pref) * sums.error[1]
    if check:
        _check_tolerance(total, err, cfg, "pressure")
    return PressureBreakdown(total, te, tm, n0_te + n0_tm, n0_te, n0_tm, err, T, sys.gap, sums.n_terms)


def _require_positive_T(T):
    if not T > 0:
        raise DomainError("finite-temperature evaluation needs T > 0; use the zero-temperature functions")


def free_energy_area(sys: PlateSystem, T: float, cfg: QuadratureConfig | None = None) -> FreeEnergyResult:
    """Casimir free energy per unit area (J/m^2) from the Matsubara sum."""
    cfg = cfg or QuadratureConfig()
    _check_supported(sys)
    _require_positive_T(T)
    sums = _matsubara_sums(sys, T, cfg)
    return _free_energy_from(sums, K_B * T / (8.0 * math.pi * sys.gap**2), sys, T, cfg)


def pressure(sys: PlateSystem, T: float, cfg: QuadratureConfig | None = None) -> PressureBreakdown:
    """Casimir pressure (Pa) from the Matsubara sum, split by polarization and n = 0."""
    cfg = cfg or QuadratureConfig()
    _check_supported(sys)
    _require_positive_T(T)
    sums = _matsubara_sums(sys, T, cfg)
    return _pressure_from(sums, -K_B * T / (8.0 * math.pi * sys.gap**3), sys, T, cfg)


def free_energy_and_pressure(sys: PlateSystem, T: float, cfg: QuadratureConfig | None = None):
    """Both quantities from a single pass; ``T == 0`` uses the frequency integral."""
    cfg = cfg or QuadratureConfig()
    _check_supported(sys)
    d = sys.gap
    if T == 0:
        sums = _zero_temperature_sums(sys, cfg)
        f_pref = HBAR * C / (32.0 * math.pi**2 * d**3)
        p_pref = -HBAR * C / (32.0 * math.pi**2 * d**4)
    else:
        _require_positive_T(T)
        sums = _matsubara_sums(sys, T, cfg)
        f_pref = K_B * T / (8.0 * math.pi * d**2)
        p_pref = -K_B * T / (8.0 * math.pi * d**3)
    return _free_energy_from(sums, f_pref, sys, T, cfg), _pressure_from(sums, p_pref, sys, T, cfg)


def free_energy_zero_temperature(sys: PlateSystem, cfg: QuadratureConfig | None = None) -> FreeEnergyResult:
    cfg = cfg or QuadratureConfig()
    _check_supported(sys)
    sums = _zero_temperature_sums(sys, cfg)
    return _free_energy_from(sums, HBAR * C / (32.0 * math.pi**2 * sys.gap**3), sys, 0.0, cfg)


def pressure_zero_temperature(sys: PlateSystem, cfg: QuadratureConfig | None = None) -> PressureBreakdown:
    """T = 0 pressure from the continuous imaginary-frequency integral."""
    cfg = cfg or QuadratureConfig()
    _check_supported(sys)
    sums = _zero_temperature_sums(sys, cfg)
    return _pressure_from(sums, -HBAR * C / (32.0 * math.pi**2 * sys.gap**4), sys, 0.0, cfg)


def _free_energy_value(sys, T, cfg):
    sums = _matsubara_sums(sys, T, cfg)
    return _free_energy_from(sums, K_B * T / (8.0 * math.pi * sys.gap**2), sys, T, cfg, check=False)


def entropy_area(sys: PlateSystem, T: float, cfg: QuadratureConfig | None = None) -> EntropyResult:
    """Entropy per area S = -dF/dT in J/(K m^2).

    Central differences at steps h and h/2 are combined by one Richardson
    step; the same is repeated at h/2 and h/4 and the two extrapolations must
    agree within 5 rel_tol (relative to |S|, or to the free-energy noise
    floor divided by the step when that is larger).
    """
    cfg = cfg or QuadratureConfig()
    _check_supported(sys)
    _require_positive_T(T)
    h = cfg.temp_step_fraction * T
    cache = {}

    def F(t):
        if t not in cache:
            cache[t] = _free_energy_value(sys, t, cfg)
        return cache[t]

    def central(step):
        return -(F(T + step).value - F(T - step).value) / (2.0 * step)

    d1, d2, d4 = central(h), central(h / 2), central(h / 4)
    coarse = (4.0 * d2 - d1) / 3.0
    fine = (4.0 * d4 - d2) / 3.0
    spread = abs(fine - coarse)
    # free-energy errors are mostly systematic and cancel between stencil
    # points; only the round-off-level part survives the difference
    noise = max(abs(r.value) for r in cache.values()) * 64 * np.finfo(float).eps / (h / 4)
    if spread > 5.0 * cfg.rel_tol * abs(fine) + noise:
        raise ConvergenceError(
            f"entropy refinement levels disagree: {coarse:.6g} vs {fine:.6g}", estimate=fine, error=spread
        )
    return EntropyResult(fine, spread + noise, h / 4, coarse, T, sys.gap)


def thermal_correction(sys: PlateSystem, T: float, cfg: QuadratureConfig | None = None) -> ThermalCorrection:
    """P(d, T) - P(d, 0) with errors added."""
    cfg = cfg or QuadratureConfig()
    p0 = pressure_zero_temperature(sys, cfg)
    if T == 0:
        return ThermalCorrection(0.0, 0.0, p0, p0)
    pT = pressure(sys, T, cfg)
    return ThermalCorrection(pT.total - p0.total, pT.estimated_error + p0.estimated_error, pT, p0)


def _te_static_factor(m) -> float:
    """Weight of a plate's TE n = 0 term in the thermal asymptote: 0 for Drude."""
    return 0.0 if isinstance(m, Drude) else 1.0


def asymptote(regime, sys: PlateSystem, T: float = 0.0) -> Asymptote:
    """Closed-form regime asymptotes (free energy J/m^2, pressure Pa).

    ``nonretarded`` returns only the scale -hbar omega_p / d^2 (and its
    d-derivative), no calibrated prefactor.
    """
    try:
        regime = Regime(regime)
    except ValueError:
        raise InputError(f"invalid regime {regime!r}") from None
    d = sys.gap
    if _is_trivial(sys):
        return Asymptote(regime, 0.0, 0.0, "vacuum plate")
    if regime is Regime.NONRETARDED:
        wps = [m.omega_p for m in (sys.material_1, sys.material_2) if isinstance(m, (Plasma, Drude))]
        if not wps:
            raise UnsupportedModelError("the non-retarded regime needs a plasma frequency")
        wp = min(wps)
        return Asymptote(regime, -HBAR * wp / d**2, -2.0 * HBAR * wp / d**3, "scale only")
    if regime is Regime.RETARDED:
        return Asymptote(regime, ideal_free_energy_zero_temperature(d), ideal_pressure_zero_temperature(d), "ideal")
    _require_positive_T(T)
    # TE and TM carry equal weight for ideal mirrors; a Drude plate drops TE
    factor = 0.5 * (1.0 + _te_static_factor(sys.material_1) * _te_static_factor(sys.material_2))
    return Asymptote(
        regime,
        factor * ideal_free_energy_high_temperature(d, T),
        factor * ideal_pressure_high_temperature(d, T),
        "ideal" if factor == 1.0 else "drude",
    )


def compare_models(d: float, T: float, drude: Drude, cfg: QuadratureConfig | None = None) -> ModelComparison:
    """Drude plates versus plasma plates with the same omega_p."""
    if not isinstance(drude, Drude):
        raise UnsupportedModelError("compare_models needs a Drude model")
    cfg = cfg or QuadratureConfig()
    plasma = drude.as_plasma()
    sys_d = PlateSystem(drude, drude, d)
    sys_p = PlateSystem(plasma, plasma, d)
    f_d, p_d = free_energy_and_pressure(sys_d, T, cfg)
    f_p, p_p = free_energy_and_pressure(sys_p, T, cfg)
    return ModelComparison(p_d, p_p, f_d, f_p)


def with_tau_scaled(model: Drude, factor: float) -> Drude:
    return replace(model, tau=model.tau * factor)


def penetration_ratio(sys: PlateSystem) -> float | None:
    """lambda_p / d for the first plate carrying a plasma frequency, else None."""
    for m in (sys.material_1, sys.material_2):
        if isinstance(m, (Plasma, Drude)):
            return plasma_wavelength(m) / sys.gap
    return None
