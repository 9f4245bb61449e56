"""Material response models: perfect conductor, plasma, Drude and a vacuum test model.

All frequencies are angular frequencies in rad/s. Complex arguments are
allowed wherever the analytic continuation is defined; the convention for
time dependence is ``exp(-i omega t)``, so the upper half plane is the
causal one and ``omega = i xi`` is the Matsubara axis.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from .errors import InputError, UnsupportedModelError
from .scales import C, EPS0, HBAR, MU0, E_CHARGE

__all__ = [
    "PerfectConductor",
    "Plasma",
    "Drude",
    "Vacuum",
    "MaterialModel",
    "GOLD_OMEGA_P",
    "GOLD_TAU",
    "gold_drude",
    "gold_plasma",
    "omega_p_from_eV",
    "conductivity",
    "permittivity",
    "permittivity_imag_axis",
    "dc_conductivity",
    "plasma_wavelength",
    "magnetic_diffusivity",
    "material_from_dict",
    "load_material",
    "material_to_dict",
]


@dataclass(frozen=True)
class PerfectConductor:
    """Ideal mirror; reflects with r_TE = -1, r_TM = +1 at every frequency."""

    name: str = "ideal"


@dataclass(frozen=True)
class Plasma:
    """Lossless free-carrier model, sigma = i eps0 omega_p^2 / omega."""

    omega_p: float
    name: str = "plasma"

    def __post_init__(self):
        if not self.omega_p > 0:
            raise InputError(f"omega_p must be > 0, got {self.omega_p!r}")


@dataclass(frozen=True)
class Drude:
    """Drude metal, sigma = sigma_DC / (1 - i omega tau)."""

    omega_p: float
    tau: float
    name: str = "drude"

    def __post_init__(self):
        if not self.omega_p > 0:
            raise InputError(f"omega_p must be > 0, got {self.omega_p!r}")
        if not self.tau > 0:
            raise InputError(f"tau must be > 0, got {self.tau!r}")

    def as_plasma(self) -> Plasma:
        return Plasma(self.omega_p, name=f"{self.name}-plasma")


@dataclass(frozen=True)
class Vacuum:
    """Non-reflecting test model (sigma = 0, eps = 1)."""

    name: str = "vacuum"


MaterialModel = Union[PerfectConductor, Plasma, Drude, Vacuum]


def omega_p_from_eV(energy_eV: float) -> float:
    """Convert a plasma energy hbar*omega_p in eV to omega_p in rad/s."""
    return energy_eV * E_CHARGE / HBAR


GOLD_OMEGA_P = omega_p_from_eV(9.0)
GOLD_TAU = 27e-15


def gold_drude(tau_scale: float = 1.0) -> Drude:
    return Drude(GOLD_OMEGA_P, GOLD_TAU * tau_scale, name="gold")


def gold_plasma() -> Plasma:
    return Plasma(GOLD_OMEGA_P, name="gold-plasma")


def _require(model, kinds, what):
    if not isinstance(model, kinds):
        raise UnsupportedModelError(f"{what} is not defined for {type(model).__name__}")


def conductivity(model: MaterialModel, omega):
    """Complex conductivity sigma(omega) in S/m."""
    _require(model, (Plasma, Drude, Vacuum), "conductivity")
    w = np.asarray(omega, dtype=complex)
    if isinstance(model, Vacuum):
        out = np.zeros_like(w)
    elif isinstance(model, Plasma):
        if np.any(w == 0):
            raise ZeroDivisionError("plasma conductivity is singular at omega = 0")
        out = 1j * EPS0 * model.omega_p**2 / w
    else:
        out = dc_conductivity(model) / (1.0 - 1j * w * model.tau)
    return out if out.ndim else complex(out)


def permittivity(model: MaterialModel, omega):
    """Relative permittivity eps(omega) = 1 + i sigma / (eps0 omega)."""
    _require(model, (Plasma, Drude, Vacuum), "permittivity")
    w = np.asarray(omega, dtype=complex)
    if np.any(w == 0) and not isinstance(model, Vacuum):
        raise ZeroDivisionError("permittivity is singular at omega = 0")
    if isinstance(model, Vacuum):
        out = np.ones_like(w)
    elif isinstance(model, Plasma):
        out = 1.0 - model.omega_p**2 / w**2
    else:
        # written so that omega = i xi gives an exactly real result
        out = 1.0 - model.omega_p**2 / (w * (w + 1j / model.tau))
    return out if out.ndim else complex(out)


def permittivity_imag_axis(model: MaterialModel, xi):
    """Real permittivity eps(i xi) on the imaginary frequency axis, xi > 0."""
    _require(model, (Plasma, Drude, Vacuum), "permittivity")
    x = np.asarray(xi, dtype=float)
    if isinstance(model, Vacuum):
        out = np.ones_like(x)
    elif isinstance(model, Plasma):
        out = 1.0 + model.omega_p**2 / x**2
    else:
        out = 1.0 + model.omega_p**2 / (x * (x + 1.0 / model.tau))
    return out if out.ndim else float(out)


def dc_conductivity(model: Drude) -> float:
    """sigma_DC = eps0 omega_p^2 tau."""
    _require(model, Drude, "dc_conductivity")
    return EPS0 * model.omega_p**2 * model.tau


def plasma_wavelength(model: Plasma | Drude) -> float:
    """Reduced plasma wavelength c / omega_p (penetration depth), in m."""
    _require(model, (Plasma, Drude), "plasma_wavelength")
    return C / model.omega_p


def magnetic_diffusivity(model: Drude) -> float:
    """D = 1/(mu0 sigma_DC), equal to lambda_p^2 / tau; in m^2/s."""
    _require(model, Drude, "magnetic_diffusivity")
    return 1.0 / (MU0 * dc_conductivity(model))


_JSON_KEYS = {"name", "model", "omega_p_eV", "tau_fs"}


def material_from_dict(doc: dict) -> MaterialModel:
    """Build a model from ``{"name", "model", "omega_p_eV", "tau_fs"}``.

    Unknown keys are rejected, as are parameters that the chosen model
    does not take.
    """
    if not isinstance(doc, dict):
        raise InputError("material document must be a JSON object")
    unknown = set(doc) - _JSON_KEYS
    if unknown:
        raise InputError(f"unknown material keys: {sorted(unknown)}")
    kind = doc.get("model")
    name = doc.get("name", kind or "material")
    if not isinstance(name, str):
        raise InputError("material name must be a string")

    def number(key):
        if key not in doc:
            raise InputError(f"material model {kind!r} requires {key!r}")
        v = doc[key]
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise InputError(f"{key!r} must be a finite number")
        return float(v)

    expected = {"perfect": set(), "plasma": {"omega_p_eV"}, "drude": {"omega_p_eV", "tau_fs"}}
    if kind not in expected:
        raise InputError(f"model must be one of {sorted(expected)}, got {kind!r}")
    extra = (set(doc) - {"name", "model"}) - expected[kind]
    if extra:
        raise InputError(f"keys {sorted(extra)} not allowed for model {kind!r}")
    if kind == "perfect":
        return PerfectConductor(name=name)
    omega_p = omega_p_from_eV(number("omega_p_eV"))
    if kind == "plasma":
        return Plasma(omega_p, name=name)
    return Drude(omega_p, number("tau_fs") / 1e15, name=name)


def load_material(path: str | Path) -> MaterialModel:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read material file {str(path)!r}: {exc}") from exc
    return material_from_dict(doc)


def material_to_dict(model: MaterialModel) -> dict:
    """Inverse of :func:`material_from_dict` (vacuum gets model "vacuum")."""
    if isinstance(model, PerfectConductor):
        return {"name": model.name, "model": "perfect"}
    if isinstance(model, Vacuum):
        return {"name": model.name, "model": "vacuum"}
    out = {"name": model.name, "model": "plasma" if isinstance(model, Plasma) else "drude"}
    out["omega_p_eV"] = model.omega_p * HBAR / E_CHARGE
    if isinstance(model, Drude):
        out["tau_fs"] = model.tau * 1e15
    return out
