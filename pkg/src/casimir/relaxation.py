"""Relaxation diagnostics for Drude conductors.

Three time scales are compared here: the Ohm's-law charge relaxation rate
sigma/eps0, the roots of the telegraphist's equation for the charge
density, and the purely imaginary eigenfrequencies of magnetic diffusion.

Roots are reported as rates ``s`` with time dependence ``exp(s t)``. The
matching eigenfrequency in the ``exp(-i omega t)`` convention is
``omega = i s``, so a damped root has ``Im omega = Re s < 0``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .errors import DomainError, UnsupportedModelError
from .materials import Drude, dc_conductivity, magnetic_diffusivity
from .scales import EPS0, thermal_frequency

__all__ = [
    "RelaxationReport",
    "naive_relaxation_rate",
    "telegraphist_roots",
    "telegraphist_eigenfrequencies",
    "diffusion_eigenfrequency",
    "relaxation_report",
]


def _require_drude(model):
    if not isinstance(model, Drude):
        raise UnsupportedModelError(f"relaxation diagnostics need a Drude model, got {type(model).__name__}")


def naive_relaxation_rate(model: Drude) -> float:
    """Charge relaxation rate sigma_DC / eps0 from Ohm's law and Gauss's law (1/s)."""
    _require_drude(model)
    return dc_conductivity(model) / EPS0


def telegraphist_roots(model: Drude) -> tuple[complex, complex]:
    """Roots s of s^2 + s/tau + omega_p^2 = 0, slow (largest Re s) first.

    Uses the cancellation-free pairing q = -(b + sign(b) sqrt(disc))/2,
    s1 = q, s2 = c/q, so the slow overdamped root keeps full precision.
    """
    _require_drude(model)
    b = 1.0 / model.tau
    c = model.omega_p**2
    disc = b * b - 4.0 * c
    if disc >= 0:
        q = -0.5 * (b + math.sqrt(disc))
        fast, slow = complex(q), complex(c / q)
    else:
        # complex pair; real parts are exactly -b/2
        im = 0.5 * math.sqrt(-disc)
        slow, fast = complex(-0.5 * b, im), complex(-0.5 * b, -im)
    return slow, fast


def telegraphist_eigenfrequencies(model: Drude) -> tuple[complex, complex]:
    """The telegraphist roots as eigenfrequencies omega = i s (rad/s)."""
    return tuple(1j * s for s in telegraphist_roots(model))


def diffusion_eigenfrequency(model: Drude, k: float) -> complex:
    """Overdamped magnetic-diffusion eigenfrequency omega_k = -i D k^2."""
    _require_drude(model)
    if not k >= 0:
        raise DomainError("wavenumber k must be >= 0")
    return complex(0.0, -magnetic_diffusivity(model) * k * k)


@dataclass(frozen=True)
class RelaxationReport:
    naive_rate: float
    telegraphist_roots: tuple[complex, complex]
    telegraphist_frequencies: tuple[complex, complex]
    decay_rate: float
    oscillation: float | None
    diffusivity: float
    inv_2pi_tau: float
    omega_T_over_2pi: float
    temperature: float

    @property
    def comparison(self) -> dict:
        return {"inv_2pi_tau": self.inv_2pi_tau, "omega_T_over_2pi": self.omega_T_over_2pi}

    def to_dict(self) -> dict:
        """JSON-ready mapping; complex numbers become ``[re, im]`` pairs."""
        out = asdict(self)
        out["telegraphist_roots"] = [[s.real, s.imag] for s in self.telegraphist_roots]
        out["telegraphist_frequencies"] = [[w.real, w.imag] for w in self.telegraphist_frequencies]
        del out["inv_2pi_tau"], out["omega_T_over_2pi"]
        out["comparison"] = self.comparison
        return out


def relaxation_report(model: Drude, T: float) -> RelaxationReport:
    _require_drude(model)
    if not T > 0:
        raise DomainError("temperature must be > 0 for the relaxation report")
    roots = telegraphist_roots(model)
    slow = roots[0]
    return RelaxationReport(
        naive_rate=naive_relaxation_rate(model),
        telegraphist_roots=roots,
        telegraphist_frequencies=telegraphist_eigenfrequencies(model),
        decay_rate=-slow.real,
        oscillation=abs(slow.imag) if slow.imag != 0 else None,
        diffusivity=magnetic_diffusivity(model),
        inv_2pi_tau=1.0 / (2.0 * math.pi * model.tau),
        omega_T_over_2pi=thermal_frequency(T) / (2.0 * math.pi),
        temperature=float(T),
    )
