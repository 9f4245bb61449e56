"""Casimir pressures between plasma, Drude and ideal plates at finite temperature."""

__version__ = "0.1.0"
