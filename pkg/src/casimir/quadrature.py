"""Fixed-rule quadrature building blocks: composite Gauss-Legendre and tanh-sinh.

Both rules return nodes and weights as arrays so integrands can be
evaluated on whole grids at once.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

__all__ = ["gauss_legendre", "composite_gauss_legendre", "tanh_sinh", "merge_breaks"]


@lru_cache(maxsize=64)
def _leggauss(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def gauss_legendre(n: int, a: float = -1.0, b: float = 1.0):
    """n-point Gauss-Legendre nodes and weights on [a, b]."""
    x, w = _leggauss(int(n))
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def composite_gauss_legendre(breaks, n: int):
    """Nodes/weights of an n-point rule on every panel [breaks[i], breaks[i+1]].

    Returns flat arrays ordered by ascending panel then ascending node, so a
    plain ``np.sum(f(x) * w)`` reduces in a fixed order.
    """
    b = np.asarray(breaks, dtype=float)
    x, w = _leggauss(int(n))
    lo, hi = b[:-1, None], b[1:, None]
    half = 0.5 * (hi - lo)
    return (lo + half * (x + 1.0)).ravel(), (half * w).ravel()


@lru_cache(maxsize=16)
def _tanh_sinh_unit(level: int, t_max: float):
    h = 2.0**-level
    t = np.arange(-t_max, t_max + 0.5 * h, h)
    u = 0.5 * np.pi * np.sinh(t)
    x = np.tanh(u)
    # distance to the nearer endpoint, accurate where x rounds to +-1
    gap = 1.0 / (np.exp(np.abs(u)) * np.cosh(u))
    w = h * 0.5 * np.pi * np.cosh(t) / np.cosh(u) ** 2
    keep = gap > 1e-300
    return x[keep], w[keep], gap[keep]


def tanh_sinh(a: float, b: float, level: int = 5, t_max: float = 3.2):
    """Tanh-sinh (double exponential) nodes/weights on [a, b].

    Nodes cluster doubly exponentially at both endpoints, which is what makes
    the rule robust for integrands with endpoint singularities or with sharp
    resonances placed at panel boundaries.
    """
    x, w, gap = _tanh_sinh_unit(int(level), float(t_max))
    half = 0.5 * (b - a)
    # build nodes from the nearer endpoint to keep their offset exact
    nodes = np.where(x < 0, a + half * gap, b - half * gap)
    return nodes, half * w


def merge_breaks(breaks, extra, lo=None, hi=None):
    """Sorted unique union of breakpoint lists, clipped to [lo, hi]."""
    pts = np.concatenate([np.asarray(breaks, dtype=float), np.asarray(extra, dtype=float)])
    if lo is not None:
        pts = pts[pts >= lo]
    if hi is not None:
        pts = pts[pts <= hi]
    pts = np.unique(pts)
    return pts
