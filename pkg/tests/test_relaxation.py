import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from casimir.errors import DomainError, UnsupportedModelError
from casimir.materials import Drude, Plasma, dc_conductivity, gold_drude
from casimir.relaxation import (
    diffusion_eigenfrequency,
    naive_relaxation_rate,
    relaxation_report,
    telegraphist_eigenfrequencies,
    telegraphist_roots,
)
from casimir.scales import C, EPS0

GOLD = gold_drude()


def with_product(wp_tau, wp=GOLD.omega_p):
    return Drude(wp, wp_tau / wp)


def test_naive_rate_gold():
    rate = naive_relaxation_rate(GOLD)
    assert rate == pytest.approx(5e18, rel=0.1)
    assert 1 / rate == pytest.approx(1e-19, rel=1.0)
    length = EPS0 * C / dc_conductivity(GOLD)
    assert 1e-11 < length < 1e-9


def test_naive_rate_linear_in_conductivity():
    half = Drude(GOLD.omega_p, GOLD.tau / 2)
    assert naive_relaxation_rate(half) == pytest.approx(naive_relaxation_rate(GOLD) / 2, rel=1e-15)


def test_unsupported_models():
    with pytest.raises(UnsupportedModelError):
        naive_relaxation_rate(Plasma(1e16))
    with pytest.raises(UnsupportedModelError):
        diffusion_eigenfrequency(Plasma(1e16), 1e6)


def test_gold_roots_underdamped():
    slow, fast = telegraphist_roots(GOLD)
    half = -1 / (2 * GOLD.tau)
    for s in (slow, fast):
        assert abs(s.real - half) <= 1e-10 * abs(half)
    want = math.sqrt(GOLD.omega_p**2 - 1 / (4 * GOLD.tau**2))
    assert abs(slow.imag) == pytest.approx(want, rel=1e-14)
    assert abs(slow.imag) == pytest.approx(GOLD.omega_p, rel=1e-5)
    assert slow == fast.conjugate()


def test_eigenfrequency_convention():
    for s, w in zip(telegraphist_roots(GOLD), telegraphist_eigenfrequencies(GOLD)):
        assert w == 1j * s
        assert w.imag == pytest.approx(-1 / (2 * GOLD.tau), rel=1e-14)


@pytest.mark.parametrize("wp_tau,tol", [(0.1, 2e-2), (0.01, 1e-2)])
def test_overdamped_slow_root_recovers_ohmic_rate(wp_tau, tol):
    m = with_product(wp_tau)
    slow, fast = telegraphist_roots(m)
    assert slow.imag == 0.0 and fast.imag == 0.0
    assert -slow.real / naive_relaxation_rate(m) == pytest.approx(1.0, abs=tol)
    assert abs(fast.real) > abs(slow.real)


def test_overdamped_limit_deep():
    m = with_product(1e-6)
    slow, _ = telegraphist_roots(m)
    assert -slow.real == pytest.approx(naive_relaxation_rate(m), rel=1e-11)


def test_critical_damping_double_root():
    m = with_product(0.5)
    slow, fast = telegraphist_roots(m)
    half = -1 / (2 * m.tau)
    assert slow.real == pytest.approx(half, rel=1e-7)
    assert fast.real == pytest.approx(half, rel=1e-7)
    assert abs(slow.imag) <= 1e-7 * abs(half)


@given(st.floats(min_value=1e11, max_value=1e17), st.floats(min_value=1e-3, max_value=1e3))
def test_vieta_and_decay_bound(wp, wp_tau):
    m = Drude(wp, wp_tau / wp)
    s1, s2 = telegraphist_roots(m)
    assert abs(s1 * s2 - wp**2) <= 1e-12 * wp**2
    assert abs((s1 + s2) + 1 / m.tau) <= 1e-12 / m.tau
    rep = relaxation_report(m, 300.0)
    assert rep.decay_rate <= (1 + 1e-15) / (2 * m.tau)
    if wp_tau > 0.5 * (1 + 1e-9):
        assert rep.decay_rate == 1 / (2 * m.tau)


def test_diffusion_eigenfrequency_examples():
    assert diffusion_eigenfrequency(GOLD, 0.0) == 0
    w = diffusion_eigenfrequency(GOLD, 1 / 150e-9)
    assert w.real == 0.0
    assert -w.imag == pytest.approx(8.0e11, rel=2e-2)
    assert diffusion_eigenfrequency(GOLD, 2e6) == pytest.approx(4 * diffusion_eigenfrequency(GOLD, 1e6), rel=1e-15)
    with pytest.raises(DomainError):
        diffusion_eigenfrequency(GOLD, -1.0)


def test_report_gold_room_temperature():
    rep = relaxation_report(GOLD, 300.0)
    assert rep.comparison["inv_2pi_tau"] == pytest.approx(5.9e12, rel=2e-2)
    assert rep.comparison["omega_T_over_2pi"] == pytest.approx(6.2e12, rel=2e-2)
    assert rep.decay_rate == pytest.approx(1.85e13, rel=1e-2)
    assert rep.oscillation == pytest.approx(GOLD.omega_p, rel=1e-5)
    doc = json.loads(json.dumps(rep.to_dict()))
    assert doc["comparison"]["inv_2pi_tau"] == rep.inv_2pi_tau
    assert doc["telegraphist_roots"][0] == [rep.telegraphist_roots[0].real, rep.telegraphist_roots[0].imag]


def test_report_roots_independent_of_temperature():
    a = relaxation_report(GOLD, 1.0)
    b = relaxation_report(GOLD, 1000.0)
    assert a.telegraphist_roots == b.telegraphist_roots
    assert a.omega_T_over_2pi != b.omega_T_over_2pi
    with pytest.raises(DomainError):
        relaxation_report(GOLD, 0.0)
