import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from isentropic_riemann import ConservedState, DomainError, GasState, PolytropicEos
from isentropic_riemann.gas import (
    eigenvalues,
    pressure,
    riemann_invariants,
    sound_speed,
    to_conserved,
    to_primitive,
)

from conftest import eos_states, gammas, kappas

C06 = 0.916515138991168  # sqrt(0.84)


@pytest.mark.parametrize("kappa, gamma", [(0.0, 1.4), (-1.0, 1.4), (1.0, 1.0), (1.0, 0.5), (math.nan, 2.0)])
def test_eos_rejects_invalid_parameters(kappa, gamma):
    with pytest.raises(DomainError):
        PolytropicEos(kappa, gamma)


def test_gas_state_rejects_negative_density():
    with pytest.raises(DomainError):
        GasState(-1e-3, 0.0)


def test_pressure_examples():
    assert pressure(PolytropicEos(1.0, 1.4), 0.0) == 0.0
    assert pressure(PolytropicEos(1.0, 2.0), 2.0) == 4.0
    assert pressure(PolytropicEos(0.6, 1.4), 0.5) == pytest.approx(0.227357484976559712, rel=1e-14)
    with pytest.raises(DomainError):
        pressure(PolytropicEos(1.0, 1.4), -1.0)


def test_sound_speed_examples():
    assert sound_speed(PolytropicEos(1.0, 2.0), 1.0) == pytest.approx(math.sqrt(2.0), rel=1e-15)
    assert sound_speed(PolytropicEos(3.0, 1.7), 0.0) == 0.0
    assert sound_speed(PolytropicEos(0.6, 1.4), 1.0) == pytest.approx(C06, rel=1e-14)
    with pytest.raises(DomainError):
        sound_speed(PolytropicEos(1.0, 1.4), -0.5)


def test_eigenvalues_examples():
    lam = eigenvalues(PolytropicEos(1.0, 2.0), GasState(1.0, 0.0))
    assert lam == pytest.approx((-math.sqrt(2.0), math.sqrt(2.0)))
    assert eigenvalues(PolytropicEos(0.3, 1.4), GasState(0.0, 3.0)) == (3.0, 3.0)
    lam = eigenvalues(PolytropicEos(0.6, 1.4), GasState(1.0, 0.8))
    assert lam == pytest.approx((0.8 - C06, 0.8 + C06), rel=1e-14)


def test_riemann_invariants_examples():
    assert riemann_invariants(PolytropicEos(1.0, 1.4), GasState(0.0, 1.0)) == (1.0, 1.0)
    phi = riemann_invariants(PolytropicEos(1.0, 3.0), GasState(1.0, 0.0))
    assert phi == pytest.approx((math.sqrt(3.0), -math.sqrt(3.0)))
    phi = riemann_invariants(PolytropicEos(0.6, 1.4), GasState(1.0, 0.8))
    assert phi == pytest.approx((0.8 + 5 * C06, 0.8 - 5 * C06), rel=1e-14)


def test_conversions():
    assert to_conserved(GasState(2.0, 3.0)) == ConservedState(2.0, 6.0)
    assert to_primitive(ConservedState(0.0, 0.0), 1e-12) == GasState(0.0, 0.0)
    assert to_primitive(ConservedState(1e-13, 5e-13), 1e-12).v == 0.0
    back = to_primitive(to_conserved(GasState(0.5, 1.0)))
    assert back.rho == 0.5 and back.v == pytest.approx(1.0, rel=1e-15)


@given(st.floats(1e-6, 100.0), st.floats(1e-6, 100.0), kappas, gammas)
def test_pressure_strictly_increasing(r1, r2, kappa, gamma):
    eos = PolytropicEos(kappa, gamma)
    lo, hi = sorted((r1, r2))
    if hi > lo * (1 + 1e-12):
        assert pressure(eos, lo) < pressure(eos, hi)


@given(st.floats(1e-3, 10.0), kappas, gammas)
def test_sound_speed_matches_finite_difference(rho, kappa, gamma):
    eos = PolytropicEos(kappa, gamma)
    c2 = sound_speed(eos, rho) ** 2
    assert c2 == pytest.approx(gamma * kappa * rho ** (gamma - 1.0), rel=1e-13)
    h = 1e-5 * rho
    fd = (pressure(eos, rho + h) - pressure(eos, rho - h)) / (2 * h)
    assert c2 == pytest.approx(fd, rel=1e-6)


@given(eos_states())
def test_eigenvalue_ordering_and_invariant_gap(es):
    eos, state = es
    l1, l2 = eigenvalues(eos, state)
    assert l1 < l2
    phi1, phi2 = riemann_invariants(eos, state)
    c = sound_speed(eos, state.rho)
    assert phi1 - phi2 == pytest.approx(4 * c / (eos.gamma - 1), rel=1e-12)
