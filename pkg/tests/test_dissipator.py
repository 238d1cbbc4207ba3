import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from rabisim import (
    ConfigurationError,
    FockTruncation,
    RabiParams,
    apply_dissipator,
    diagonalize_dressed,
    transition_rates,
)

couplings = st.floats(0.05, 3.0, allow_nan=False, allow_infinity=False)


def make_spec(g, gamma=1e-2, kappa=1e-2, n=12, n_fock=24):
    basis = diagonalize_dressed(RabiParams(g=g, gamma=gamma, kappa=kappa),
                                FockTruncation(n_fock))
    return transition_rates(basis, gamma, kappa, n)


@settings(max_examples=10, deadline=None)
@given(g=couplings)
def test_channel_invariants(g):
    spec = make_spec(g)
    kept = spec.basis.states[: spec.n_levels_kept]
    for c in spec.channels:
        assert c.delta > 0.0
        assert c.to_parity != c.from_parity  # selection rule
        assert c.rate_cavity >= 0.0 and c.rate_atom >= 0.0
        assert kept[c.from_level].energy > kept[c.to_level].energy
        assert kept[c.to_level].index_in_parity == c.to_rank
    # bookkeeping arrays agree with the channel list
    assert np.allclose(spec.gain.sum(axis=0), spec.outflow, rtol=1e-12, atol=0)
    assert spec.outflow[0] == 0.0  # ground state is dark


@pytest.mark.parametrize("g", [0.02, 0.05, 0.1])
def test_polariton_rates_match_weak_coupling_oracle(g):
    # total decay of each single-excitation polariton vs the closed form
    # (gamma+kappa)/2 * (1 +/- g)^2, good to first order in g
    spec = make_spec(g, n_fock=30)
    for state, sign in ((1, -1), (2, 1)):
        expected = oracles.jc_polariton_rate(sign, g, 1e-2, 1e-2)
        assert spec.outflow[state] == pytest.approx(expected, rel=1e-2)


def test_rates_scale_linearly_in_loss():
    a = make_spec(0.7, gamma=1e-2, kappa=2e-3)
    b = make_spec(0.7, gamma=2e-2, kappa=4e-3)
    assert len(a.channels) == len(b.channels)
    for ca, cb in zip(a.channels, b.channels):
        assert cb.rate_cavity == pytest.approx(2.0 * ca.rate_cavity, rel=1e-12)
        assert cb.rate_atom == pytest.approx(2.0 * ca.rate_atom, rel=1e-12)


def test_kept_levels_are_a_prefix():
    small = make_spec(0.9, n=12)
    large = make_spec(0.9, n=16)
    chan = {(c.from_level, c.to_level): c.rate_total for c in small.channels}
    for c in large.channels:
        if c.from_level < 12 and c.to_level < 12:
            assert chan[(c.from_level, c.to_level)] == pytest.approx(
                c.rate_total, rel=1e-12
            )


def test_transition_rates_validation():
    basis = diagonalize_dressed(RabiParams(g=0.5), FockTruncation(6))
    with pytest.raises(ConfigurationError):
        transition_rates(basis, 1e-2, 1e-2, n_levels_kept=13)  # > dim
    with pytest.raises(ConfigurationError):
        transition_rates(basis, 1e-2, 1e-2, n_levels_kept=1)
    with pytest.raises(ConfigurationError):
        transition_rates(basis, -1e-2, 1e-2)


complexes = st.complex_numbers(max_magnitude=1.0, allow_nan=False,
                               allow_infinity=False)


@settings(max_examples=20, deadline=None)
@given(
    data=st.lists(complexes, min_size=16, max_size=16),
    alpha=complexes,
    beta=complexes,
)
def test_apply_dissipator_is_linear(data, alpha, beta):
    spec = make_spec(0.6, n=4, n_fock=12)
    r1 = np.array(data).reshape(4, 4)
    r2 = r1.conj().T @ r1 - 0.3j * r1
    lhs = apply_dissipator(spec, alpha * r1 + beta * r2)
    rhs = alpha * apply_dissipator(spec, r1) + beta * apply_dissipator(spec, r2)
    assert np.max(np.abs(lhs - rhs)) < 1e-12


@settings(max_examples=20, deadline=None)
@given(data=st.lists(st.floats(-1, 1), min_size=144, max_size=144))
def test_apply_dissipator_preserves_trace(data):
    spec = make_spec(0.8)
    m = np.array(data).reshape(12, 12)
    rho = m + m.T + 1j * (m - m.T)  # Hermitian
    out = apply_dissipator(spec, rho)
    assert abs(np.trace(out)) < 1e-12
    assert np.max(np.abs(out - out.conj().T)) < 1e-12


def test_ground_state_is_stationary():
    spec = make_spec(1.5)
    rho = np.zeros((12, 12), dtype=complex)
    rho[0, 0] = 1.0
    assert np.max(np.abs(apply_dissipator(spec, rho))) == 0.0


def test_apply_dissipator_shape_check():
    spec = make_spec(0.5)
    with pytest.raises(ConfigurationError):
        apply_dissipator(spec, np.eye(5))
