"""Undriven Rabi spectrum: Hamiltonian, parity, dressed basis, diagnostics.

Basis convention: product state index i = 2*n + q with n the cavity Fock
number and q in {0: atom ground, 1: atom excited}. Everything spectral is
real, so Hamiltonian and eigenvectors stay float64.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import eval_laguerre

from .params import (
    ConfigurationError,
    CrossingNotFoundError,
    FockTruncation,
    ParityPurityError,
    RabiParams,
    default_truncation,
)

# quasi-degenerate clusters are rotated into parity eigenvectors; the
# grouping tolerance is relative so deep-strong doublets (splitting ~1e-8
# on energies ~10) are still caught, while the sub-cluster Rayleigh
# quotients keep their tiny splittings resolvable afterwards
_CLUSTER_RTOL = 1e-8
_TIE_TOL = 1e-12  # below this the "+" state sorts first
_PARITY_TOL = 1e-6


def annihilation_operator(trunc: FockTruncation) -> np.ndarray:
    a = np.diag(np.sqrt(np.arange(1, trunc.n_fock)), 1)
    return np.kron(a, np.eye(2))


def atom_lowering_operator(trunc: FockTruncation) -> np.ndarray:
    sm = np.array([[0.0, 1.0], [0.0, 0.0]])
    return np.kron(np.eye(trunc.n_fock), sm)


def build_rabi_hamiltonian(params: RabiParams, trunc: FockTruncation) -> np.ndarray:
    """Dense real-symmetric H = wc a^dag a + wa s+ s- - g (a + a^dag) sx."""
    nf = trunc.n_fock
    n_op = np.kron(np.diag(np.arange(nf, dtype=float)), np.eye(2))
    sz_up = np.kron(np.eye(nf), np.diag([0.0, 1.0]))
    a = annihilation_operator(trunc)
    sx = np.kron(np.eye(nf), np.array([[0.0, 1.0], [1.0, 0.0]]))
    h = params.omega_c * n_op + params.omega_a * sz_up - params.g * (a + a.T) @ sx
    return 0.5 * (h + h.T)  # symmetric to rounding


def parity_diagonal(trunc: FockTruncation) -> np.ndarray:
    idx = np.arange(trunc.dim)
    n, q = idx // 2, idx % 2
    return 1.0 - 2.0 * ((n + q) % 2)


def build_parity_operator(trunc: FockTruncation) -> np.ndarray:
    """exp[i pi (a^dag a + s+ s-)], diagonal with entries (-1)^(n+q)."""
    return np.diag(parity_diagonal(trunc))


@dataclass(frozen=True)
class DressedState:
    energy: float
    parity: int  # +1 or -1
    index_in_parity: int  # energy rank within own parity sector
    vector: np.ndarray  # real, unit norm, largest-|coeff| entry positive


@dataclass(frozen=True)
class DressedBasis:
    params: RabiParams
    truncation: FockTruncation
    states: tuple[DressedState, ...]  # energy-ascending across both sectors

    @property
    def energies(self) -> np.ndarray:
        return np.array([s.energy for s in self.states])

    @property
    def parities(self) -> np.ndarray:
        return np.array([s.parity for s in self.states])

    @property
    def vectors(self) -> np.ndarray:
        """dim x n_states, column i = i-th dressed state."""
        return np.column_stack([s.vector for s in self.states])

    def sector_energy(self, parity: int, j: int) -> float:
        for s in self.states:
            if s.parity == parity and s.index_in_parity == j:
                return s.energy
        raise ConfigurationError(f"no state with parity {parity:+d}, rank {j}")


def _parity_rotate(block: np.ndarray, pdiag: np.ndarray) -> np.ndarray:
    """Rotate a quasi-degenerate eigenvector block into parity eigenvectors."""
    s = block.T @ (pdiag[:, None] * block)
    s = 0.5 * (s + s.T)
    _, r = np.linalg.eigh(s)
    return block @ r


def diagonalize_dressed(
    params: RabiParams, trunc: FockTruncation | None = None
) -> DressedBasis:
    """Eigendecompose H, resolve parity in degenerate clusters, label states.

    Raises ParityPurityError if any state's parity expectation is not within
    1e-6 of +/-1 after the cluster rotation.
    """
    if trunc is None:
        trunc = default_truncation(params.g)
    h = build_rabi_hamiltonian(params, trunc)
    pdiag = parity_diagonal(trunc)
    w, u = np.linalg.eigh(h)

    # split into quasi-degenerate clusters by relative gap
    bounds = [0]
    for i in range(len(w) - 1):
        if w[i + 1] - w[i] > _CLUSTER_RTOL * max(1.0, abs(w[i])):
            bounds.append(i + 1)
    bounds.append(len(w))

    energies = np.empty_like(w)
    vectors = np.empty_like(u)
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        block = u[:, lo:hi]
        if hi - lo > 1:
            block = _parity_rotate(block, pdiag)
        vectors[:, lo:hi] = block
        # Rayleigh quotients resolve splittings below the cluster tolerance
        energies[lo:hi] = np.einsum("ij,ij->j", block, h @ block)

    pexp = np.einsum("ij,ij->j", vectors, pdiag[:, None] * vectors)
    impure = np.abs(np.abs(pexp) - 1.0) > _PARITY_TOL
    if np.any(impure):
        k = int(np.argmax(impure))
        raise ParityPurityError(
            f"state {k} has parity expectation {pexp[k]:+.8f}, not within "
            f"{_PARITY_TOL} of +/-1 (degenerate cluster not resolved)"
        )
    parities = np.where(pexp > 0, 1, -1)

    order = list(np.argsort(energies, kind="stable"))
    # near-exact ties: "+" ahead of "-"
    for i in range(len(order) - 1):
        a, b = order[i], order[i + 1]
        if abs(energies[a] - energies[b]) < _TIE_TOL and (
            parities[a] < parities[b]
        ):
            order[i], order[i + 1] = b, a

    states = []
    rank = {1: 0, -1: 0}
    for k in order:
        v = vectors[:, k].copy()
        if v[np.argmax(np.abs(v))] < 0:  # fix global sign
            v = -v
        p = int(parities[k])
        states.append(DressedState(float(energies[k]), p, rank[p], v))
        rank[p] += 1

    if states[0].parity != 1:
        raise ParityPurityError("ground state resolved to odd parity")
    return DressedBasis(params, trunc, tuple(states))


def transition_frequency(basis: DressedBasis, which: str) -> float:
    """Drive frequency hitting the first (E0^- - E0^+) or second
    (E1^- - E0^+) parity-allowed transition from the ground state."""
    e0 = basis.sector_energy(1, 0)
    if which == "first":
        return basis.sector_energy(-1, 0) - e0
    if which == "second":
        return basis.sector_energy(-1, 1) - e0
    raise ConfigurationError(f"unknown transition {which!r}")


def detect_parity_crossing(
    params: RabiParams,
    g_lo: float,
    g_hi: float,
    tol_g: float = 1e-4,
    trunc: FockTruncation | None = None,
) -> float:
    """Locate the first crossing of the second excited levels of opposite
    parity by bisection on the sign of E1^- - E1^+.

    Purely spectral: gamma, kappa, and the drive never enter. Raises
    CrossingNotFoundError when the bracket has no sign change.
    """
    if not (0 <= g_lo < g_hi):
        raise ConfigurationError("need 0 <= g_lo < g_hi")
    if trunc is None:
        trunc = default_truncation(g_hi)  # one truncation for the whole scan

    def split(g: float) -> float:
        basis = diagonalize_dressed(dataclasses.replace(params, g=g), trunc)
        return basis.sector_energy(-1, 1) - basis.sector_energy(1, 1)

    f_lo, f_hi = split(g_lo), split(g_hi)
    if f_lo == 0.0:
        return g_lo
    if f_hi == 0.0:
        return g_hi
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise CrossingNotFoundError(
            f"no parity crossing in [{g_lo}, {g_hi}]: "
            f"splitting {f_lo:.3e} -> {f_hi:.3e} does not change sign"
        )
    while g_hi - g_lo > tol_g:
        mid = 0.5 * (g_lo + g_hi)
        f_mid = split(mid)
        if f_mid == 0.0:
            return mid
        if math.copysign(1.0, f_mid) == math.copysign(1.0, f_lo):
            g_lo, f_lo = mid, f_mid
        else:
            g_hi = mid
    return 0.5 * (g_lo + g_hi)


def anharmonicity(basis: DressedBasis) -> float:
    """Ladder mismatch eta = (E1^- - E2^+) - (E0^+ - E1^-).

    Equal spacing up the two-step ladder gives eta = 0; blockade needs |eta|
    above the linewidths.
    """
    n_plus = sum(1 for s in basis.states if s.parity == 1)
    n_minus = len(basis.states) - n_plus
    if n_plus < 3 or n_minus < 3:
        raise ConfigurationError("anharmonicity needs >= 3 states per sector")
    return (
        2.0 * basis.sector_energy(-1, 1)
        - basis.sector_energy(1, 2)
        - basis.sector_energy(1, 0)
    )


def doublet_splitting_oracle(
    n: int, g: float, omega_a: float = 1.0, omega_c: float = 1.0
) -> float:
    """Closed-form large-g estimate of the n-th doublet splitting.

    The splitting is set by the overlap of oppositely displaced Fock states,
    <n,-g/wc | n,+g/wc> = e^{-2g^2/wc^2} L_n(4g^2/wc^2), times omega_a.
    """
    if n < 0:
        raise ConfigurationError("level index must be >= 0")
    if g <= 0:
        raise ConfigurationError("g must be positive")
    x = (g / omega_c) ** 2
    return omega_a * math.exp(-2.0 * x) * float(eval_laguerre(n, 4.0 * x))


def project_to_dressed(
    basis: DressedBasis, op: np.ndarray, n_levels: int
) -> np.ndarray:
    """Matrix of `op` in the lowest n_levels dressed states."""
    if n_levels > len(basis.states):
        raise ConfigurationError(
            f"asked for {n_levels} levels, basis holds {len(basis.states)}"
        )
    v = basis.vectors[:, :n_levels]
    return v.T @ op @ v
