"""Dressed-basis jump channels and the dissipative part of the generator.

Channels connect dressed states of opposite parity, downward in energy only
(emitter above absorber). Each channel |k> -> |j> carries a cavity rate
Gamma = gamma * (Delta/wc) * |<j|(a - a^dag)|k>|^2 and an atomic rate
K = kappa * (Delta/wc) * |<j|(s- - s+)|k>|^2 with Delta = E_k - E_j > 0.
Flat-rate (bare-operator) dissipators are wrong in this regime; the
Delta-weighting keeps the ground state dark.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .params import ConfigurationError
from .spectrum import (
    DressedBasis,
    annihilation_operator,
    atom_lowering_operator,
    project_to_dressed,
)


@dataclass(frozen=True)
class JumpChannel:
    """One downward transition |Psi_k> -> |Psi_j> between kept levels."""

    to_level: int  # global kept-level index j (energy rank)
    from_level: int  # global kept-level index k, E_k > E_j
    to_parity: int
    from_parity: int
    to_rank: int  # index within own parity sector
    from_rank: int
    delta: float  # E_k - E_j > 0
    rate_cavity: float
    rate_atom: float

    @property
    def rate_total(self) -> float:
        return self.rate_cavity + self.rate_atom


@dataclass(frozen=True)
class DissipatorSpec:
    """Channel list plus the dense arrays the RHS actually touches.

    outflow[i] = sum of total rates leaving level i; gain[j, k] = total rate
    feeding j from k. Column sums of gain equal outflow, which is what makes
    the dissipator trace-free.
    """

    basis: DressedBasis
    n_levels_kept: int
    gamma: float
    kappa: float
    channels: tuple[JumpChannel, ...]
    energies: np.ndarray = field(repr=False)  # kept levels, ascending
    outflow: np.ndarray = field(repr=False)
    gain: np.ndarray = field(repr=False)


def transition_rates(
    basis: DressedBasis, gamma: float, kappa: float, n_levels_kept: int = 12
) -> DissipatorSpec:
    """Enumerate every allowed jump channel among the kept dressed levels."""
    if gamma < 0 or kappa < 0:
        raise ConfigurationError("loss rates must be >= 0")
    if not 2 <= n_levels_kept <= len(basis.states):
        raise ConfigurationError(
            f"n_levels_kept must be in [2, {len(basis.states)}]"
        )
    n = n_levels_kept
    trunc = basis.truncation
    a = annihilation_operator(trunc)
    sm = atom_lowering_operator(trunc)
    ma = project_to_dressed(basis, a - a.T, n)  # <j|(a - a^dag)|k>
    ms = project_to_dressed(basis, sm - sm.T, n)  # <j|(s- - s+)|k>
    kept = basis.states[:n]
    wc = basis.params.omega_c

    channels = []
    outflow = np.zeros(n)
    gain = np.zeros((n, n))
    for k in range(n):
        for j in range(k):
            if kept[j].parity == kept[k].parity:
                continue  # parity selection rule
            delta = kept[k].energy - kept[j].energy
            if delta <= 0.0:
                continue
            rc = gamma * (delta / wc) * ma[j, k] ** 2
            ra = kappa * (delta / wc) * ms[j, k] ** 2
            channels.append(
                JumpChannel(
                    to_level=j,
                    from_level=k,
                    to_parity=kept[j].parity,
                    from_parity=kept[k].parity,
                    to_rank=kept[j].index_in_parity,
                    from_rank=kept[k].index_in_parity,
                    delta=delta,
                    rate_cavity=rc,
                    rate_atom=ra,
                )
            )
            outflow[k] += rc + ra
            gain[j, k] += rc + ra

    return DissipatorSpec(
        basis=basis,
        n_levels_kept=n,
        gamma=gamma,
        kappa=kappa,
        channels=tuple(channels),
        energies=np.array([s.energy for s in kept]),
        outflow=outflow,
        gain=gain,
    )


def apply_dissipator(spec: DissipatorSpec, rho: np.ndarray) -> np.ndarray:
    """Sum of Lindblad terms D[|j><k|] rho over all channels.

    Gain feeds populations only (channels are rank-one between energy
    eigenstates); loss damps every row/column touching an emitting level.
    """
    n = spec.n_levels_kept
    if rho.shape != (n, n):
        raise ConfigurationError(
            f"rho has shape {rho.shape}, dissipator expects ({n}, {n})"
        )
    w = spec.outflow
    out = -0.5 * (w[:, None] + w[None, :]) * rho
    out[np.diag_indices(n)] += spec.gain @ np.diagonal(rho)
    return out
