"""Output-field operator and emitted-photon statistics.

What a detector outside the cavity sees in this regime is not <a^dag a>:
the positive-frequency output operator X+ carries the transition frequency
as a weight, X+[j,k] = Delta_jk <Psi_j| i(a^dag - a) |Psi_k> for every pair
with E_j < E_k. Intensity and g2(0) are cycle averages of normal-ordered
products of X- = (X+)^dag and X+.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dynamics import SteadyCycle, period_average
from .params import UndefinedCorrelationError
from .spectrum import DressedBasis, annihilation_operator, project_to_dressed

# below floor * F^2 the intensity is numerically indistinguishable from
# zero and g2 would divide noise by noise
_G2_FLOOR_SCALE = 1e-12


@dataclass(frozen=True)
class OutputOperator:
    xplus: np.ndarray = field(repr=False)  # strictly lowering in energy

    @property
    def xminus(self) -> np.ndarray:
        return self.xplus.conj().T


@dataclass(frozen=True)
class EmissionStats:
    i_out: float
    g2_zero: float | None  # None when the intensity sits below the floor


def build_xplus(basis: DressedBasis, n_levels: int) -> OutputOperator:
    """Energy-lowering part of the weighted field quadrature.

    Entry (j, k) is nonzero only for E_j < E_k (and opposite parity, since
    a - a^dag flips parity); acting on the ground state gives zero.
    """
    a = annihilation_operator(basis.truncation)
    ma = project_to_dressed(basis, a - a.T, n_levels)
    kept = basis.states[:n_levels]
    e = np.array([s.energy for s in kept])
    par = np.array([s.parity for s in kept])
    delta = e[None, :] - e[:, None]  # Delta[j,k] = E_k - E_j
    lowering = delta > 0.0
    opposite = par[:, None] != par[None, :]
    # <j| i(a^dag - a) |k> = -i <j|(a - a^dag)|k>
    xp = np.where(lowering & opposite, delta * (-1j) * ma, 0.0)
    return OutputOperator(xplus=xp)


def intensity(cycle: SteadyCycle, out: OutputOperator) -> float:
    """I_out = <X- X+> averaged over the steady cycle."""
    return period_average(cycle, out.xminus @ out.xplus)


def g2_zero(cycle: SteadyCycle, out: OutputOperator) -> float:
    """Equal-time second-order coherence of the emitted field.

    Numerator <X- X- X+ X+> and denominator <X- X+> are period-averaged
    separately before the ratio. Raises UndefinedCorrelationError when the
    intensity is below 1e-12 * F^2 (in particular whenever F = 0).
    """
    i_out = intensity(cycle, out)
    floor = _G2_FLOOR_SCALE * cycle.drive_amp**2
    if i_out <= floor:
        raise UndefinedCorrelationError(
            f"i_out = {i_out:.3e} at or below the g2 floor {floor:.3e}"
        )
    xp, xm = out.xplus, out.xminus
    num = period_average(cycle, xm @ xm @ xp @ xp)
    return num / i_out**2


def emission_stats(cycle: SteadyCycle, out: OutputOperator) -> EmissionStats:
    i_out = intensity(cycle, out)
    try:
        g2 = g2_zero(cycle, out)
    except UndefinedCorrelationError:
        g2 = None
    return EmissionStats(i_out=i_out, g2_zero=g2)
