"""Model parameters, numerical controls, and the error taxonomy."""
from __future__ import annotations

import math
from dataclasses import dataclass, field


class ConfigurationError(ValueError):
    """Invalid parameter or control value (caught before any numerics run)."""


class ParityPurityError(RuntimeError):
    """An eigenvector failed to resolve into a parity sector."""


class CrossingNotFoundError(LookupError):
    """Bisection bracket does not contain a sign change."""


class UndefinedCorrelationError(ArithmeticError):
    """g2(0) requested where the intensity is below the defined floor."""


class IntegrationError(RuntimeError):
    """Time integration produced an unphysical state."""


@dataclass(frozen=True)
class RabiParams:
    """Physical parameters, all in units of the cavity frequency.

    omega_c is the unit of energy and stays 1.0; it is a field only so the
    scaling is explicit at call sites.
    """

    omega_c: float = 1.0
    omega_a: float = 1.0
    g: float = 0.0
    gamma: float = 1e-2
    kappa: float = 1e-2
    drive_amp: float = 0.0
    drive_freq: float = 1.0

    def __post_init__(self) -> None:
        if self.omega_c <= 0 or self.omega_a <= 0:
            raise ConfigurationError("omega_c and omega_a must be positive")
        if self.g < 0:
            raise ConfigurationError("g must be >= 0 (sign is a gauge choice)")
        if self.gamma < 0 or self.kappa < 0:
            raise ConfigurationError("loss rates must be >= 0")
        if self.drive_amp < 0:
            raise ConfigurationError("drive_amp must be >= 0")
        if self.drive_freq <= 0:
            raise ConfigurationError("drive_freq must be positive")


@dataclass(frozen=True)
class FockTruncation:
    """Cavity Fock-space cutoff. Total Hilbert dimension is 2 * n_fock."""

    n_fock: int

    def __post_init__(self) -> None:
        if self.n_fock < 4:
            raise ConfigurationError("n_fock must be >= 4")

    @property
    def dim(self) -> int:
        return 2 * self.n_fock


def default_n_fock(g: float) -> int:
    # the polaron displacement grows like g, occupation like g^2;
    # 20 + 4 g^2 keeps the ground energy converged to ~1e-10 up to g ~ 3
    return math.ceil(20.0 + 4.0 * g * g)


def default_truncation(g: float) -> FockTruncation:
    return FockTruncation(default_n_fock(g))


DEFAULT_N_LEVELS = 12


@dataclass(frozen=True)
class NumericControls:
    """Integration and truncation knobs shared by sweeps and one-off runs."""

    n_fock: int | None = None  # None: 20 + 4 g^2 per point
    n_levels: int = DEFAULT_N_LEVELS
    t_relax: float | None = None  # None: 10 / gamma
    n_avg_periods: int = 10
    samples_per_period: int = 64
    integrator_tol: float = 1e-8
    refine: bool = True  # run the +8 fock / +4 level convergence loop

    def __post_init__(self) -> None:
        if self.n_fock is not None and self.n_fock < 4:
            raise ConfigurationError("n_fock must be >= 4")
        if self.n_levels < 2:
            raise ConfigurationError("need at least 2 kept levels")
        if self.n_avg_periods < 5:
            raise ConfigurationError("n_avg_periods must be >= 5")
        if self.samples_per_period < 32:
            raise ConfigurationError("samples_per_period must be >= 32")
        if self.integrator_tol <= 0:
            raise ConfigurationError("integrator_tol must be positive")

    def resolve_n_fock(self, g: float) -> int:
        return self.n_fock if self.n_fock is not None else default_n_fock(g)

    def resolve_t_relax(self, gamma: float, kappa: float) -> float:
        if self.t_relax is not None:
            return self.t_relax
        if gamma <= 0:
            raise ConfigurationError("gamma must be > 0 to pick t_relax")
        return 10.0 / gamma
