"""Time evolution of the driven master equation to its steady cycle.

The generator is linear in rho with one time-periodic scalar coefficient,
so we integrate in a packed real representation (diagonal, upper-real,
upper-imag: n^2 dof) with two precomputed dense superoperators:

    dy/dt = L0 y + F cos(wd t) L1 y

L0 carries the static Hamiltonian and the dissipator, L1 the drive
commutator. Packing enforces Hermiticity exactly; trace is conserved by
construction of the dissipator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .dissipator import DissipatorSpec, apply_dissipator
from .params import ConfigurationError, IntegrationError, RabiParams

_STALENESS_TOL = 1e-4  # period-averaged populations, last two periods
_POSITIVITY_TOL = 1e-4  # eigenvalue floor before we call the run unphysical


class _Packing:
    """Hermitian n x n <-> real vector [diag, triu real, triu imag]."""

    def __init__(self, n: int):
        self.n = n
        self.iu = np.triu_indices(n, 1)

    @property
    def size(self) -> int:
        return self.n * self.n

    def pack(self, rho: np.ndarray) -> np.ndarray:
        up = rho[self.iu]
        return np.concatenate([np.real(np.diag(rho)), up.real, up.imag])

    def unpack(self, y: np.ndarray) -> np.ndarray:
        n = self.n
        m = (self.size - n) // 2
        rho = np.zeros((n, n), dtype=complex)
        rho[self.iu] = y[n : n + m] + 1j * y[n + m :]
        rho = rho + rho.conj().T
        rho[np.diag_indices(n)] = y[:n]
        return rho


@dataclass(frozen=True)
class DriveConfig:
    """Everything evolve_to_steady needs for one (g, wd, F) point."""

    params: RabiParams
    spec: DissipatorSpec
    drive_matrix: np.ndarray = field(repr=False)  # (a + a^dag) in kept levels
    t_relax: float
    n_avg_periods: int = 10
    samples_per_period: int = 64
    integrator_tol: float = 1e-8

    def __post_init__(self) -> None:
        n = self.spec.n_levels_kept
        if self.drive_matrix.shape != (n, n):
            raise ConfigurationError(
                f"drive matrix shape {self.drive_matrix.shape}, expected ({n}, {n})"
            )
        positive = [r for r in (self.params.gamma, self.params.kappa) if r > 0]
        if not positive:
            raise ConfigurationError("need gamma or kappa > 0 to relax")
        if self.t_relax < 5.0 / min(positive):
            raise ConfigurationError(
                f"t_relax {self.t_relax:g} is under 5/min(gamma, kappa); "
                "the transient would leak into the sampled cycle"
            )
        if self.n_avg_periods < 5:
            raise ConfigurationError("n_avg_periods must be >= 5")
        if self.samples_per_period < 32:
            raise ConfigurationError("samples_per_period must be >= 32")
        if self.integrator_tol <= 0:
            raise ConfigurationError("integrator_tol must be positive")

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.params.drive_freq


@dataclass(frozen=True)
class SteadyCycle:
    """One full drive period of the asymptotic state."""

    rho_samples: np.ndarray = field(repr=False)  # (samples_per_period, n, n)
    phase_grid: np.ndarray = field(repr=False)  # wd*t mod 2pi, ascending
    staleness: float  # max pop drift between the last two sampled periods
    converged: bool
    drive_amp: float


def rhs(t: float, rho: np.ndarray, config: DriveConfig) -> np.ndarray:
    """i[rho, H(t)] + dissipator, with H(t) = diag(E) + F cos(wd t) V."""
    p = config.params
    h = np.diag(config.spec.energies).astype(complex)
    h += (p.drive_amp * math.cos(p.drive_freq * t)) * config.drive_matrix
    return -1j * (h @ rho - rho @ h) + apply_dissipator(config.spec, rho)


def _split_rhs(config: DriveConfig, rho: np.ndarray):
    """Static part and drive part (per unit F cos) of the generator."""
    e = config.spec.energies - config.spec.energies[0]
    static = -1j * (e[:, None] - e[None, :]) * rho
    static += apply_dissipator(config.spec, rho)
    v = config.drive_matrix
    drive = -1j * (v @ rho - rho @ v)
    return static, drive


def _superoperators(config: DriveConfig, pk: _Packing):
    """Columns of the packed generator, built by probing basis elements."""
    m = pk.size
    l0 = np.empty((m, m))
    l1 = np.empty((m, m))
    probe = np.zeros(m)
    for i in range(m):
        probe[i] = 1.0
        rho = pk.unpack(probe)
        static, drive = _split_rhs(config, rho)
        l0[:, i] = pk.pack(static)
        l1[:, i] = pk.pack(drive)
        probe[i] = 0.0
    return l0, l1


def evolve_to_steady(config: DriveConfig) -> SteadyCycle:
    """Relax from the dressed ground state, then sample the steady cycle.

    Relaxation runs to t_relax rounded up to whole drive periods (keeps the
    sampling phase aligned), then n_avg_periods * samples_per_period points
    are recorded. The returned cycle is the final period; staleness compares
    period-averaged populations of the last two periods and flags the cycle
    non-converged above 1e-4. Positivity violations beyond 1e-4 raise
    IntegrationError.
    """
    p = config.params
    pk = _Packing(config.spec.n_levels_kept)
    l0, l1 = _superoperators(config, pk)
    amp, wd = p.drive_amp, p.drive_freq

    def fun(t: float, y: np.ndarray) -> np.ndarray:
        return l0 @ y + (amp * math.cos(wd * t)) * (l1 @ y)

    t_period = config.period
    t0 = math.ceil(config.t_relax / t_period) * t_period
    y0 = np.zeros(pk.size)
    y0[0] = 1.0  # dressed ground projector
    kwargs = dict(
        method="RK45",
        rtol=config.integrator_tol,
        atol=1e-12,
        max_step=t_period / 8.0,
    )
    relax = solve_ivp(fun, (0.0, t0), y0, **kwargs)
    if not relax.success:
        raise IntegrationError(f"relaxation stage failed: {relax.message}")

    spp = config.samples_per_period
    total = config.n_avg_periods * spp
    dt = t_period / spp
    t_eval = t0 + dt * np.arange(total)
    sampled = solve_ivp(
        fun, (t0, float(t_eval[-1])), relax.y[:, -1], t_eval=t_eval, **kwargs
    )
    if not sampled.success:
        raise IntegrationError(f"sampling stage failed: {sampled.message}")

    n = pk.n
    pops = sampled.y[:n, :].reshape(n, config.n_avg_periods, spp)
    pavg = pops.mean(axis=2)  # per-period average of each population
    staleness = float(np.max(np.abs(pavg[:, -1] - pavg[:, -2])))

    rho_samples = np.stack([pk.unpack(sampled.y[:, k]) for k in range(total - spp, total)])
    min_eig = float(min(np.linalg.eigvalsh(r)[0] for r in rho_samples))
    if min_eig < -_POSITIVITY_TOL:
        raise IntegrationError(
            f"sampled state lost positivity (min eigenvalue {min_eig:.2e}); "
            "tighten integrator_tol or raise the truncation"
        )
    # t0 is a whole number of periods, so the sampling phases are exact
    return SteadyCycle(
        rho_samples=rho_samples,
        phase_grid=2.0 * math.pi * np.arange(spp) / spp,
        staleness=staleness,
        converged=staleness < _STALENESS_TOL,
        drive_amp=amp,
    )


def period_average(cycle: SteadyCycle, op: np.ndarray) -> float:
    """Cycle average of <op> (real part; callers pass Hermitian operators)."""
    vals = np.einsum("sij,ji->s", cycle.rho_samples, op)
    return float(np.mean(vals.real))
