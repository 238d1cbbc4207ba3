"""Parameter sweeps over coupling and drive frequency, with CSV/JSON output.

Row order is deterministic (task list is built up front, workers fill a
preallocated slot table), float fields are serialized with repr (shortest
round-trip), and per-point failures land in diagnostics instead of aborting
the sweep. The wall_ms column is the only field that varies between
identical runs.
"""
from __future__ import annotations

import dataclasses
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .dissipator import transition_rates
from .dynamics import DriveConfig, evolve_to_steady
from .observables import build_xplus, emission_stats
from .params import (
    ConfigurationError,
    FockTruncation,
    NumericControls,
    RabiParams,
)
from .spectrum import (
    anharmonicity,
    annihilation_operator,
    diagonalize_dressed,
    project_to_dressed,
    transition_frequency,
)

DYNAMIC_MODES = (
    "grid",
    "cut_second_transition",
    "cut_first_transition",
    "freq_scan",
)
DEBUG_MODES = ("rates_vs_g", "anharmonicity_vs_g", "spectrum_vs_g")
MODES = DYNAMIC_MODES + DEBUG_MODES

MAIN_COLUMNS = (
    "g",
    "omega_d",
    "i_out",
    "g2",
    "converged",
    "n_fock",
    "n_levels",
    "refinements",
    "wall_ms",
)
SPECTRUM_COLUMNS = ("g", "rank", "energy", "parity", "j")
RATES_COLUMNS = (
    "g",
    "j_to",
    "p_to",
    "k_from",
    "p_from",
    "delta",
    "gamma_rate",
    "kappa_rate",
    "chi",
)
ANHARM_COLUMNS = ("g", "eta")

_REFINE_RTOL = 1e-3
_MAX_REFINEMENTS = 6
_FOCK_STEP = 8
_LEVEL_STEP = 4


@dataclass(frozen=True)
class SweepSpec:
    mode: str
    g_values: tuple[float, ...]
    wd_values: tuple[float, ...] | None = None  # grid and freq_scan only
    gamma: float = 1e-2
    kappa: float = 1e-2
    drive_ratio: float = 0.1  # F = drive_ratio * gamma
    omega_a: float = 1.0
    controls: NumericControls = NumericControls()

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ConfigurationError(f"unknown mode {self.mode!r}; pick from {MODES}")
        if not self.g_values:
            raise ConfigurationError("empty g grid")
        if any(g < 0 for g in self.g_values):
            raise ConfigurationError("g values must be >= 0")
        if self.gamma <= 0:
            raise ConfigurationError("gamma must be > 0 (sets drive and relax scales)")
        if self.kappa < 0:
            raise ConfigurationError("kappa must be >= 0")
        if self.drive_ratio < 0:
            raise ConfigurationError("drive_ratio must be >= 0")
        if self.mode in ("grid", "freq_scan"):
            if not self.wd_values:
                raise ConfigurationError(f"mode {self.mode} needs wd values")
            if any(w <= 0 for w in self.wd_values):
                raise ConfigurationError("drive frequencies must be positive")
        if self.mode == "freq_scan" and len(self.g_values) != 1:
            raise ConfigurationError("freq_scan runs at a single g")

    def base_params(self, g: float) -> RabiParams:
        return RabiParams(
            omega_a=self.omega_a,
            g=g,
            gamma=self.gamma,
            kappa=self.kappa,
            drive_amp=self.drive_ratio * self.gamma,
            drive_freq=1.0,  # placeholder, set per point
        )


@dataclass
class SweepResult:
    spec: SweepSpec
    columns: tuple[str, ...]
    rows: list[tuple]
    diagnostics: list[str] = field(default_factory=list)


def track_resonance(
    params: RabiParams, trunc: FockTruncation, g: float, which: str
) -> float:
    """Drive frequency locked to a transition as it moves with g."""
    basis = diagonalize_dressed(dataclasses.replace(params, g=g), trunc)
    return transition_frequency(basis, which)


@dataclass(frozen=True)
class PointResult:
    omega_d: float
    i_out: float
    g2: float | None
    converged: bool
    staleness: float


def _evaluate(
    params: RabiParams,
    controls: NumericControls,
    n_fock: int,
    n_levels: int,
    transition: str | None,
    omega_d: float | None,
) -> PointResult:
    """One steady-cycle run at fixed truncation and level count."""
    trunc = FockTruncation(n_fock)
    basis = diagonalize_dressed(params, trunc)
    wd = transition_frequency(basis, transition) if transition else omega_d
    assert wd is not None
    p = dataclasses.replace(params, drive_freq=wd)
    spec = transition_rates(basis, p.gamma, p.kappa, n_levels)
    a = annihilation_operator(trunc)
    config = DriveConfig(
        params=p,
        spec=spec,
        drive_matrix=project_to_dressed(basis, a + a.T, n_levels),
        t_relax=controls.resolve_t_relax(p.gamma, p.kappa),
        n_avg_periods=controls.n_avg_periods,
        samples_per_period=controls.samples_per_period,
        integrator_tol=controls.integrator_tol,
    )
    cycle = evolve_to_steady(config)
    stats = emission_stats(cycle, build_xplus(basis, n_levels))
    return PointResult(
        omega_d=wd,
        i_out=stats.i_out,
        g2=stats.g2_zero,
        converged=cycle.converged,
        staleness=cycle.staleness,
    )


@dataclass(frozen=True)
class ConvergenceReport:
    n_fock: int
    n_levels: int
    refinements: int
    settled: bool  # False when _MAX_REFINEMENTS was hit
    result: PointResult


def _close(a: PointResult, b: PointResult) -> bool:
    def rel(x: float, y: float) -> float:
        return abs(x - y) / max(abs(x), abs(y), 1e-300)

    if rel(a.i_out, b.i_out) >= _REFINE_RTOL:
        return False
    if (a.g2 is None) != (b.g2 is None):
        return False
    if a.g2 is not None and b.g2 is not None and rel(a.g2, b.g2) >= _REFINE_RTOL:
        return False
    return True


def auto_converge(
    params: RabiParams,
    controls: NumericControls,
    transition: str | None = None,
    omega_d: float | None = None,
) -> ConvergenceReport:
    """Grow truncation (+8 Fock) and kept levels (+4) until i_out and g2
    both move less than 1e-3 relative between successive evaluations.

    Returns the settled (previous) controls with the refinement count;
    count 0 means the starting controls were already converged. After 6
    refinements without settling the report is flagged.
    """
    if (transition is None) == (omega_d is None):
        raise ConfigurationError("pass exactly one of transition / omega_d")
    nf = controls.resolve_n_fock(params.g)
    nl = controls.n_levels
    prev = _evaluate(params, controls, nf, nl, transition, omega_d)
    for r in range(_MAX_REFINEMENTS):
        nf2 = nf + _FOCK_STEP
        nl2 = min(nl + _LEVEL_STEP, 2 * nf2)
        nxt = _evaluate(params, controls, nf2, nl2, transition, omega_d)
        if _close(prev, nxt):
            return ConvergenceReport(nf, nl, r, True, prev)
        nf, nl, prev = nf2, nl2, nxt
    return ConvergenceReport(nf, nl, _MAX_REFINEMENTS, False, prev)


@dataclass(frozen=True)
class _Task:
    g: float
    transition: str | None
    omega_d: float | None


def _dynamic_row(spec: SweepSpec, task: _Task) -> tuple[tuple, str | None]:
    params = spec.base_params(task.g)
    controls = spec.controls
    start = time.perf_counter()
    try:
        if controls.refine:
            rep = auto_converge(params, controls, task.transition, task.omega_d)
            nf, nl, refinements = rep.n_fock, rep.n_levels, rep.refinements
            res = rep.result
            converged = res.converged and rep.settled
        else:
            nf = controls.resolve_n_fock(task.g)
            nl = controls.n_levels
            refinements = 0
            res = _evaluate(params, controls, nf, nl, task.transition, task.omega_d)
            converged = res.converged
        wall_ms = int(round(1000.0 * (time.perf_counter() - start)))
        row = (
            task.g,
            res.omega_d,
            res.i_out,
            res.g2,
            converged,
            nf,
            nl,
            refinements,
            wall_ms,
        )
        return row, None
    except Exception as exc:  # keep sweeping; the row records the failure
        wall_ms = int(round(1000.0 * (time.perf_counter() - start)))
        nf = controls.resolve_n_fock(task.g)
        row = (
            task.g,
            task.omega_d,
            None,
            None,
            False,
            nf,
            controls.n_levels,
            0,
            wall_ms,
        )
        return row, f"g={task.g!r} wd={task.omega_d!r}: {type(exc).__name__}: {exc}"


def _spectral_rows(spec: SweepSpec) -> SweepResult:
    columns = {
        "spectrum_vs_g": SPECTRUM_COLUMNS,
        "rates_vs_g": RATES_COLUMNS,
        "anharmonicity_vs_g": ANHARM_COLUMNS,
    }[spec.mode]
    rows: list[tuple] = []
    diagnostics: list[str] = []
    for g in spec.g_values:
        params = spec.base_params(g)
        nf = spec.controls.resolve_n_fock(g)
        nl = spec.controls.n_levels
        try:
            basis = diagonalize_dressed(params, FockTruncation(nf))
            if spec.mode == "spectrum_vs_g":
                for rank, s in enumerate(basis.states[:nl]):
                    rows.append(
                        (g, rank, s.energy, "+" if s.parity > 0 else "-",
                         s.index_in_parity)
                    )
            elif spec.mode == "rates_vs_g":
                dspec = transition_rates(basis, spec.gamma, spec.kappa, nl)
                for c in dspec.channels:
                    rows.append(
                        (
                            g,
                            c.to_rank,
                            "+" if c.to_parity > 0 else "-",
                            c.from_rank,
                            "+" if c.from_parity > 0 else "-",
                            c.delta,
                            c.rate_cavity,
                            c.rate_atom,
                            c.rate_total,
                        )
                    )
            else:
                rows.append((g, anharmonicity(basis)))
        except Exception as exc:
            diagnostics.append(f"g={g!r}: {type(exc).__name__}: {exc}")
    return SweepResult(spec, columns, rows, diagnostics)


def run_sweep(spec: SweepSpec, threads: int = 1, on_row=None) -> SweepResult:
    """Run every point of the sweep; never aborts on a single bad point."""
    if threads < 1:
        raise ConfigurationError("threads must be >= 1")
    if spec.mode in DEBUG_MODES:
        result = _spectral_rows(spec)
        if on_row is not None:
            on_row(len(result.rows), len(result.rows))
        return result

    tasks: list[_Task] = []
    if spec.mode == "grid":
        for g in spec.g_values:
            for wd in spec.wd_values or ():
                tasks.append(_Task(g, None, wd))
    elif spec.mode == "freq_scan":
        g = spec.g_values[0]
        for wd in spec.wd_values or ():
            tasks.append(_Task(g, None, wd))
    else:
        which = "second" if spec.mode == "cut_second_transition" else "first"
        tasks = [_Task(g, which, None) for g in spec.g_values]

    rows: list[tuple | None] = [None] * len(tasks)
    notes: list[str | None] = [None] * len(tasks)
    done = 0

    def work(i: int) -> None:
        rows[i], notes[i] = _dynamic_row(spec, tasks[i])

    if threads == 1:
        for i in range(len(tasks)):
            work(i)
            done += 1
            if on_row is not None:
                on_row(done, len(tasks))
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for i, _ in enumerate(pool.map(work, range(len(tasks)))):
                done += 1
                if on_row is not None:
                    on_row(done, len(tasks))

    return SweepResult(
        spec,
        MAIN_COLUMNS,
        [r for r in rows if r is not None],
        [n for n in notes if n is not None],
    )


def _format(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def to_csv(result: SweepResult) -> str:
    lines = [",".join(result.columns)]
    lines.extend(",".join(_format(v) for v in row) for row in result.rows)
    return "\n".join(lines) + "\n"


def _json_value(value):
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def to_json(result: SweepResult) -> str:
    spec = result.spec
    meta = {
        "mode": spec.mode,
        "gamma": spec.gamma,
        "kappa": spec.kappa,
        "drive_ratio": spec.drive_ratio,
        "omega_a": spec.omega_a,
        "controls": dataclasses.asdict(spec.controls),
        "columns": list(result.columns),
        "n_rows": len(result.rows),
        "diagnostics": result.diagnostics,
        "package_version": __version__,
        "generated_at": datetime.now(timezone.utc).isoformat(),
    }
    rows = [
        {c: _json_value(v) for c, v in zip(result.columns, row)}
        for row in result.rows
    ]
    return json.dumps({"meta": meta, "rows": rows}, indent=2) + "\n"
