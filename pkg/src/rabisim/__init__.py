"""Driven-dissipative quantum Rabi model in the dressed-state picture.

Steady-cycle emission statistics (output intensity, g2(0)) of a lossy
cavity-atom system driven through its parity-allowed transitions, valid
from weak through deep strong coupling.
"""

__version__ = "0.1.0"

from .params import (
    ConfigurationError,
    CrossingNotFoundError,
    FockTruncation,
    IntegrationError,
    NumericControls,
    ParityPurityError,
    RabiParams,
    UndefinedCorrelationError,
    default_n_fock,
    default_truncation,
)
from .spectrum import (
    DressedBasis,
    DressedState,
    anharmonicity,
    annihilation_operator,
    atom_lowering_operator,
    build_parity_operator,
    build_rabi_hamiltonian,
    detect_parity_crossing,
    diagonalize_dressed,
    doublet_splitting_oracle,
    project_to_dressed,
    transition_frequency,
)
from .dissipator import DissipatorSpec, JumpChannel, apply_dissipator, transition_rates
from .dynamics import DriveConfig, SteadyCycle, evolve_to_steady, period_average, rhs
from .observables import (
    EmissionStats,
    OutputOperator,
    build_xplus,
    emission_stats,
    g2_zero,
    intensity,
)
from .sweep import (
    ConvergenceReport,
    SweepResult,
    SweepSpec,
    auto_converge,
    run_sweep,
    to_csv,
    to_json,
    track_resonance,
)

__all__ = [
    "__version__",
    "ConfigurationError",
    "CrossingNotFoundError",
    "IntegrationError",
    "ParityPurityError",
    "UndefinedCorrelationError",
    "RabiParams",
    "FockTruncation",
    "NumericControls",
    "default_n_fock",
    "default_truncation",
    "DressedState",
    "DressedBasis",
    "build_rabi_hamiltonian",
    "build_parity_operator",
    "annihilation_operator",
    "atom_lowering_operator",
    "diagonalize_dressed",
    "detect_parity_crossing",
    "transition_frequency",
    "anharmonicity",
    "doublet_splitting_oracle",
    "project_to_dressed",
    "JumpChannel",
    "DissipatorSpec",
    "transition_rates",
    "apply_dissipator",
    "DriveConfig",
    "SteadyCycle",
    "rhs",
    "evolve_to_steady",
    "period_average",
    "OutputOperator",
    "EmissionStats",
    "build_xplus",
    "intensity",
    "g2_zero",
    "emission_stats",
    "SweepSpec",
    "SweepResult",
    "ConvergenceReport",
    "track_resonance",
    "auto_converge",
    "run_sweep",
    "to_csv",
    "to_json",
]
