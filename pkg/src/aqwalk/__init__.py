"""Accelerated discrete-time quantum walks.

Simulation of one- and two-particle walks with an exponentially decaying
coin angle, phase-operator disorder (spatial or temporal), entanglement
negativity for the coin/position and particle/particle bipartitions,
dispersion and transfer-matrix analysis, and reproducible disorder
ensembles with a CSV/JSON experiment CLI.
"""

__version__ = "0.1.0"

from .coins import CoinSchedule, coin2, coin2_with_phase, coin4, coin4_with_phase, theta_at
from .ensemble import ConvergenceReport, EnsembleSpec, EnsembleSummary, convergence_report, run_ensemble
from .errors import (
    AqwalkError,
    BoundaryOverflowError,
    ConfigError,
    NonConvergenceError,
    RealizationError,
    SingularParameterError,
)
from .evolve import (
    DisorderSpec,
    PhaseLandscape,
    RunResult,
    WalkSpec,
    run_walk,
    sample_landscape,
    step_one_particle,
    step_two_particle,
)
from .observables import (
    Distribution1D,
    Distribution2D,
    NegativityResult,
    distribution,
    front_position,
    ipr,
    negativity_coin_position,
    negativity_particle_particle,
    reduced_particle_density,
    sigma,
)
from .spectral import (
    DispersionCurve,
    LyapunovEstimate,
    TransferMatrix,
    dispersion_omega,
    dispersion_residual,
    group_velocity,
    lyapunov_localization_length,
    max_group_velocity,
    transfer_matrix_1p,
    transfer_matrix_2p,
)
from .state import (
    InitialState,
    SpinorField1P,
    TwoParticleField,
    new_one_particle,
    new_two_particle,
    norm,
)

__all__ = [name for name in dir() if not name.startswith("_")]
