"""Spread complexity, quench dynamics, and work statistics for free-fermion chains.

Three exactly solvable models (transverse Ising with three-spin
interactions, anisotropic XY, SSH) reduce per momentum mode to two-level
problems. This package computes ground-state spread complexity, its
evolution under single/multiple sudden quenches and periodic driving, and
the statistics of quench work, each backed by independent brute-force
oracles at the mode level.
"""

__version__ = "0.1.0"

from .models import (  # noqa: F401
    MODELS,
    SSH,
    THREE_SPIN,
    XY_CHAIN,
    ModelKind,
    SSHParams,
    ThreeSpinParams,
    XYParams,
    model_by_name,
)
from .modes import (  # noqa: F401
    BlochComponents,
    ModeHamiltonian,
    ModeState,
    bloch_from_components,
    ground_state,
    mode_unitary,
    overlap,
)
from .numerics import (  # noqa: F401
    MomentumGrid,
    SweepResult,
    centered_derivative,
    default_grid,
    elliptic_E,
    elliptic_K,
    find_peaks,
    integrate_time_periodic,
    simpson_integrate,
)
from .spread import (  # noqa: F401
    ComplexityCurve,
    QuenchSchedule,
    QuenchSegment,
    complexity_derivative_sweep,
    ground_state_complexity,
    late_time_average_prediction,
    quench_complexity,
    single_quench_closed_form,
)
from .floquet import (  # noqa: F401
    DriveSpec,
    FloquetAngles,
    brute_force_mode_complexity,
    complexity_vs_cycles,
    epsilon_cycle,
    floquet_complexity,
    floquet_sweep,
    gamma_of_t,
    general_j_return_amplitude,
    stroboscopic_return_amplitude,
)
from .workstats import (  # noqa: F401
    LanczosData,
    WorkStats,
    krylov_chain_complexity,
    lanczos_oracle,
    per_mode_lanczos,
    ssh_work_mean_closed_form,
    ssh_work_variance_closed_form,
    work_mean,
    work_stats_derivative_sweep,
    work_variance,
)
