"""Spread complexity of ground states and sudden-quench evolutions.

The complexity of a state against the Krylov basis of a two-level mode
reduces to 1 - |S|^2 per momentum mode, with S the return amplitude; the
chain value is the momentum integral weighted by the model's measure.
Schedules of sudden quenches are evolved by composing exact mode unitaries,
which doubles as the brute-force oracle for the analytic single-quench form.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .models import ModelKind, Params
from .modes import ModeHamiltonian, apply_unitary, ground_state, mode_unitary, overlap
from .numerics import MomentumGrid, SweepResult, default_grid, map_ordered

DEFAULT_TIME_SAMPLES = 500


@dataclass(frozen=True)
class QuenchSegment:
    """One leg of a schedule: evolve under ``params`` for ``duration``."""

    params: Params
    duration: float

    def __post_init__(self):
        if not self.duration > 0:
            raise ValueError(f"segment duration must be positive, got {self.duration}")


@dataclass(frozen=True)
class QuenchSchedule:
    """Initial-state preparation parameters plus an ordered list of segments."""

    model: ModelKind
    initial: Params
    segments: tuple[QuenchSegment, ...]

    def __post_init__(self):
        if len(self.segments) == 0:
            raise ValueError("a quench schedule needs at least one segment")

    @classmethod
    def single(
        cls, model: ModelKind, initial: Params, final: Params, duration: float
    ) -> "QuenchSchedule":
        return cls(model, initial, (QuenchSegment(final, duration),))

    @property
    def total_duration(self) -> float:
        return float(sum(s.duration for s in self.segments))

    @property
    def switch_times(self) -> np.ndarray:
        """Cumulative segment end times."""
        return np.cumsum([s.duration for s in self.segments])


@dataclass(frozen=True)
class ComplexityCurve:
    times: np.ndarray
    complexity: np.ndarray


def ground_state_complexity(
    model: ModelKind, params: Params, grid: MomentumGrid | None = None
) -> float:
    """Spread complexity of the model ground state relative to the vacuum."""
    grid = grid or default_grid()
    phi = model.components(params, grid.nodes).phi
    return float(model.measure_prefactor * grid.integrate_values(model.ground_integrand(phi)))


def sweep_axis(start: float, stop: float, step: float) -> np.ndarray:
    """Inclusive uniform axis; stop is kept when it falls on the step lattice."""
    n = int(round((stop - start) / step))
    if n < 2:
        raise ValueError("sweep needs at least 3 points")
    return start + step * np.arange(n + 1)


def complexity_derivative_sweep(
    model: ModelKind,
    params: Params,
    axis: str,
    start: float,
    stop: float,
    step: float,
    grid: MomentumGrid | None = None,
    threads: int = 1,
) -> SweepResult:
    """Ground-state complexity and its derivative along one parameter field."""
    _check_axis(model, axis)
    grid = grid or default_grid()
    values = sweep_axis(start, stop, step)

    def one(v: float) -> float:
        return ground_state_complexity(model, dataclasses.replace(params, **{axis: v}), grid)

    return SweepResult.from_values(values, map_ordered(one, values, threads))


def quench_complexity(
    schedule: QuenchSchedule,
    times: np.ndarray | None = None,
    samples: int = DEFAULT_TIME_SAMPLES,
    grid: MomentumGrid | None = None,
) -> ComplexityCurve:
    """Complexity curve for a schedule of sudden quenches.

    Per momentum mode the initial ground state is propagated with the exact
    composed segment unitaries; the curve is the measure-weighted integral of
    1 - |<psi(t)|psi_i>|^2. Sample times must lie within [0, total duration];
    a switch time belongs to the segment it terminates.
    """
    grid = grid or default_grid()
    if times is None:
        times = np.linspace(0.0, schedule.total_duration, samples)
    times = np.atleast_1d(np.asarray(times, dtype=float))
    total = schedule.total_duration
    if times.min() < -1e-12 or times.max() > total + 1e-12:
        raise ValueError(
            f"sample times must lie in [0, {total}], got range "
            f"[{times.min()}, {times.max()}]"
        )

    model = schedule.model
    nodes = grid.nodes
    psi0 = ground_state(model.components(schedule.initial, nodes).phi)

    seg_blochs = [model.components(s.params, nodes) for s in schedule.segments]
    durations = [s.duration for s in schedule.segments]
    ends = np.cumsum(durations)
    starts = ends - np.asarray(durations)

    # Cumulative products of completed-segment unitaries, per momentum node.
    eye = np.broadcast_to(np.eye(2, dtype=complex), (nodes.size, 2, 2))
    prefix = [eye]
    for bloch, dur in zip(seg_blochs, durations):
        u_full = mode_unitary(ModeHamiltonian(bloch), dur)
        prefix.append(np.matmul(u_full, prefix[-1]))

    seg_index = np.searchsorted(ends, times, side="left")
    seg_index = np.minimum(seg_index, len(durations) - 1)

    complexity = np.empty_like(times)
    for i, (t, j) in enumerate(zip(times, seg_index)):
        tau = t - starts[j]
        u = np.matmul(mode_unitary(ModeHamiltonian(seg_blochs[j]), tau), prefix[j])
        s = overlap(apply_unitary(u, psi0), psi0)
        complexity[i] = model.measure_prefactor * grid.integrate_values(
            1.0 - np.abs(s) ** 2
        )
    return ComplexityCurve(times, complexity)


def single_quench_closed_form(
    model: ModelKind,
    initial: Params,
    final: Params,
    times: np.ndarray,
    grid: MomentumGrid | None = None,
) -> ComplexityCurve:
    """Analytic single-quench curve: measure * integral of sin^2(dphi) sin^2(R_f t)."""
    grid = grid or default_grid()
    times = np.atleast_1d(np.asarray(times, dtype=float))
    phi_i = model.components(initial, grid.nodes).phi
    f = model.components(final, grid.nodes)
    envelope = np.sin(f.phi - phi_i) ** 2
    osc = np.sin(f.r[None, :] * times[:, None]) ** 2
    complexity = model.measure_prefactor * grid.integrate_values(envelope[None, :] * osc)
    return ComplexityCurve(times, np.atleast_1d(complexity))


def late_time_average_prediction(
    model: ModelKind, initial: Params, final: Params, grid: MomentumGrid | None = None
) -> float:
    """Predicted long-time mean of the single-quench curve.

    The oscillatory factor sin^2(R_f t) time-averages to 1/2 mode by mode, so
    the plateau is (measure/2) * integral of sin^2(phi_f - phi_i).
    """
    grid = grid or default_grid()
    phi_i = model.components(initial, grid.nodes).phi
    phi_f = model.components(final, grid.nodes).phi
    return float(
        0.5 * model.measure_prefactor * grid.integrate_values(np.sin(phi_f - phi_i) ** 2)
    )


def _check_axis(model: ModelKind, axis: str) -> None:
    names = {f.name for f in dataclasses.fields(model.params_cls)}
    if axis not in names:
        raise ValueError(f"axis {axis!r} is not a parameter of model {model.name!r}: {sorted(names)}")
