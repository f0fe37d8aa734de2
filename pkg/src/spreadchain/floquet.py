"""Stroboscopic dynamics under periodic parameter driving.

For a slowly driven two-level mode the invariant-operator construction gives
the state at stroboscopic times t = nT in closed form: the mode returns to
its t=0 dressing angle gamma, and the only memory of the cycle is the
accumulated dynamical phase. Per mode,

    S(nT) = cos(eps_n/2) - i cos(gamma - phi_i) sin(eps_n/2),
    1 - |S|^2 = sin^2(eps_n/2) sin^2(gamma - phi_i),

with eps_n = n * eps(T), eps(T) = 2 * integral over one period of the
instantaneous gap r(k; t). (The factor 2 is the eigenvalue splitting of the
traceless mode generator; it applies to every model here.) gamma is the
Bloch angle of the driven parameters at t = 0 (drive on), phi_i the angle of
the undriven base parameters; the mismatch between them is what makes the
complexity nonzero.

A brute-force validator (time-ordered product of instantaneous mode
unitaries) lives here too; the closed form is adiabatic, so agreement is
expected only for slow drives.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from math import comb

import numpy as np

from .models import ModelKind, Params
from .modes import (
    ArrayLike,
    ModeHamiltonian,
    apply_unitary,
    bloch_from_components,
    ground_state,
    mode_unitary,
    overlap,
)
from .numerics import MomentumGrid, SweepResult, default_grid, map_ordered

DEFAULT_STEPS_PER_PERIOD = 256


@dataclass(frozen=True)
class DriveSpec:
    """Sinusoidal drive on top of base parameters, observed at t = nT."""

    model: ModelKind
    base: Params
    delta: float
    period: float
    n_cycles: int

    def __post_init__(self):
        if self.delta < 0:
            raise ValueError(f"delta must be >= 0, got {self.delta}")
        if not self.period > 0:
            raise ValueError(f"period must be positive, got {self.period}")
        if self.n_cycles < 1:
            raise ValueError(f"n_cycles must be a positive integer, got {self.n_cycles}")

    @property
    def omega(self) -> float:
        return 2.0 * np.pi / self.period


@dataclass(frozen=True)
class FloquetAngles:
    """Per-mode stroboscopic data: dressing angle at t=0, undriven angle, phase per cycle."""

    gamma0: ArrayLike
    phi_i: ArrayLike
    epsilon_T: ArrayLike


def gamma_of_t(
    model: ModelKind,
    base: Params,
    delta: float,
    omega: float,
    k: ArrayLike,
    t: float,
) -> ArrayLike:
    """Dressing angle at time t: the Bloch angle of the driven parameters."""
    return model.components(model.driven_params(base, delta, omega, t), k).phi


def epsilon_cycle(
    model: ModelKind,
    base: Params,
    delta: float,
    omega: float,
    k: ArrayLike,
    steps_per_period: int = DEFAULT_STEPS_PER_PERIOD,
) -> ArrayLike:
    """Dynamical phase accumulated over one drive period.

    eps(T) = 2 * Simpson integral over [0, T] of the instantaneous gap
    r(k; t). Vectorized over k; periodicity gives eps(nT) = n * eps(T).
    """
    if steps_per_period < 64 or steps_per_period % 2 != 0:
        raise ValueError(f"steps_per_period must be even and >= 64, got {steps_per_period}")
    period = 2.0 * np.pi / omega
    t_nodes = np.linspace(0.0, period, steps_per_period + 1)
    k = np.asarray(k, dtype=float)
    gaps = np.stack(
        [model.gap(model.driven_params(base, delta, omega, t), k) for t in t_nodes]
    )
    w = np.ones(steps_per_period + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    w *= period / steps_per_period / 3.0
    eps = 2.0 * np.einsum("t,t...->...", w, gaps)
    return float(eps) if eps.ndim == 0 else eps


def floquet_angles(
    drive: DriveSpec, k: ArrayLike, steps_per_period: int = DEFAULT_STEPS_PER_PERIOD
) -> FloquetAngles:
    """Assemble the stroboscopic data for the drive at momentum k."""
    m, b = drive.model, drive.base
    return FloquetAngles(
        gamma0=gamma_of_t(m, b, drive.delta, drive.omega, k, 0.0),
        phi_i=m.components(b, k).phi,
        epsilon_T=epsilon_cycle(m, b, drive.delta, drive.omega, k, steps_per_period),
    )


def stroboscopic_return_amplitude(angles: FloquetAngles, n: int) -> complex | np.ndarray:
    """Return amplitude after n full cycles (gamma(nT) = gamma(0))."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    half = 0.5 * n * np.asarray(angles.epsilon_T, dtype=float)
    mismatch = np.asarray(angles.gamma0, dtype=float) - np.asarray(angles.phi_i, dtype=float)
    s = np.cos(half) - 1.0j * np.cos(mismatch) * np.sin(half)
    return complex(s) if np.ndim(s) == 0 else s


def mode_floquet_complexity(angles: FloquetAngles, n: int) -> ArrayLike:
    """Per-mode complexity sin^2(n eps_T / 2) sin^2(gamma - phi_i)."""
    half = 0.5 * n * np.asarray(angles.epsilon_T, dtype=float)
    mismatch = np.asarray(angles.gamma0, dtype=float) - np.asarray(angles.phi_i, dtype=float)
    c = np.sin(half) ** 2 * np.sin(mismatch) ** 2
    return float(c) if c.ndim == 0 else c


def floquet_complexity(
    drive: DriveSpec,
    grid: MomentumGrid | None = None,
    steps_per_period: int = DEFAULT_STEPS_PER_PERIOD,
) -> float:
    """Chain complexity at the stroboscopic time n_cycles * T."""
    grid = grid or default_grid()
    angles = floquet_angles(drive, grid.nodes, steps_per_period)
    return float(
        drive.model.measure_prefactor
        * grid.integrate_values(mode_floquet_complexity(angles, drive.n_cycles))
    )


@dataclass(frozen=True)
class CyclesCurve:
    cycles: np.ndarray
    complexity: np.ndarray


def complexity_vs_cycles(
    drive: DriveSpec,
    grid: MomentumGrid | None = None,
    steps_per_period: int = DEFAULT_STEPS_PER_PERIOD,
) -> CyclesCurve:
    """Complexity at every stroboscopic time n = 0 .. n_cycles.

    The one-period phase is computed once per momentum node and scaled by n.
    """
    grid = grid or default_grid()
    angles = floquet_angles(drive, grid.nodes, steps_per_period)
    ns = np.arange(drive.n_cycles + 1)
    halves = 0.5 * ns[:, None] * angles.epsilon_T[None, :]
    envelope = np.sin(angles.gamma0 - angles.phi_i) ** 2
    values = drive.model.measure_prefactor * grid.integrate_values(
        np.sin(halves) ** 2 * envelope[None, :]
    )
    return CyclesCurve(ns, np.atleast_1d(values))


def floquet_sweep(
    model: ModelKind,
    base: Params,
    axis: str,
    start: float,
    stop: float,
    step: float,
    delta: float,
    period: float,
    n_cycles: int,
    grid: MomentumGrid | None = None,
    steps_per_period: int = DEFAULT_STEPS_PER_PERIOD,
    threads: int = 1,
) -> SweepResult:
    """Stroboscopic complexity along one base-parameter axis."""
    from .spread import sweep_axis  # shared axis construction

    grid = grid or default_grid()
    values = sweep_axis(start, stop, step)

    def one(v: float) -> float:
        params = dataclasses.replace(base, **{axis: v})
        return floquet_complexity(
            DriveSpec(model, params, delta, period, n_cycles), grid, steps_per_period
        )

    return SweepResult.from_values(values, map_ordered(one, values, threads))


def general_j_return_amplitude(
    j: float,
    gamma_0: float,
    gamma_t: float,
    phi_i: float,
    epsilon: float,
) -> complex:
    """Return amplitude of a driven spin-j coherent state, as a finite sum.

    Evaluates the 2j+1 term expansion with z0 = -i tan(gamma_0/2),
    z_t = i tan(gamma_t/2), z_i = -i cot(phi_i/2) and
    alpha = z0 + z_i sec^2(gamma_0/2) / (1 + z_i z0). At j = 1/2 this reduces
    exactly to the two-level stroboscopic amplitude.
    """
    two_j = 2.0 * j
    if two_j < 1 or abs(two_j - round(two_j)) > 1e-12 or two_j > 7:
        raise ValueError(f"j must be a half-integer with 2j in 1..7, got {j}")
    if abs(np.sin(phi_i / 2.0)) < 1e-12:
        raise ValueError(f"phi_i={phi_i} is a pole of cot(phi_i/2)")
    two_j = int(round(two_j))

    z0 = -1.0j * np.tan(gamma_0 / 2.0)
    zt = 1.0j * np.tan(gamma_t / 2.0)
    zi = -1.0j / np.tan(phi_i / 2.0)
    phase = np.exp(-1.0j * epsilon)

    # alpha = n_alpha / (1 + zi z0) has a removable pole at gamma_0 = phi_i;
    # the sum is evaluated with denominators cleared so that coincidence is
    # harmless: Z^n (prefactor) = zt_scaled^n * e1^(2j - n) with Z = zt_scaled/e1.
    d = 1.0 + zi * z0
    n_alpha = z0 * d + zi / np.cos(gamma_0 / 2.0) ** 2
    e1 = d + zt * n_alpha * phase
    zt_scaled = zt * e1 + n_alpha / np.cos(gamma_t / 2.0) ** 2 * phase

    prefactor = (
        np.cos(gamma_0 / 2.0) ** two_j
        * np.sin(phi_i / 2.0) ** (2 * two_j)
        * np.cos(gamma_t / 2.0) ** two_j
        * np.exp(1.0j * j * epsilon)  # +j eps: makes the j=1/2 reduction exact
    )
    total = sum(
        (-zi) ** n * comb(two_j, n) * zt_scaled**n * e1 ** (two_j - n)
        for n in range(two_j + 1)
    )
    return complex(prefactor * total)


def brute_force_mode_complexity(
    model: ModelKind,
    base: Params,
    delta: float,
    period: float,
    k: float,
    n_cycles: int = 1,
    steps_per_period: int = 10_000,
) -> float:
    """Validator: time-ordered integration of the driven mode Schroedinger equation.

    The propagator is a product of exact exponentials of the instantaneous
    mode Hamiltonian evaluated at step midpoints. Independent of the
    invariant-operator route; agreement is adiabatic-limited.
    """
    omega = 2.0 * np.pi / period
    n_steps = steps_per_period * n_cycles
    dt = period * n_cycles / n_steps
    mid = (np.arange(n_steps) + 0.5) * dt

    r2 = np.empty(n_steps)
    r3 = np.empty(n_steps)
    for i, t in enumerate(mid):
        b = model.components(model.driven_params(base, delta, omega, t), k)
        r2[i], r3[i] = b.r2, b.r3
    steps = mode_unitary(ModeHamiltonian(bloch_from_components(r2, r3)), dt)

    u = np.eye(2, dtype=complex)
    for i in range(n_steps):
        u = steps[i] @ u
    psi0 = ground_state(model.components(base, k).phi)
    s = overlap(apply_unitary(u, psi0), psi0)
    return float(1.0 - abs(s) ** 2)
