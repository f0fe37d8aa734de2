"""Quadrature, special functions, finite differences, and peak detection.

Shared numerical layer: composite Simpson rule on a fixed momentum grid,
Simpson integration of periodic signals, complete elliptic integrals via
the arithmetic-geometric mean, centered derivatives, and a small
prominence-based peak finder for parameter sweeps.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

DEFAULT_K_INTERVALS = 1000


class NonFiniteIntegrandError(ValueError):
    """Integrand evaluated to NaN/inf at a quadrature node."""


class EllipticDomainError(ValueError):
    """Elliptic-integral parameter outside the supported domain."""


def _simpson_weights(n_intervals: int, step: float) -> np.ndarray:
    w = np.ones(n_intervals + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (step / 3.0)


@dataclass(frozen=True)
class MomentumGrid:
    """Uniform Simpson grid for integrals over k in [0, pi].

    ``weights`` are the composite Simpson-1/3 weights scaled by the step,
    so ``weights @ f(nodes)`` approximates the integral; they sum to pi.
    """

    n_intervals: int
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    def __init__(self, n_intervals: int = DEFAULT_K_INTERVALS):
        if n_intervals < 2 or n_intervals % 2 != 0:
            raise ValueError(f"n_intervals must be a positive even integer, got {n_intervals}")
        step = np.pi / n_intervals
        object.__setattr__(self, "n_intervals", n_intervals)
        object.__setattr__(self, "nodes", np.linspace(0.0, np.pi, n_intervals + 1))
        object.__setattr__(self, "weights", _simpson_weights(n_intervals, step))

    def integrate_values(self, values: np.ndarray) -> float | np.ndarray:
        """Weighted Simpson sum of node values (last axis = nodes).

        The reduction is a single ordered dot product, so repeated runs are
        bit-identical.
        """
        values = np.asarray(values, dtype=float)
        if not np.all(np.isfinite(values)):
            bad = np.argwhere(~np.isfinite(np.atleast_2d(values)))[0][-1]
            raise NonFiniteIntegrandError(
                f"integrand is not finite at node k={self.nodes[bad]:.12g} (index {bad})"
            )
        return values @ self.weights


_DEFAULT_GRID: dict[int, MomentumGrid] = {}


def default_grid(n_intervals: int = DEFAULT_K_INTERVALS) -> MomentumGrid:
    """Shared (cached) momentum grid; grids are immutable so reuse is safe."""
    if n_intervals not in _DEFAULT_GRID:
        _DEFAULT_GRID[n_intervals] = MomentumGrid(n_intervals)
    return _DEFAULT_GRID[n_intervals]


def simpson_integrate(f: Callable[[np.ndarray], np.ndarray], grid: MomentumGrid) -> float:
    """Composite Simpson estimate of the integral of f over [0, pi]."""
    return float(grid.integrate_values(np.asarray(f(grid.nodes), dtype=float)))


def integrate_time_periodic(
    f: Callable[[np.ndarray], np.ndarray],
    period: float,
    n_periods: int,
    steps_per_period: int,
) -> float:
    """Integrate a period-T function over n periods as n times one period.

    The caller guarantees genuine periodicity; the single-period integral is
    a composite Simpson sum with ``steps_per_period`` (even) intervals.
    """
    if steps_per_period < 2 or steps_per_period % 2 != 0:
        raise ValueError(f"steps_per_period must be even and >= 2, got {steps_per_period}")
    if n_periods < 0:
        raise ValueError(f"n_periods must be >= 0, got {n_periods}")
    if n_periods == 0:
        return 0.0
    t = np.linspace(0.0, period, steps_per_period + 1)
    vals = np.asarray(f(t), dtype=float)
    if not np.all(np.isfinite(vals)):
        bad = int(np.argwhere(~np.isfinite(vals))[0][0])
        raise NonFiniteIntegrandError(f"integrand is not finite at t={t[bad]:.12g}")
    w = _simpson_weights(steps_per_period, period / steps_per_period)
    return float(n_periods * (vals @ w))


def elliptic_K(m: float) -> float:
    """Complete elliptic integral of the first kind, parameter m = modulus^2.

    AGM iteration: K(m) = pi / (2 * agm(1, sqrt(1-m))), converging
    quadratically to ~1e-16 relative accuracy. Diverges as m -> 1.
    """
    if not 0.0 <= m < 1.0 - 1e-12:
        raise EllipticDomainError(f"elliptic_K requires 0 <= m < 1 - 1e-12, got m={m}")
    a, b = 1.0, float(np.sqrt(1.0 - m))
    for _ in range(64):
        if abs(a - b) <= 1e-17 * a:
            break
        a, b = 0.5 * (a + b), float(np.sqrt(a * b))
    return float(np.pi / (2.0 * a))


def elliptic_E(m: float) -> float:
    """Complete elliptic integral of the second kind, parameter m = modulus^2.

    Uses the AGM sequence with the correction sum over c_n = (a_n - b_n)/2:
    E = K * (1 - sum_n 2^(n-1) c_n^2), c_0 = sqrt(m).
    """
    if not 0.0 <= m <= 1.0:
        raise EllipticDomainError(f"elliptic_E requires 0 <= m <= 1, got m={m}")
    if m == 1.0:
        return 1.0
    a, b = 1.0, float(np.sqrt(1.0 - m))
    c_sum = 0.5 * m  # 2^(-1) * c_0^2
    power = 0.5
    for _ in range(64):
        c = 0.5 * (a - b)  # c_{n+1} from the current (a_n, b_n)
        a, b = 0.5 * (a + b), float(np.sqrt(a * b))
        power *= 2.0
        c_sum += power * c * c
        if c < 1e-17:
            break
    K = np.pi / (2.0 * a)
    return float(K * (1.0 - c_sum))


def centered_derivative(values: Sequence[float] | np.ndarray, step: float) -> np.ndarray:
    """Centered finite differences on a uniform axis; one-sided at the ends."""
    values = np.asarray(values, dtype=float)
    if values.size < 3:
        raise ValueError("centered_derivative needs at least 3 samples")
    d = np.empty_like(values)
    d[1:-1] = (values[2:] - values[:-2]) / (2.0 * step)
    d[0] = (values[1] - values[0]) / step
    d[-1] = (values[-1] - values[-2]) / step
    return d


@dataclass(frozen=True)
class SweepResult:
    """Observable and its finite-difference derivative along a parameter axis."""

    axis: np.ndarray
    value: np.ndarray
    derivative: np.ndarray

    def __post_init__(self):
        if not (len(self.axis) == len(self.value) == len(self.derivative)):
            raise ValueError("axis, value, derivative must have equal lengths")

    @property
    def step(self) -> float:
        return float(self.axis[1] - self.axis[0])

    @classmethod
    def from_values(cls, axis: np.ndarray, values: np.ndarray) -> "SweepResult":
        axis = np.asarray(axis, dtype=float)
        values = np.asarray(values, dtype=float)
        return cls(axis, values, centered_derivative(values, float(axis[1] - axis[0])))


def peak_positions(
    axis: np.ndarray, signal: np.ndarray, min_prominence: float
) -> list[float]:
    """Axis positions of local maxima whose prominence clears the threshold.

    Prominence of a peak is its height above the higher of the two valley
    minima separating it from greater (or boundary) values on each side.
    Returns an empty list when nothing qualifies.
    """
    axis = np.asarray(axis, dtype=float)
    y = np.asarray(signal, dtype=float)
    out: list[tuple[float, float]] = []
    for i in range(1, len(y) - 1):
        if not (y[i] > y[i - 1] and y[i] >= y[i + 1]):
            continue
        left_min = y[i]
        j = i - 1
        while j >= 0 and y[j] < y[i]:
            left_min = min(left_min, y[j])
            j -= 1
        right_min = y[i]
        j = i + 1
        while j < len(y) and y[j] < y[i]:
            right_min = min(right_min, y[j])
            j += 1
        prominence = y[i] - max(left_min, right_min)
        if prominence >= min_prominence:
            out.append((float(axis[i]), prominence))
    return [pos for pos, _ in out]


def map_ordered(fn: Callable, values: Sequence | np.ndarray, threads: int = 1) -> np.ndarray:
    """Map fn over values, optionally on a thread pool, preserving order.

    Results are collected in input order, so reductions built on top remain
    deterministic regardless of thread count.
    """
    if threads <= 1:
        return np.array([fn(v) for v in values])
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return np.array(list(ex.map(fn, values)))


def find_peaks(
    sweep: SweepResult, min_prominence: float, on: str = "derivative"
) -> list[float]:
    """Peak positions in a sweep.

    ``on="derivative"`` scans |derivative| (criticality shows up as a spike in
    the slope of the observable); ``on="value"`` scans the observable itself.
    """
    if on == "derivative":
        signal = np.abs(sweep.derivative)
    elif on == "value":
        signal = sweep.value
    else:
        raise ValueError(f"on must be 'derivative' or 'value', got {on!r}")
    return peak_positions(sweep.axis, signal, min_prominence)
