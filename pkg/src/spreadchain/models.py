"""The three chain models as maps (parameters, k) -> Bloch components.

Momentum runs over [0, pi] with periodic boundary conditions in the
continuum limit. Each model carries its integration-measure prefactor, its
ground-state mode-complexity integrand, its critical lines, and the
time-dependent parameter map used for periodic driving.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .modes import ArrayLike, BlochComponents, bloch_from_components

HOPPING_TOL = 1e-12


@dataclass(frozen=True)
class ThreeSpinParams:
    """Transverse field h and three-spin coupling j3 (nearest-neighbour J_x = 1)."""

    h: float
    j3: float


@dataclass(frozen=True)
class XYParams:
    """Transverse field h and anisotropy gamma_aniso of the XY chain."""

    h: float
    gamma_aniso: float


@dataclass(frozen=True)
class SSHParams:
    """Intra-cell (t1) and inter-cell (t2) hopping amplitudes, both >= 0."""

    t1: float
    t2: float

    def __post_init__(self):
        if self.t1 < -HOPPING_TOL or self.t2 < -HOPPING_TOL:
            raise ValueError(f"SSH hoppings must be non-negative, got t1={self.t1}, t2={self.t2}")


Params = ThreeSpinParams | XYParams | SSHParams


@dataclass(frozen=True)
class CriticalLine:
    """Membership test for one critical manifold in parameter space.

    ``residual`` vanishes on the line; ``applies`` guards lines that exist
    only in part of parameter space.
    """

    label: str
    residual: Callable[[Params], float]
    applies: Callable[[Params], bool] = lambda p: True

    def contains(self, params: Params, tol: float = 1e-9) -> bool:
        return self.applies(params) and abs(self.residual(params)) <= tol


def _three_spin_components(p: ThreeSpinParams, k: ArrayLike) -> BlochComponents:
    k = np.asarray(k, dtype=float)
    r2 = p.j3 * np.sin(2.0 * k) - np.sin(k)
    r3 = p.h + np.cos(k) - p.j3 * np.cos(2.0 * k)
    return bloch_from_components(r2, r3)


def _xy_components(p: XYParams, k: ArrayLike) -> BlochComponents:
    k = np.asarray(k, dtype=float)
    r2 = p.gamma_aniso * np.sin(k)
    r3 = p.h + np.cos(k)
    return bloch_from_components(r2, r3)


def _ssh_components(p: SSHParams, k: ArrayLike) -> BlochComponents:
    # r3 = t2 sin k (not t2 cos k): the unique choice consistent with
    # r = sqrt(t1^2 + t2^2 - 2 t1 t2 cos k) and sin(phi) = |t1 - t2 cos k| / r.
    k = np.asarray(k, dtype=float)
    r2 = p.t1 - p.t2 * np.cos(k)
    r3 = p.t2 * np.sin(k)
    return bloch_from_components(r2, r3)


def _three_spin_driven(p: ThreeSpinParams, delta: float, omega: float, t: float) -> ThreeSpinParams:
    return replace(p, h=p.h + delta * np.cos(omega * t))


def _xy_driven(p: XYParams, delta: float, omega: float, t: float) -> XYParams:
    return replace(p, h=p.h + delta * np.cos(omega * t))


def _ssh_driven(p: SSHParams, delta: float, omega: float, t: float) -> SSHParams:
    v = delta * np.cos(omega * t)
    t1, t2 = p.t1 - v, p.t2 + v
    if t1 < -HOPPING_TOL or t2 < -HOPPING_TOL:
        raise ValueError(
            f"drive amplitude {delta} makes a hopping negative at t={t}: t1={t1}, t2={t2}"
        )
    return SSHParams(t1=max(t1, 0.0), t2=max(t2, 0.0))


@dataclass(frozen=True)
class ModelKind:
    """One chain model: components map, measure, criticality, drive."""

    name: str
    params_cls: type
    measure_prefactor: float  # 1/(2 pi) or 1/pi in front of the k-integral
    ground_integrand: Callable[[np.ndarray], np.ndarray]
    _components: Callable[[Params, ArrayLike], BlochComponents]
    _driven: Callable[[Params, float, float, float], Params]
    _critical: tuple[CriticalLine, ...]

    def components(self, params: Params, k: ArrayLike) -> BlochComponents:
        """Bloch components at momentum k (scalar or array)."""
        self._check_params(params)
        return self._components(params, k)

    def gap(self, params: Params, k: ArrayLike) -> ArrayLike:
        """Excitation gap r(k)."""
        return self.components(params, k).r

    def critical_lines(self) -> tuple[CriticalLine, ...]:
        return self._critical

    def is_critical(self, params: Params, tol: float = 1e-9) -> bool:
        return any(line.contains(params, tol) for line in self._critical)

    def driven_params(self, params: Params, delta: float, omega: float, t: float) -> Params:
        """Parameters at time t under the sinusoidal drive of amplitude delta."""
        if omega <= 0:
            raise ValueError(f"omega must be positive, got {omega}")
        self._check_params(params)
        return self._driven(params, delta, omega, t)

    def _check_params(self, params: Params) -> None:
        if not isinstance(params, self.params_cls):
            raise TypeError(
                f"model {self.name!r} expects {self.params_cls.__name__}, got {type(params).__name__}"
            )


def _cos_half_sq(phi: np.ndarray) -> np.ndarray:
    return np.cos(phi / 2.0) ** 2


def _sin_half_sq(phi: np.ndarray) -> np.ndarray:
    return np.sin(phi / 2.0) ** 2


THREE_SPIN = ModelKind(
    name="three-spin",
    params_cls=ThreeSpinParams,
    measure_prefactor=1.0 / (2.0 * np.pi),
    ground_integrand=_cos_half_sq,
    _components=_three_spin_components,
    _driven=_three_spin_driven,
    _critical=(
        CriticalLine("h = j3 + 1", lambda p: p.h - (p.j3 + 1.0)),
        CriticalLine("h = j3 - 1", lambda p: p.h - (p.j3 - 1.0)),
        # The anisotropic line closes the gap at an interior momentum and
        # only exists for j3 > 1/2.
        CriticalLine("h = -j3", lambda p: p.h + p.j3, applies=lambda p: p.j3 > 0.5),
    ),
)

XY_CHAIN = ModelKind(
    name="xy",
    params_cls=XYParams,
    measure_prefactor=1.0 / (2.0 * np.pi),
    ground_integrand=_cos_half_sq,
    _components=_xy_components,
    _driven=_xy_driven,
    _critical=(
        CriticalLine("h = 1", lambda p: p.h - 1.0),
        CriticalLine("h = -1", lambda p: p.h + 1.0),
        CriticalLine("gamma = 0", lambda p: p.gamma_aniso, applies=lambda p: abs(p.h) < 1.0),
    ),
)

SSH = ModelKind(
    name="ssh",
    params_cls=SSHParams,
    measure_prefactor=1.0 / np.pi,
    ground_integrand=_sin_half_sq,
    _components=_ssh_components,
    _driven=_ssh_driven,
    _critical=(CriticalLine("t1 = t2", lambda p: p.t1 - p.t2),),
)

MODELS: dict[str, ModelKind] = {m.name: m for m in (THREE_SPIN, XY_CHAIN, SSH)}


def model_by_name(name: str) -> ModelKind:
    try:
        return MODELS[name]
    except KeyError:
        raise ValueError(f"unknown model {name!r}; choose from {sorted(MODELS)}") from None


def make_params(model: ModelKind, fields: dict[str, float]) -> Params:
    """Build the model's parameter dataclass from a plain dict (CLI layer)."""
    import dataclasses

    names = {f.name for f in dataclasses.fields(model.params_cls)}
    unknown = set(fields) - names
    if unknown:
        raise ValueError(
            f"unknown parameter(s) {sorted(unknown)} for model {model.name!r}; expected {sorted(names)}"
        )
    missing = names - set(fields)
    if missing:
        raise ValueError(f"missing parameter(s) {sorted(missing)} for model {model.name!r}")
    return model.params_cls(**{k: float(v) for k, v in fields.items()})
