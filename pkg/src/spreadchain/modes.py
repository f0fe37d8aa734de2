"""Per-momentum-mode two-level algebra.

Every chain treated here decouples into independent momentum modes living in
the two-dimensional subspace spanned by (|1,1>, |0,0>) — the doubly occupied
and empty fermion pair states. A mode is fully described by the Bloch
components (r2, r3): magnitude r sets the excitation gap, the angle
phi = atan2(|r2|, r3) sets the ground-state rotation. This module holds that
parametrization, exact 2x2 unitaries, ground states, and overlaps. Both the
analytic formulas and the brute-force oracles are built from these pieces.

All functions accept scalars or numpy arrays for the numeric fields and are
pure; values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ArrayLike = float | np.ndarray

# Ordered basis (|1,1>, |0,0>)
SIGMA_2 = np.array([[0.0, -1.0j], [1.0j, 0.0]])
SIGMA_3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


@dataclass(frozen=True)
class BlochComponents:
    """Mode vector (r2, r3) with derived magnitude r and angle phi.

    phi = atan2(|r2|, r3) lies in [0, pi]: sin(phi) >= 0 always, cos(phi)
    carries the sign of r3. A gapless mode (r = 0) gets phi = 0 by
    convention so downstream integrands stay finite.
    """

    r2: ArrayLike
    r3: ArrayLike
    r: ArrayLike
    phi: ArrayLike


def bloch_from_components(r2: ArrayLike, r3: ArrayLike) -> BlochComponents:
    """Build BlochComponents from the raw (r2, r3) pair."""
    r2 = np.asarray(r2, dtype=float)
    r3 = np.asarray(r3, dtype=float)
    r = np.hypot(r2, r3)
    phi = np.arctan2(np.abs(r2), r3)  # atan2(0, 0) = 0: degenerate convention
    if r2.ndim == 0:
        return BlochComponents(float(r2), float(r3), float(r), float(phi))
    return BlochComponents(r2, r3, r, phi)


@dataclass(frozen=True)
class ModeState:
    """Normalized two-component state: amp_up |1,1> + amp_down |0,0>."""

    amp_up: complex | np.ndarray
    amp_down: complex | np.ndarray

    def as_vector(self) -> np.ndarray:
        """Stack into shape (..., 2)."""
        return np.stack(np.broadcast_arrays(
            np.asarray(self.amp_up, dtype=complex),
            np.asarray(self.amp_down, dtype=complex),
        ), axis=-1)


@dataclass(frozen=True)
class ModeHamiltonian:
    """2x2 Hermitian mode Hamiltonian.

    Traceless part is -r (cos(phi) sigma_3 + sin(phi) sigma_2) in the ordered
    basis (|1,1>, |0,0>); eigenvalues are identity_shift -/+ r and the ground
    eigenvector is ground_state(phi). The identity shift only contributes a
    global phase to the evolution.
    """

    bloch: BlochComponents
    identity_shift: float = 0.0

    def matrix(self) -> np.ndarray:
        """Dense matrix, shape (..., 2, 2)."""
        b = self.bloch
        n = _axis_matrix(b.phi)
        r = np.asarray(b.r, dtype=float)[..., None, None]
        shift = np.asarray(self.identity_shift, dtype=float)[..., None, None]
        return shift * np.eye(2) - r * n


def _axis_matrix(phi: ArrayLike) -> np.ndarray:
    """cos(phi) sigma_3 + sin(phi) sigma_2, shape (..., 2, 2)."""
    phi = np.asarray(phi, dtype=float)
    c = np.cos(phi)[..., None, None]
    s = np.sin(phi)[..., None, None]
    return c * SIGMA_3 + s * SIGMA_2


def ground_state(phi: ArrayLike) -> ModeState:
    """Gap -r eigenvector of the mode Hamiltonian with Bloch angle phi.

    Returns (-i cos(phi/2)) |1,1> + sin(phi/2) |0,0>.
    """
    phi = np.asarray(phi, dtype=float)
    up = -1.0j * np.cos(phi / 2.0)
    down = np.sin(phi / 2.0).astype(complex)
    if phi.ndim == 0:
        return ModeState(complex(up), complex(down))
    return ModeState(up, down)


def mode_unitary(h: ModeHamiltonian, t: ArrayLike) -> np.ndarray:
    """exp(-i H t) for a mode Hamiltonian, exactly.

    With H = shift*I - r n.sigma (n the unit axis at angle phi),
    exp(-iHt) = exp(-i shift t) [cos(rt) I + i sin(rt) n.sigma].
    Broadcasts over bloch arrays and t; result has shape (..., 2, 2).
    """
    b = h.bloch
    r = np.asarray(b.r, dtype=float)
    t = np.asarray(t, dtype=float)
    angle = (r * t)[..., None, None]
    u = np.cos(angle) * np.eye(2) + 1.0j * np.sin(angle) * _axis_matrix(b.phi)
    shift_phase = np.exp(-1.0j * np.asarray(h.identity_shift, dtype=float) * t)
    return shift_phase[..., None, None] * u


def apply_unitary(u: np.ndarray, state: ModeState) -> ModeState:
    """Matrix-vector product on the two-component state, batched."""
    vec = state.as_vector()
    out = np.einsum("...ij,...j->...i", u, vec)
    if out.ndim == 1:
        return ModeState(complex(out[0]), complex(out[1]))
    return ModeState(out[..., 0], out[..., 1])


def overlap(a: ModeState, b: ModeState) -> complex | np.ndarray:
    """Inner product <a|b> = conj(a) . b."""
    val = (np.conj(a.amp_up) * np.asarray(b.amp_up)
           + np.conj(a.amp_down) * np.asarray(b.amp_down))
    if np.ndim(val) == 0:
        return complex(val)
    return val


def quench_return_amplitude(
    phi_i: ArrayLike, final: BlochComponents, t: ArrayLike
) -> np.ndarray | complex:
    """<psi(t)|psi_i> for the initial ground state evolved by the final mode.

    Closed form cos(R_f t) - i cos(phi_f - phi_i) sin(R_f t); equals
    overlap(evolved, initial) built from mode_unitary up to the global phase
    of any identity shift.
    """
    phi_i = np.asarray(phi_i, dtype=float)
    rf = np.asarray(final.r, dtype=float)
    phase = rf * np.asarray(t, dtype=float)
    val = np.cos(phase) - 1.0j * np.cos(final.phi - phi_i) * np.sin(phase)
    if np.ndim(val) == 0:
        return complex(val)
    return val
