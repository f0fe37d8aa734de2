"""Named scenario presets for the standard figure-class computations.

Each preset bundles one or more labelled scenarios (e.g. the red/blue
parameter pairs of a quench comparison) so a whole figure's data is one CLI
command. Presets only package parameter values; all physics lives in the
library modules.
"""

from __future__ import annotations

from dataclasses import dataclass

from .models import SSH, THREE_SPIN, XY_CHAIN, SSHParams, ThreeSpinParams, XYParams
from .scenarios import (
    FloquetSweepScenario,
    FloquetVsNScenario,
    GroundSweepScenario,
    MultiQuenchScenario,
    QuenchScenario,
    Scenario,
    WorkSweepScenario,
)


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    scenarios: tuple[tuple[str, Scenario], ...]


def _three_step(initial, final, samples=500):
    """The standard three-quench protocol: final 10, initial 10, final 30."""
    return (((final, 10.0), (initial, 10.0), (final, 30.0)), samples)


def _build() -> dict[str, Preset]:
    presets: list[Preset] = []

    def add(name, description, *scenarios):
        presets.append(Preset(name, description, tuple(scenarios)))

    # --- ground-state derivative sweeps ---
    add(
        "fig-derivative-3spin",
        "three-spin chain: dC/dh of the ground state at j3=1 (three critical peaks)",
        ("j3_1.0", GroundSweepScenario(THREE_SPIN, ThreeSpinParams(h=0.0, j3=1.0), "h", -2.0, 2.5, 0.01)),
    )
    add(
        "fig-derivative-3spin-twopeaks",
        "three-spin chain: dC/dh at j3=0.4 (two peaks; no anisotropic transition)",
        ("j3_0.4", GroundSweepScenario(THREE_SPIN, ThreeSpinParams(h=0.0, j3=0.4), "h", -2.0, 2.0, 0.01)),
    )
    add(
        "fig-derivative-xy",
        "XY chain: dC/dh of the ground state at gamma_aniso=0.5 (peaks at h=+-1)",
        ("gamma_0.5", GroundSweepScenario(XY_CHAIN, XYParams(h=0.0, gamma_aniso=0.5), "h", -2.0, 2.0, 0.01)),
    )
    add(
        "fig-derivative-ssh",
        "SSH chain: dC/dt1 of the ground state at t2=1 (non-analytic at t1=t2)",
        ("t2_1.0", GroundSweepScenario(SSH, SSHParams(t1=0.0, t2=1.0), "t1", 0.0, 2.0, 0.01)),
    )

    # --- single quenches ---
    add(
        "fig-quench-3spin",
        "three-spin single quench near h=j3+1: red starts critical, blue ends critical",
        ("red", QuenchScenario(THREE_SPIN, ThreeSpinParams(1.4, 0.4), ThreeSpinParams(1.5, 1.0), 50.0, 500)),
        ("blue", QuenchScenario(THREE_SPIN, ThreeSpinParams(1.5, 1.0), ThreeSpinParams(1.4, 0.4), 50.0, 500)),
    )
    add(
        "fig-quench-xy",
        "XY single quench near h=-1: red ends critical, blue starts critical",
        ("red", QuenchScenario(XY_CHAIN, XYParams(1.2, 0.4), XYParams(-1.0, 0.2), 50.0, 500)),
        ("blue", QuenchScenario(XY_CHAIN, XYParams(-1.0, 0.2), XYParams(1.2, 0.4), 50.0, 500)),
    )

    # --- multiple quenches (three-step protocol, switches at t=10 and 20, end 50) ---
    segs, n = _three_step(ThreeSpinParams(1.0, 1.2), ThreeSpinParams(0.6, 1.6))
    red = MultiQuenchScenario(THREE_SPIN, ThreeSpinParams(1.0, 1.2), segs, n)
    segs, n = _three_step(ThreeSpinParams(0.6, 1.6), ThreeSpinParams(1.0, 1.2))
    blue = MultiQuenchScenario(THREE_SPIN, ThreeSpinParams(0.6, 1.6), segs, n)
    add("fig-multiquench-3spin",
        "three-spin triple quench around h=j3-1 (red ends critical, blue starts critical)",
        ("red", red), ("blue", blue))

    segs, n = _three_step(XYParams(1.2, 0.4), XYParams(-1.0, 0.05))
    red = MultiQuenchScenario(XY_CHAIN, XYParams(1.2, 0.4), segs, n)
    segs, n = _three_step(XYParams(-1.0, 0.05), XYParams(1.2, 0.4))
    blue = MultiQuenchScenario(XY_CHAIN, XYParams(-1.0, 0.05), segs, n)
    add("fig-multiquench-xy",
        "XY triple quench around h=-1 (red ends critical, blue starts critical)",
        ("red", red), ("blue", blue))

    segs, n = _three_step(SSHParams(1.0, 1.0), SSHParams(0.7, 1.5))
    red = MultiQuenchScenario(SSH, SSHParams(1.0, 1.0), segs, n)
    segs, n = _three_step(SSHParams(1.5, 0.7), SSHParams(1.0, 1.0))
    blue = MultiQuenchScenario(SSH, SSHParams(1.5, 0.7), segs, n)
    add("fig-multiquench-ssh",
        "SSH triple quench across t1=t2 (red starts critical, blue ends critical)",
        ("red", red), ("blue", blue))

    # --- periodically driven: complexity vs cycle count ---
    add(
        "fig-floquet-3spin-cycles",
        "three-spin driven field, complexity at stroboscopic times n=0..40 (T=1000, delta=0.1)",
        ("red", FloquetVsNScenario(THREE_SPIN, ThreeSpinParams(0.0, 0.2), 0.1, 1000.0, 40, 256)),
        ("blue", FloquetVsNScenario(THREE_SPIN, ThreeSpinParams(1.1, 0.2), 0.1, 1000.0, 40, 256)),
        ("green", FloquetVsNScenario(THREE_SPIN, ThreeSpinParams(-1.1, 1.0), 0.1, 1000.0, 40, 256)),
    )
    add(
        "fig-floquet-xy-cycles",
        "XY driven field, complexity vs cycle count (T=1000, delta=0.1)",
        ("red", FloquetVsNScenario(XY_CHAIN, XYParams(1.0, 0.2), 0.1, 1000.0, 40, 256)),
        ("blue", FloquetVsNScenario(XY_CHAIN, XYParams(-1.0, 0.4), 0.1, 1000.0, 40, 256)),
        ("green", FloquetVsNScenario(XY_CHAIN, XYParams(1.5, 0.2), 0.1, 1000.0, 40, 256)),
    )
    add(
        "fig-floquet-ssh-cycles",
        "SSH driven hoppings, complexity vs cycle count (T=1000, delta=0.1)",
        ("blue", FloquetVsNScenario(SSH, SSHParams(0.5, 0.5), 0.1, 1000.0, 40, 256)),
        ("green", FloquetVsNScenario(SSH, SSHParams(1.0, 0.2), 0.1, 1000.0, 40, 256)),
        ("red", FloquetVsNScenario(SSH, SSHParams(0.2, 1.0), 0.1, 1000.0, 40, 256)),
    )

    # --- periodically driven: sweeps at n=40, T=1000, delta=0.1 ---
    add(
        "fig-floquet-3spin-sweep",
        "three-spin driven field, complexity vs h_c at n=40: peaks at h_c=j3+-1",
        ("j3_0.2", FloquetSweepScenario(THREE_SPIN, ThreeSpinParams(0.0, 0.2), "h",
                                        -2.0, 2.0, 0.01, 0.1, 1000.0, 40, 256)),
    )
    add(
        "fig-floquet-3spin-sweep-threepeaks",
        "three-spin driven field, complexity vs h_c at j3=1: three peaks incl. h_c=-j3",
        ("j3_1.0", FloquetSweepScenario(THREE_SPIN, ThreeSpinParams(0.0, 1.0), "h",
                                        -2.0, 2.5, 0.01, 0.1, 1000.0, 40, 256)),
    )
    add(
        "fig-floquet-xy-sweep",
        "XY driven field, complexity vs h_c at n=40: structure at h_c=+-1",
        ("gamma_0.4", FloquetSweepScenario(XY_CHAIN, XYParams(0.0, 0.4), "h",
                                           -2.0, 2.0, 0.01, 0.1, 1000.0, 40, 256)),
    )
    add(
        "fig-floquet-ssh-sweep",
        "SSH driven hoppings, complexity vs t1 at t2=1, n=40: structure near t1=t2",
        ("t2_1.0", FloquetSweepScenario(SSH, SSHParams(0.2, 1.0), "t1",
                                        0.2, 2.0, 0.01, 0.1, 1000.0, 40, 256)),
    )

    # --- statistics of work ---
    # The sweep axes sit half a step off the critical values: the integrands
    # carry 1/r_i, which is singular exactly on a critical manifold.
    add(
        "fig-work-sweeps",
        "work mean/variance derivative sweeps over the initial parameter, all three chains",
        ("3spin", WorkSweepScenario(THREE_SPIN, ThreeSpinParams(0.0, 1.0), ThreeSpinParams(1.0, 0.5),
                                    "h", -1.995, 2.995, 0.01)),
        ("xy", WorkSweepScenario(XY_CHAIN, XYParams(0.0, 0.1), XYParams(0.6, 0.5),
                                 "h", -1.995, 1.995, 0.01)),
        ("ssh", WorkSweepScenario(SSH, SSHParams(0.1, 0.5), SSHParams(0.6, 0.8),
                                  "t1", 0.055, 1.995, 0.01)),
    )

    return {p.name: p for p in presets}


PRESETS: dict[str, Preset] = _build()


def preset_by_name(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; run list-presets to see the catalogue") from None


def list_presets() -> list[tuple[str, str]]:
    """(name, description) pairs in stable (insertion) order."""
    return [(p.name, p.description) for p in PRESETS.values()]
