import numpy as np
import pytest

from spreadchain.models import (
    SSH,
    THREE_SPIN,
    XY_CHAIN,
    SSHParams,
    ThreeSpinParams,
    XYParams,
    make_params,
    model_by_name,
)


class TestThreeSpin:
    def test_gap_closes_at_upper_critical_line(self):
        b = THREE_SPIN.components(ThreeSpinParams(h=1.0, j3=0.0), np.pi)
        assert b.r2 == pytest.approx(0.0, abs=1e-15)
        assert b.r3 == pytest.approx(0.0, abs=1e-15)
        assert b.r == pytest.approx(0.0, abs=1e-15)

    def test_direct_substitution(self):
        b = THREE_SPIN.components(ThreeSpinParams(h=0.0, j3=0.0), np.pi / 2)
        assert b.r2 == pytest.approx(-1.0)
        assert b.r3 == pytest.approx(0.0, abs=1e-16)
        assert b.r == pytest.approx(1.0)

    def test_aligned_case(self):
        b = THREE_SPIN.components(ThreeSpinParams(h=2.0, j3=0.0), 0.0)
        assert b.r2 == 0.0
        assert b.r3 == pytest.approx(3.0)
        assert b.phi == 0.0

    def test_gap_matches_dispersion_formula(self, rng):
        for _ in range(50):
            h, j3 = rng.uniform(-2, 2, 2)
            k = rng.uniform(0, np.pi)
            expected_sq = (
                h * h + 1.0 + j3 * j3
                + 2 * h * np.cos(k) - 2 * h * j3 * np.cos(2 * k) - 2 * j3 * np.cos(k)
            )
            r = THREE_SPIN.gap(ThreeSpinParams(h, j3), k)
            assert r**2 == pytest.approx(expected_sq, abs=1e-12)

    def test_interior_gap_minimum_on_anisotropic_line(self, rng):
        # on h = -j3 (j3 > 1/2) the gap vanishes at cos(k0) = (h - j3)/(4 h j3)
        for j3 in rng.uniform(0.55, 2.0, 20):
            h = -j3
            k0 = np.arccos((h - j3) / (4 * h * j3))
            assert THREE_SPIN.gap(ThreeSpinParams(h, j3), k0) < 1e-9

    def test_reduces_to_xy_dispersion_at_j3_zero(self, rng):
        k = rng.uniform(0, np.pi, 64)
        for h in (-1.3, 0.2, 1.7):
            b3 = THREE_SPIN.components(ThreeSpinParams(h, 0.0), k)
            bxy = XY_CHAIN.components(XYParams(h, 1.0), k)
            assert np.allclose(np.abs(b3.r2), np.abs(bxy.r2), atol=1e-14)
            assert np.allclose(b3.r3, bxy.r3, atol=1e-14)
            assert np.allclose(b3.r, bxy.r, atol=1e-14)


class TestXY:
    def test_gap_closes_at_h_one(self):
        assert XY_CHAIN.gap(XYParams(h=1.0, gamma_aniso=0.5), np.pi) == pytest.approx(0.0, abs=1e-15)

    def test_gap_closes_at_h_minus_one(self):
        assert XY_CHAIN.gap(XYParams(h=-1.0, gamma_aniso=0.3), 0.0) == pytest.approx(0.0, abs=1e-15)

    def test_direct_substitution(self):
        b = XY_CHAIN.components(XYParams(h=0.0, gamma_aniso=1.0), np.pi / 2)
        assert (b.r2, b.r3) == (pytest.approx(1.0), pytest.approx(0.0, abs=1e-16))
        assert b.phi == pytest.approx(np.pi / 2)

    def test_isotropic_field_aligned(self):
        k = np.linspace(0.01, np.pi - 0.01, 13)
        assert np.all(XY_CHAIN.components(XYParams(h=2.0, gamma_aniso=0.0), k).phi == 0.0)


class TestSSH:
    def test_gap_closes_at_equal_hoppings(self):
        assert SSH.gap(SSHParams(1.0, 1.0), 0.0) == pytest.approx(0.0, abs=1e-15)

    def test_intracell_only(self):
        k = np.linspace(0.0, np.pi, 7)
        b = SSH.components(SSHParams(1.0, 0.0), k)
        assert np.allclose(b.r, 1.0)
        assert np.allclose(b.phi, np.pi / 2)

    def test_direct_substitution(self):
        b = SSH.components(SSHParams(0.0, 1.0), np.pi / 3)
        assert b.r2 == pytest.approx(-0.5)
        assert b.r3 == pytest.approx(np.sqrt(3) / 2)
        assert b.r == pytest.approx(1.0)
        assert b.phi == pytest.approx(np.pi / 6)

    def test_magnitude_closed_form_and_angle_convention(self, rng):
        for _ in range(50):
            t1, t2 = rng.uniform(0.0, 2.0, 2)
            k = rng.uniform(0, np.pi)
            b = SSH.components(SSHParams(t1, t2), k)
            assert b.r == pytest.approx(np.sqrt(t1**2 + t2**2 - 2 * t1 * t2 * np.cos(k)), abs=1e-12)
            if b.r > 0:
                assert np.sin(b.phi) == pytest.approx(abs(t1 - t2 * np.cos(k)) / b.r, abs=1e-12)

    def test_negative_hoppings_rejected(self):
        with pytest.raises(ValueError, match="non-negative"):
            SSHParams(-0.1, 1.0)


class TestCriticalLines:
    def test_three_spin_upper_line(self):
        assert THREE_SPIN.is_critical(ThreeSpinParams(h=1.4, j3=0.4))

    def test_three_spin_anisotropic_needs_large_j3(self):
        assert THREE_SPIN.is_critical(ThreeSpinParams(h=-0.7, j3=0.7))
        assert not THREE_SPIN.is_critical(ThreeSpinParams(h=-0.4, j3=0.4))

    def test_ssh_equal_hoppings(self):
        assert SSH.is_critical(SSHParams(0.5, 0.5))
        assert not SSH.is_critical(SSHParams(0.5, 0.6))

    def test_xy_gamma_zero_needs_small_field(self):
        assert XY_CHAIN.is_critical(XYParams(h=0.3, gamma_aniso=0.0))
        assert not XY_CHAIN.is_critical(XYParams(h=2.0, gamma_aniso=0.0))

    def test_tolerance_argument(self):
        line = THREE_SPIN.critical_lines()[0]
        assert line.contains(ThreeSpinParams(h=1.4005, j3=0.4), tol=1e-3)
        assert not line.contains(ThreeSpinParams(h=1.4005, j3=0.4), tol=1e-6)

    def test_gap_positive_off_criticality(self, rng):
        k = np.linspace(0.0, np.pi, 1001)
        for model, sampler in [
            (THREE_SPIN, lambda: ThreeSpinParams(*rng.uniform(-2, 2, 2))),
            (XY_CHAIN, lambda: XYParams(*rng.uniform(-2, 2, 2))),
            (SSH, lambda: SSHParams(*rng.uniform(0, 2, 2))),
        ]:
            found = 0
            while found < 10:
                p = sampler()
                if model.is_critical(p, tol=1e-3):
                    continue
                found += 1
                assert np.all(model.gap(p, k) > 0.0)


class TestDrivenParams:
    def test_field_drive_at_time_zero(self):
        p = THREE_SPIN.driven_params(ThreeSpinParams(h=1.1, j3=0.2), 0.1, 2 * np.pi / 1000, 0.0)
        assert p.h == pytest.approx(1.2)
        assert p.j3 == 0.2

    def test_ssh_drive_at_half_period(self):
        period = 50.0
        p = SSH.driven_params(SSHParams(0.5, 0.5), 0.1, 2 * np.pi / period, period / 2)
        assert p.t1 == pytest.approx(0.6)
        assert p.t2 == pytest.approx(0.4)

    def test_zero_amplitude_is_identity(self, rng):
        base = XYParams(h=0.7, gamma_aniso=0.3)
        for t in rng.uniform(0, 100, 10):
            assert XY_CHAIN.driven_params(base, 0.0, 0.1, t) == base

    def test_ssh_rejects_negative_hopping_drive(self):
        with pytest.raises(ValueError, match="negative"):
            SSH.driven_params(SSHParams(0.05, 1.0), 0.1, 0.01, 0.0)

    def test_omega_must_be_positive(self):
        with pytest.raises(ValueError, match="omega"):
            XY_CHAIN.driven_params(XYParams(0.0, 0.1), 0.1, 0.0, 1.0)


def test_model_registry_round_trip():
    assert model_by_name("three-spin") is THREE_SPIN
    assert model_by_name("xy") is XY_CHAIN
    assert model_by_name("ssh") is SSH
    with pytest.raises(ValueError, match="unknown model"):
        model_by_name("heisenberg")


def test_make_params_validates_names():
    assert make_params(SSH, {"t1": 1, "t2": 0.5}) == SSHParams(1.0, 0.5)
    with pytest.raises(ValueError, match="unknown parameter"):
        make_params(SSH, {"t1": 1, "t2": 0.5, "mu": 0.0})
    with pytest.raises(ValueError, match="missing parameter"):
        make_params(XY_CHAIN, {"h": 1.0})


def test_wrong_params_type_rejected():
    with pytest.raises(TypeError, match="expects SSHParams"):
        SSH.components(XYParams(1.0, 0.5), 0.3)
