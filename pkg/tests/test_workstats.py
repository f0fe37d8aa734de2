import numpy as np
import pytest

from spreadchain.models import (
    SSH,
    THREE_SPIN,
    XY_CHAIN,
    SSHParams,
    ThreeSpinParams,
    XYParams,
)
from spreadchain.modes import (
    ModeHamiltonian,
    bloch_from_components,
    ground_state,
    quench_return_amplitude,
)
from spreadchain.numerics import peak_positions
from spreadchain.workstats import (
    DegenerateModeError,
    chain_amplitudes,
    krylov_chain_complexity,
    lanczos_oracle,
    per_mode_lanczos,
    ssh_work_mean_closed_form,
    ssh_work_variance_closed_form,
    tridiagonal_matrix,
    work_mean,
    work_stats,
    work_stats_derivative_sweep,
    work_variance,
)


def random_bloch(rng, r_min=0.1):
    phi = rng.uniform(0.0, np.pi)
    r = rng.uniform(r_min, 3.0)
    return bloch_from_components(r * np.sin(phi), r * np.cos(phi))


class TestPerModeLanczos:
    def test_no_quench_means_no_fluctuations(self, rng):
        b = random_bloch(rng)
        a0, b1 = per_mode_lanczos(b, b)
        assert b1 == pytest.approx(0.0, abs=1e-15)
        assert a0 == pytest.approx(-b.r, rel=1e-14)

    def test_orthogonal_quench_integrands(self):
        # initial (h=0, gamma=1), final (h=1, gamma=0) at k = pi/2:
        # the mean integrand vanishes, the variance integrand is exactly 1
        ci = XY_CHAIN.components(XYParams(0.0, 1.0), np.pi / 2)
        cf = XY_CHAIN.components(XYParams(1.0, 0.0), np.pi / 2)
        mean_term = (cf.r3 * ci.r3 + cf.r2 * ci.r2) / ci.r
        var_term = (cf.r2 * ci.r3 - cf.r3 * ci.r2) ** 2 / ci.r**2
        assert mean_term == pytest.approx(0.0, abs=1e-15)
        assert var_term == pytest.approx(1.0, rel=1e-14)
        a0, b1 = per_mode_lanczos(ci, cf)
        assert a0 == pytest.approx(0.0, abs=1e-15)
        assert b1 == pytest.approx(1.0, rel=1e-14)

    def test_degenerate_initial_mode_rejected(self):
        with pytest.raises(DegenerateModeError):
            per_mode_lanczos(bloch_from_components(0.0, 0.0), random_bloch(np.random.default_rng(0)))

    def test_matches_lanczos_oracle(self, rng):
        for _ in range(100):
            bi, bf = random_bloch(rng), random_bloch(rng)
            a0, b1 = per_mode_lanczos(bi, bf)
            chain = lanczos_oracle(
                ModeHamiltonian(bf).matrix(), ground_state(bi.phi).as_vector()
            )
            assert a0 == pytest.approx(chain.a[0], abs=1e-12)
            if b1 > 1e-10:
                assert b1 == pytest.approx(chain.b[0], abs=1e-12)
            else:
                assert len(chain.b) == 0


class TestWorkIntegrals:
    def test_variance_zero_without_quench(self):
        p = XYParams(0.4, 0.7)
        assert work_variance(XY_CHAIN, p, p) == 0.0

    def test_zero_quench_mean_is_average_initial_gap(self, grid):
        # the global-phase convention leaves <W> = (1/2pi) * integral of r_i
        p = ThreeSpinParams(1.3, 0.2)
        expected = grid.integrate_values(THREE_SPIN.components(p, grid.nodes).r) / (2 * np.pi)
        assert work_mean(THREE_SPIN, p, p) == pytest.approx(expected, rel=1e-14)

    def test_degenerate_initial_parameters_rejected(self):
        # h = j3 + 1 closes the gap exactly at the k = pi node
        with pytest.raises(DegenerateModeError, match="k="):
            work_mean(THREE_SPIN, ThreeSpinParams(1.2, 0.2), ThreeSpinParams(1.0, 0.2))

    def test_work_stats_bundle(self):
        stats = work_stats(SSH, SSHParams(1.5, 0.5), SSHParams(0.6, 0.8))
        assert stats.variance >= 0.0
        assert stats.mean == pytest.approx(work_mean(SSH, SSHParams(1.5, 0.5), SSHParams(0.6, 0.8)))


class TestSSHClosedForms:
    def test_variance_non_topological_example(self):
        var = work_variance(SSH, SSHParams(1.5, 0.5), SSHParams(0.6, 0.8))
        assert var == pytest.approx(0.09, abs=1e-8)
        assert ssh_work_variance_closed_form(SSHParams(1.5, 0.5), SSHParams(0.6, 0.8)) == pytest.approx(0.09)

    def test_variance_topological_example(self):
        var = work_variance(SSH, SSHParams(0.5, 1.5), SSHParams(0.6, 0.8))
        assert var == pytest.approx(0.25 / 9.0, abs=1e-8)

    def test_variance_closed_form_continuous_at_transition(self):
        eps = 1e-10
        final = SSHParams(0.6, 0.8)
        left = ssh_work_variance_closed_form(SSHParams(1.0 - eps, 1.0), final)
        right = ssh_work_variance_closed_form(SSHParams(1.0 + eps, 1.0), final)
        assert abs(left - right) < 1e-9

    def test_mean_agrees_with_quadrature_example(self):
        initial, final = SSHParams(1.5, 0.5), SSHParams(0.6, 0.8)
        assert ssh_work_mean_closed_form(initial, final) == pytest.approx(
            work_mean(SSH, initial, final), abs=1e-8
        )

    def test_mean_agrees_with_quadrature_random(self, rng):
        for _ in range(25):
            t1i, t2i = rng.uniform(0.1, 2.0, 2)
            if abs(t1i - t2i) < 0.05:
                continue
            initial = SSHParams(t1i, t2i)
            final = SSHParams(*rng.uniform(0.1, 2.0, 2))
            assert ssh_work_mean_closed_form(initial, final) == pytest.approx(
                work_mean(SSH, initial, final), abs=1e-8
            )

    def test_mean_small_intercell_limit(self):
        # t2i -> 0 sends the elliptic parameter to 0, where K = E = pi/2 and
        # the mean collapses to t1f / 2
        initial, final = SSHParams(1.0, 1e-6), SSHParams(0.8, 1.3)
        assert ssh_work_mean_closed_form(initial, final) == pytest.approx(0.4, abs=1e-5)

    def test_mean_closed_form_domain(self):
        with pytest.raises(DegenerateModeError):
            ssh_work_mean_closed_form(SSHParams(1.0, 1.0), SSHParams(0.5, 0.6))
        with pytest.raises(DegenerateModeError):
            ssh_work_mean_closed_form(SSHParams(1.0, 0.0), SSHParams(0.5, 0.6))


class TestWorkSweep:
    def test_three_spin_non_analyticities_at_initial_criticality(self):
        sweeps = work_stats_derivative_sweep(
            THREE_SPIN, ThreeSpinParams(0.0, 1.0), ThreeSpinParams(1.0, 0.5),
            "h", -1.995, 2.995, 0.01,
        )
        d = np.abs(sweeps.mean.derivative)
        peaks = peak_positions(sweeps.mean.axis, d, 0.05 * d.max())
        for expected in (2.0, 0.0, -1.0):
            assert any(abs(p - expected) <= sweeps.mean.step for p in peaks)

    def test_variance_never_negative_along_sweep(self):
        sweeps = work_stats_derivative_sweep(
            XY_CHAIN, XYParams(0.0, 0.1), XYParams(0.6, 0.5), "h", -1.995, 1.995, 0.05
        )
        assert np.all(sweeps.variance.value >= 0.0)

    def test_unknown_axis_rejected(self):
        with pytest.raises(ValueError, match="not a parameter"):
            work_stats_derivative_sweep(
                SSH, SSHParams(1.0, 0.5), SSHParams(0.6, 0.8), "h", 0.1, 1.0, 0.1
            )


class TestLanczosOracle:
    def test_eigenvector_start_terminates_immediately(self):
        h = np.diag([1.0, 2.0, 3.0]).astype(complex)
        chain = lanczos_oracle(h, np.array([0.0, 1.0, 0.0], dtype=complex))
        assert chain.a == pytest.approx([2.0])
        assert chain.b.size == 0

    def test_rejects_non_hermitian(self):
        h = np.array([[0.0, 1.0], [0.5, 0.0]], dtype=complex)
        with pytest.raises(ValueError, match="Hermitian"):
            lanczos_oracle(h, np.array([1.0, 0.0], dtype=complex))

    def test_rejects_unnormalized_start(self):
        with pytest.raises(ValueError, match="normalized"):
            lanczos_oracle(np.eye(2, dtype=complex), np.array([1.0, 1.0], dtype=complex))

    def test_random_hermitian_tridiagonalization(self, rng):
        n = 6
        x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        h = (x + x.conj().T) / 2
        v0 = rng.normal(size=n) + 1j * rng.normal(size=n)
        v0 /= np.linalg.norm(v0)
        chain = lanczos_oracle(h, v0)

        # Krylov vectors are orthonormal and satisfy the three-term recurrence
        basis = chain.basis
        gram = basis @ basis.conj().T
        assert np.max(np.abs(gram - np.eye(len(basis)))) < 1e-12
        tri = tridiagonal_matrix(chain)
        action = basis.conj() @ h @ basis.T  # <K_m| H |K_n>
        assert np.max(np.abs(action - tri)) < 1e-10

        # eigenvalues of the tridiagonal restriction lie in the spectrum
        spectrum = np.linalg.eigvalsh(h)
        for ev in np.linalg.eigvalsh(tri):
            assert np.min(np.abs(spectrum - ev)) < 1e-9


class TestChainComplexity:
    def test_zero_time(self, rng):
        chain = lanczos_oracle(
            ModeHamiltonian(random_bloch(rng)).matrix(),
            ground_state(rng.uniform(0, np.pi)).as_vector(),
        )
        assert krylov_chain_complexity(chain, 0.0) == pytest.approx(0.0, abs=1e-15)

    def test_uncoupled_chain_never_spreads(self):
        from spreadchain.workstats import LanczosData

        chain = LanczosData(a=np.array([1.7]), b=np.array([]))
        for t in (0.0, 1.0, 20.0):
            assert krylov_chain_complexity(chain, t) == 0.0

    def test_two_site_chain_matches_mode_complexity(self, rng):
        for _ in range(25):
            bi, bf = random_bloch(rng), random_bloch(rng)
            chain = lanczos_oracle(
                ModeHamiltonian(bf).matrix(), ground_state(bi.phi).as_vector()
            )
            ts = rng.uniform(0.0, 20.0, 5)
            got = krylov_chain_complexity(chain, ts)
            want = 1.0 - np.abs(quench_return_amplitude(bi.phi, bf, ts)) ** 2
            assert np.max(np.abs(got - want)) < 1e-8

    def test_norm_conserved(self, rng):
        bi, bf = random_bloch(rng), random_bloch(rng)
        chain = lanczos_oracle(ModeHamiltonian(bf).matrix(), ground_state(bi.phi).as_vector())
        psi = chain_amplitudes(chain, np.linspace(0.0, 50.0, 200))
        norms = np.sum(np.abs(psi) ** 2, axis=1)
        assert np.max(np.abs(norms - 1.0)) < 1e-10


def test_moment_identities_from_characteristic_function(rng):
    # the work generating function G(t) = conj(S(t)) has
    # i G'(0) = a0 and i^2 G''(0) = a0^2 + b1^2; check with 4th-order stencils
    for _ in range(20):
        bi, bf = random_bloch(rng), random_bloch(rng)
        a0, b1 = per_mode_lanczos(bi, bf)
        h = 1e-2

        def g(t):
            return np.conj(quench_return_amplitude(bi.phi, bf, t))

        d1 = (-g(2 * h) + 8 * g(h) - 8 * g(-h) + g(-2 * h)) / (12 * h)
        d2 = (-g(2 * h) + 16 * g(h) - 30 * g(0.0) + 16 * g(-h) - g(-2 * h)) / (12 * h * h)
        assert 1j * d1 == pytest.approx(a0, abs=1e-6)
        assert -d2 == pytest.approx(a0**2 + b1**2, abs=1e-6)
