import math

import numpy as np
import pytest

from conftest import kitaev, ssh
from ptchain.core.errors import SolverError, ValidationError
from ptchain.physics.lattice import ModelKind, build_matrix
from ptchain.physics.numeric import EigenDecomposition, eigen_decompose
from ptchain.physics.spectral import (
    ClassificationTolerances,
    PtStatus,
    analyze_model,
    classify_states,
    count_zero_energies,
    count_zero_modes,
    edge_mask,
    occupation_profile,
)


def _min_abs_energy(analysis):
    return float(np.min(np.abs(analysis.decomposition.values)))


class TestIsolatedChains:
    def test_ssh_nontrivial_phase_has_two_zero_modes(self):
        analysis = analyze_model(ssh(theta=0.1 * math.pi))
        assert analysis.zero_modes == 2
        assert analysis.phase.status is PtStatus.UNBROKEN

    def test_ssh_trivial_phase_is_gapped(self):
        analysis = analyze_model(ssh(theta=0.9 * math.pi))
        assert analysis.zero_modes == 0
        # half-gap 2 t delta |cos theta| ~ 0.571
        assert _min_abs_energy(analysis) >= 0.5

    @pytest.mark.parametrize("mu", [0.0, 0.5, 1.0, 1.5])
    def test_kitaev_topological_phase_has_two_zero_modes(self, mu):
        assert analyze_model(kitaev(mu=mu)).zero_modes == 2

    @pytest.mark.parametrize("mu", [2.5, 3.0, 4.0])
    def test_kitaev_trivial_phase_has_no_zero_modes(self, mu):
        assert analyze_model(kitaev(mu=mu)).zero_modes == 0

    def test_kitaev_gap_closes_at_the_transition(self):
        assert _min_abs_energy(analyze_model(kitaev(mu=2.0))) < 0.1
        assert _min_abs_energy(analyze_model(kitaev(mu=2.5))) > 0.4


class TestEdgeStates:
    def test_ssh_edge_state_sits_on_the_outer_sites(self):
        analysis = analyze_model(ssh(theta=0.1 * math.pi))
        edges = analysis.edge_states()
        assert len(edges) == 2
        profile = analysis.profile(edges[0].index)
        outer = profile.electron[:10].sum() + profile.electron[-10:].sum()
        assert outer > 0.99
        assert profile.total.sum() == pytest.approx(1.0, abs=1e-12)

    def test_ssh_trivial_phase_has_no_edge_state(self):
        assert analyze_model(ssh(theta=0.9 * math.pi)).edge_states() == []

    def test_kitaev_edge_state_is_particle_hole_symmetric(self):
        analysis = analyze_model(kitaev(mu=1.0))
        edges = analysis.edge_states()
        assert edges
        state = min(edges, key=lambda s: abs(s.energy))
        profile = analysis.profile(state.index)
        assert np.max(np.abs(profile.electron - profile.hole)) < 1e-8
        assert state.phs_deviation < 1e-8

    def test_edge_mask_uses_ceiling(self):
        mask = edge_mask(30, 0.05)
        assert mask.sum() == 4
        assert mask[:2].all() and mask[-2:].all()
        assert edge_mask(200, 0.05).sum() == 20

    def test_occupation_profile_shapes(self):
        psi = np.array([0.6, 0.0, 0.0, 0.8j])
        ssh_profile = occupation_profile(psi, ModelKind.SSH)
        np.testing.assert_allclose(ssh_profile.electron, [0.36, 0, 0, 0.64])
        assert ssh_profile.phs_deviation is None

        bdg_profile = occupation_profile(psi, ModelKind.KITAEV, n_sites=2)
        np.testing.assert_allclose(bdg_profile.electron, [0.36, 0.0])
        np.testing.assert_allclose(bdg_profile.hole, [0.0, 0.64])
        assert bdg_profile.phs_deviation == pytest.approx(0.64)

        with pytest.raises(ValidationError):
            occupation_profile(psi[:3], ModelKind.KITAEV)
        with pytest.raises(ValidationError):
            occupation_profile(psi, ModelKind.SSH, n_sites=6)


class TestSmallGainLoss:
    GAMMA = 1e-5

    @pytest.mark.parametrize("potential", ["u1", "u2"])
    def test_ssh_edge_pair_breaks_only_in_the_nontrivial_phase(self, potential):
        broken = analyze_model(ssh(theta=0.1 * math.pi, potential=potential, gamma=self.GAMMA))
        intact = analyze_model(ssh(theta=0.9 * math.pi, potential=potential, gamma=self.GAMMA))

        assert broken.phase.non_real_count == 2
        assert broken.phase.status is PtStatus.BROKEN
        assert intact.phase.non_real_count == 0

        pair = [s for s in broken.states if not s.is_real]
        assert pair[0].conjugate_partner == pair[1].index
        assert all(s.is_edge for s in pair)

    def test_kitaev_end_caps_keep_the_spectrum_real(self):
        for mu in np.arange(0.0, 4.01, 0.5):
            analysis = analyze_model(kitaev(mu=float(mu), potential="u1", gamma=self.GAMMA))
            assert np.max(np.abs(analysis.decomposition.values.imag)) < 1e-9

    def test_kitaev_staggered_breaks_in_the_bulk(self):
        analysis = analyze_model(kitaev(mu=0.0, potential="u2", gamma=self.GAMMA))
        broken = [s for s in analysis.states if not s.is_real]
        assert len(broken) >= 2
        assert all(s.edge_weight < 0.5 for s in broken)

    def test_pt_overlap_separates_broken_and_symmetric_states(self):
        analysis = analyze_model(ssh(n=20, theta=0.1 * math.pi, potential="u1", gamma=0.3))
        for state in analysis.states:
            if state.is_real:
                assert state.pt_overlap == pytest.approx(1.0, abs=1e-6)
            else:
                assert state.pt_overlap < 1.0 - 1e-6

    def test_particle_hole_symmetric_zero_modes_have_no_net_gain(self):
        analysis = analyze_model(kitaev(mu=1.0, potential="u1", gamma=self.GAMMA))
        zero = [s for s in analysis.states if abs(s.energy) < 1e-8]
        assert len(zero) == 2
        assert all(abs(s.gain_balance) < 1e-8 for s in zero)


def test_staggered_ssh_spectrum_squares_to_shifted_isolated_spectrum():
    # chiral blocks: M^2 = H0^2 - gamma^2
    gamma = 0.35
    isolated = eigen_decompose(build_matrix(ssh(n=12, theta=0.4))).values.real
    driven = eigen_decompose(build_matrix(ssh(n=12, theta=0.4, potential="u2", gamma=gamma)))
    expected = np.sort_complex((isolated**2 - gamma**2).astype(complex))
    got = np.sort_complex(driven.values**2)
    np.testing.assert_allclose(got.real, expected.real, atol=1e-10)
    np.testing.assert_allclose(got.imag, 0.0, atol=1e-10)


def test_unpaired_non_real_eigenvalue_is_a_solver_error():
    decomp = EigenDecomposition(
        values=np.array([1 + 1j, 2 + 0j]),
        vectors=np.eye(2, dtype=complex),
        max_residual=0.0,
        matrix_norm=2.0,
    )
    with pytest.raises(SolverError, match="conjugate partner"):
        classify_states(decomp, ModelKind.SSH)


def test_count_zero_energies():
    values = np.array([0.0, 5e-9 + 5e-9j, 2e-8, 1j * 2e-8, 1.0])
    assert count_zero_energies(values, 1e-8) == 2
    with pytest.raises(ValidationError):
        count_zero_energies(values, 0.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"reality_tol": 0.0},
        {"edge_fraction": 0.0},
        {"edge_fraction": 0.6},
        {"edge_threshold": 1.0},
        {"zero_tol": -1.0},
    ],
)
def test_tolerances_are_validated(kwargs):
    with pytest.raises(ValidationError):
        ClassificationTolerances(**kwargs)


def test_summary_reports_phase():
    summary = analyze_model(ssh(n=100, theta=0.1 * math.pi)).summary()
    assert summary["pt_phase"] == "unbroken"
    assert summary["zero_modes"] == 2
    assert summary["edge_states"] == 2


class TestZeroModeCount:
    def test_end_caps_keep_the_zero_modes_at_large_gamma(self):
        decomp = eigen_decompose(build_matrix(kitaev(mu=1.0, potential="u1", gamma=1.5)))
        assert count_zero_modes(decomp) == 2

    @pytest.mark.parametrize("mu", [0.0, 1.0, 2.0, 3.0, 4.0])
    def test_strong_staggered_gain_loss_removes_every_zero_mode(self, mu):
        decomp = eigen_decompose(build_matrix(kitaev(mu=mu, potential="u2", gamma=2.0)))
        assert count_zero_modes(decomp) == 0

    def test_isolated_chain_counts(self):
        assert count_zero_modes(eigen_decompose(build_matrix(kitaev(mu=0.5)))) == 2
        assert count_zero_modes(eigen_decompose(build_matrix(kitaev(mu=2.5)))) == 0

    @pytest.mark.parametrize("gamma", [1.9, 2.0, 2.1])
    def test_end_caps_at_the_coalescence_point_keep_two_zero_modes(self, gamma):
        # at mu=0, gamma=2t the zero modes are defective; eigenvalues scatter far above zero_tol
        decomp = eigen_decompose(build_matrix(kitaev(n=100, mu=0.0, potential="u1", gamma=gamma)))
        assert count_zero_modes(decomp) == 2

    def test_defective_zero_is_counted_by_its_null_space(self):
        jordan = np.diag([1.0, 1.0], 1).astype(complex)
        decomp = eigen_decompose(jordan)
        assert decomp.singular_values is not None
        assert count_zero_modes(decomp) == 1

    def test_without_singular_values_the_eigenvalues_are_counted(self):
        decomp = EigenDecomposition(
            values=np.array([-1.0, 0.0, 1e-9j, 1.0], dtype=complex),
            vectors=np.eye(4, dtype=complex),
            max_residual=0.0,
            matrix_norm=1.0,
        )
        assert count_zero_modes(decomp) == 2


def test_pairing_tolerance_does_not_grow_with_the_matrix_norm():
    decomp = EigenDecomposition(
        values=np.array([1 - 1j + 2e-8, 1 + 1j]),
        vectors=np.eye(2, dtype=complex),
        max_residual=0.0,
        matrix_norm=4.0,
    )
    with pytest.raises(SolverError, match="conjugate partner"):
        classify_states(decomp, ModelKind.SSH, ClassificationTolerances(pairing_tol=1e-8))

    paired, phase = classify_states(decomp, ModelKind.SSH, ClassificationTolerances(pairing_tol=3e-8))
    assert paired[0].conjugate_partner == 1
    assert phase.non_real_count == 2
