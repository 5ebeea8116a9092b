import numpy as np
import pytest
from scipy import sparse

from spinbus.basis import SectorBasis, enumerate_sector
from spinbus.errors import CapacityError, ConvergenceError, ParityError
from spinbus.model import Attachment, SparseOperator, SystemSpec, build_chain
from spinbus.spectra import (
    chain_gap,
    dense_spectrum,
    gauge_fix,
    ground_manifold,
    lowest_eigenpairs,
    splitting_in_ground_sector,
)

from conftest import kron_heisenberg


def wrap_dense(matrix: np.ndarray) -> SparseOperator:
    n = matrix.shape[0]
    sector = SectorBasis(n_sites=n, n_down=1, states=np.array([1 << i for i in range(n)]))
    return SparseOperator(matrix=sparse.csr_matrix(matrix), sector=sector)


class TestDenseSpectrum:
    def test_two_site_full_space(self):
        # all sectors together: singlet at -3/4 plus triplet at +1/4
        evals = np.sort(
            np.concatenate(
                [dense_spectrum(build_chain(SystemSpec(2), d))[0] for d in range(3)]
            )
        )
        assert np.allclose(evals, [-0.75, 0.25, 0.25, 0.25], atol=1e-14)

    def test_three_site_ground_multiplicity(self):
        evals = np.sort(
            np.concatenate(
                [dense_spectrum(build_chain(SystemSpec(3), d))[0] for d in range(4)]
            )
        )
        assert np.allclose(evals[:2], [-1.0, -1.0], atol=1e-12)
        assert evals[2] > -0.9

    def test_scaled_identity(self):
        op = wrap_dense(2.5 * np.eye(7))
        evals, _ = dense_spectrum(op)
        assert np.allclose(evals, 2.5)

    def test_reconstruction(self):
        op = build_chain(SystemSpec(8, boundary="ring"), 4)
        evals, evecs = dense_spectrum(op)
        recon = (evecs * evals) @ evecs.T
        assert np.max(np.abs(recon - op.to_dense())) < 1e-9

    def test_matches_kron_oracle_full_space(self):
        spec = SystemSpec(5)
        ours = np.sort(
            np.concatenate([dense_spectrum(build_chain(spec, d))[0] for d in range(6)])
        )
        oracle = np.sort(np.linalg.eigvalsh(kron_heisenberg(5, spec.chain_bonds())))
        assert np.max(np.abs(ours - oracle)) < 1e-10

    def test_capacity(self):
        op = wrap_dense(np.eye(8))
        with pytest.raises(CapacityError):
            dense_spectrum(op, cap=4)


class TestLowestEigenpairs:
    def test_two_site_ground(self):
        op = build_chain(SystemSpec(2), 1)
        evals, vecs = lowest_eigenpairs(op, 1)
        assert abs(evals[0] + 0.75) < 1e-12
        assert np.linalg.norm(op.matvec(vecs[:, 0]) - evals[0] * vecs[:, 0]) < 1e-9

    def test_random_dense_matrix(self, rng):
        a = rng.standard_normal((50, 50))
        a = 0.5 * (a + a.T)
        op = wrap_dense(a)
        evals, _ = lowest_eigenpairs(op, 3)
        assert np.max(np.abs(evals - np.linalg.eigvalsh(a)[:3])) < 1e-8

    def test_against_dense_on_midsize_sector(self):
        op = build_chain(SystemSpec(12), 6)  # dim 924
        dense_vals, _ = dense_spectrum(op)
        lanc_vals, vecs = lowest_eigenpairs(op, 2)
        assert np.max(np.abs(lanc_vals - dense_vals[:2])) < 1e-8
        for i in range(2):
            r = np.linalg.norm(op.matvec(vecs[:, i]) - lanc_vals[i] * vecs[:, i])
            assert r < 1e-8

    def test_deterministic(self):
        op = build_chain(SystemSpec(10), 5)
        a, va = lowest_eigenpairs(op, 2)
        b, vb = lowest_eigenpairs(op, 2)
        assert np.array_equal(a, b)
        assert np.array_equal(va, vb)

    def test_convergence_error_carries_residual(self):
        op = build_chain(SystemSpec(12), 6)
        with pytest.raises(ConvergenceError) as info:
            lowest_eigenpairs(op, 2, tol=1e-13, max_iter=12)
        assert info.value.best_residual is not None

    def test_rejects_bad_k(self):
        op = build_chain(SystemSpec(4), 2)
        with pytest.raises(ValueError):
            lowest_eigenpairs(op, 0)
        with pytest.raises(ValueError):
            lowest_eigenpairs(op, 17)


class TestGaugeFix:
    def test_leading_coefficient_positive(self):
        v = np.array([[-0.6, 1e-12], [0.8, -1.0]])
        fixed = gauge_fix(v)
        assert fixed[0, 0] > 0
        assert fixed[1, 1] > 0  # row 0 of column 1 is below the floor, row 1 leads

    def test_idempotent(self, rng):
        v = rng.standard_normal((9, 3))
        once = gauge_fix(v)
        assert np.array_equal(once, gauge_fix(once))


class TestGroundManifold:
    @pytest.mark.parametrize("n", [3, 5, 7, 9])
    def test_odd_chain_doublet(self, n):
        gm = ground_manifold(SystemSpec(n))
        assert gm.degeneracy == 2
        assert sorted(s.sz for s in gm.sectors[: gm.degeneracy]) == [-0.5, 0.5]

    @pytest.mark.parametrize("n", [2, 4, 6, 8])
    @pytest.mark.parametrize("boundary", ["open", "ring"])
    def test_even_chain_singlet(self, n, boundary):
        gm = ground_manifold(SystemSpec(n, boundary=boundary))
        assert gm.degeneracy == 1
        assert gm.sectors[0].sz == 0.0

    def test_decoupled_qubits_multiply_degeneracy(self):
        spec = SystemSpec(3, attachments=[Attachment("A", 1, 0.0), Attachment("B", 3, 0.0)])
        gm = ground_manifold(spec, k=10)
        assert gm.degeneracy == 8
        assert abs(gm.energies[0] + 1.0) < 1e-10

    def test_energies_ascending_and_vectors_normalized(self):
        gm = ground_manifold(SystemSpec(6, boundary="ring"))
        assert np.all(np.diff(gm.energies) >= -1e-12)
        for v in gm.vectors:
            assert abs(np.linalg.norm(v) - 1.0) < 1e-10


class TestSplitting:
    def test_two_site_anchor(self):
        # second-order coupling between the qubits is jA jB / 2, and the
        # full-system splitting tracks it at the percent level for j = 0.01
        spec = SystemSpec(2, attachments=[Attachment("A", 1, 0.01), Attachment("B", 2, 0.01)])
        res = splitting_in_ground_sector(spec)
        assert res.delta == pytest.approx(0.5e-4, rel=0.05)
        assert res.ground_spin_squared < 0.1
        assert res.perturbative

    def test_decoupled_is_degenerate(self):
        spec = SystemSpec(4, attachments=[Attachment("A", 1, 0.0), Attachment("B", 4, 0.0)])
        res = splitting_in_ground_sector(spec)
        assert abs(res.delta) < 1e-12

    def test_singlet_ground_for_odd_separation(self):
        spec = SystemSpec(8, attachments=[Attachment("A", 1, 0.01), Attachment("B", 8, 0.01)])
        res = splitting_in_ground_sector(spec)
        assert res.delta > 0
        assert res.ground_spin_squared < 0.5

    def test_parity_guard(self):
        spec = SystemSpec(3, attachments=[Attachment("A", 1, 0.01), Attachment("B", 3, 0.01)])
        with pytest.raises(ParityError):
            splitting_in_ground_sector(spec)

    def test_needs_two_qubits(self):
        spec = SystemSpec(4, attachments=[Attachment("A", 1, 0.01)])
        with pytest.raises(ValueError):
            splitting_in_ground_sector(spec)


def test_chain_gap_matches_manifold_route():
    spec = SystemSpec(8)
    assert chain_gap(spec) == pytest.approx(ground_manifold(spec).gap, abs=1e-10)
