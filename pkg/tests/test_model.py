import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinbus.basis import enumerate_sector
from spinbus.errors import CapacityError
from spinbus.model import (
    Attachment,
    SystemSpec,
    build_bond_operator,
    build_chain,
    build_full,
    matvec,
    total_spin_squared,
)

from conftest import kron_sector_block


class TestSystemSpec:
    def test_bond_lists(self):
        spec = SystemSpec(4)
        assert spec.chain_bonds() == [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]
        ring = SystemSpec(4, boundary="ring")
        assert ring.chain_bonds()[-1] == (3, 0, 1.0)

    def test_attachment_bonds_appended_after_chain(self):
        spec = SystemSpec(3, attachments=[Attachment("A", 1, 0.01), Attachment("B", 3, 0.02)])
        assert spec.n_sites == 5
        assert spec.all_bonds()[-2:] == [(0, 3, 0.01), (2, 4, 0.02)]
        assert spec.qubit_site("A") == 4
        assert spec.qubit_site("B") == 5

    def test_json_round_trip(self):
        spec = SystemSpec(
            5,
            boundary="ring",
            j_chain=(1.0, 0.5, 1.0, 1.0, 2.0),
            attachments=[Attachment("A", 2, 0.01)],
        )
        again = SystemSpec.from_json(spec.to_json())
        assert again == spec
        assert json.loads(spec.to_json())["n_chain"] == 5

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(n_chain=0),
            dict(n_chain=3, boundary="moebius"),
            dict(n_chain=1, boundary="ring"),
            dict(n_chain=3, j_chain=(1.0,)),  # open 3 sites needs 2 bonds
            dict(n_chain=3, attachments=[Attachment("A", 4, 0.01)]),
            dict(n_chain=3, attachments=[Attachment("A", 1, -0.5)]),
            dict(n_chain=3, attachments=[Attachment("A", 1, 0.01), Attachment("A", 2, 0.01)]),
        ],
    )
    def test_invalid_specs(self, kwargs):
        with pytest.raises(ValueError):
            SystemSpec(**kwargs)


class TestBuildChain:
    def test_two_site_eigenvalues(self):
        op = build_chain(SystemSpec(2), 1)
        evals = np.linalg.eigvalsh(op.to_dense())
        assert np.allclose(evals, [-0.75, 0.25], atol=1e-14)

    def test_three_site_ground_doubly_degenerate(self):
        # ground energy -1.0 with one copy in each of the sz = +-1/2 sectors
        lows = []
        for n_down in (1, 2):
            op = build_chain(SystemSpec(3), n_down)
            lows.append(np.linalg.eigvalsh(op.to_dense())[0])
        assert np.allclose(lows, [-1.0, -1.0], atol=1e-12)

    def test_two_site_ring_doubles_the_bond(self):
        op = build_chain(SystemSpec(2, boundary="ring"), 1)
        evals = np.linalg.eigvalsh(op.to_dense())
        assert np.allclose(evals, [-1.5, 0.5], atol=1e-14)

    def test_hermitian(self):
        op = build_chain(SystemSpec(6, boundary="ring"), 2)
        dense = op.to_dense()
        assert np.max(np.abs(dense - dense.T)) == 0.0

    @pytest.mark.parametrize("n_sites, n_down", [(4, 2), (5, 2), (6, 3)])
    def test_matches_kron_oracle_entrywise(self, n_sites, n_down):
        spec = SystemSpec(n_sites, boundary="ring")
        ours = build_chain(spec, n_down).to_dense()
        oracle = kron_sector_block(n_sites, spec.chain_bonds(), n_down)
        assert np.max(np.abs(ours - oracle)) < 1e-14


class TestBuildFull:
    def test_decoupled_qubits_shift_nothing(self):
        spec = SystemSpec(3, attachments=[Attachment("A", 1, 0.0), Attachment("B", 3, 0.0)])
        # every sector eigenvalue of the 5-spin system already appears in the
        # 3-site chain spectrum (free qubits add degeneracy, not energy)
        chain_evals = np.concatenate(
            [np.linalg.eigvalsh(build_chain(SystemSpec(3), d).to_dense()) for d in range(4)]
        )
        op = build_full(spec, 2)
        for e in np.linalg.eigvalsh(op.to_dense()):
            assert np.min(np.abs(chain_evals - e)) < 1e-12

    def test_matches_kron_oracle(self):
        spec = SystemSpec(4, attachments=[Attachment("A", 2, 0.05)])
        ours = build_full(spec, 2).to_dense()
        oracle = kron_sector_block(5, spec.all_bonds(), 2)
        assert np.max(np.abs(ours - oracle)) < 1e-14

    def test_needs_attachment(self):
        with pytest.raises(ValueError):
            build_full(SystemSpec(4), 2)

    def test_capacity_cap(self):
        spec = SystemSpec(23, attachments=[Attachment("A", 1, 0.01), Attachment("B", 2, 0.01)])
        with pytest.raises(CapacityError):
            build_full(spec, 12)


class TestMatvec:
    def test_zero_vector(self):
        op = build_chain(SystemSpec(4), 2)
        assert np.array_equal(matvec(op, np.zeros(op.dim)), np.zeros(op.dim))

    def test_hand_expanded_two_site(self):
        op = build_chain(SystemSpec(2), 1)
        y = matvec(op, np.array([1.0, 0.0]))
        assert np.allclose(y, [-0.25, 0.5], atol=1e-15)

    def test_eigenrelation(self):
        op = build_chain(SystemSpec(8), 4)
        evals, evecs = np.linalg.eigh(op.to_dense())
        v = evecs[:, 0]
        assert np.linalg.norm(matvec(op, v) - evals[0] * v) < 1e-10

    def test_dimension_mismatch(self):
        op = build_chain(SystemSpec(4), 2)
        with pytest.raises(ValueError):
            matvec(op, np.zeros(op.dim + 1))

    def test_symmetry_of_quadratic_form(self, rng):
        op = build_chain(SystemSpec(7, boundary="ring"), 3)
        u = rng.standard_normal(op.dim)
        v = rng.standard_normal(op.dim)
        assert abs(u @ matvec(op, v) - v @ matvec(op, u)) < 1e-12


class TestInvariants:
    def test_total_spin_commutes(self, rng):
        op = build_chain(SystemSpec(6), 3)
        s2 = total_spin_squared(op.sector)
        v = rng.standard_normal(op.dim)
        v /= np.linalg.norm(v)
        comm = v @ (op.matvec(s2.matvec(v)) - s2.matvec(op.matvec(v)))
        assert abs(comm) < 1e-10

    @given(st.floats(0.1, 10.0))
    @settings(max_examples=15, deadline=None)
    def test_energy_scales_with_couplings(self, c):
        base = np.linalg.eigvalsh(build_chain(SystemSpec(5), 2).to_dense())
        scaled = np.linalg.eigvalsh(build_chain(SystemSpec(5, j_chain=(c,) * 4), 2).to_dense())
        assert np.max(np.abs(scaled - c * base)) < 1e-12 * max(1.0, c)

    def test_ring_spectrum_invariant_under_relabeling(self):
        sector = enumerate_sector(6, 3)
        specs = []
        for rot in (0, 2):
            bonds = [((i + rot) % 6, (i + 1 + rot) % 6, 1.0) for i in range(6)]
            specs.append(np.linalg.eigvalsh(build_bond_operator(sector, bonds).to_dense()))
        assert np.max(np.abs(specs[0] - specs[1])) < 1e-10
