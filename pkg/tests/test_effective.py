import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinbus.errors import ParityError
from spinbus.measures import PureState, reduced_density, singlet_projector, trace_distance
from spinbus.model import Attachment, SystemSpec
from spinbus.spectra import ground_manifold, splitting_in_ground_sector
from spinbus.effective import (
    central_spin_coupling,
    coupling_from_gap,
    rkky_approx,
    rkky_exact,
    sign_map,
    three_spin_concurrences,
    three_spin_model,
)


class TestCentralSpin:
    def test_single_site_chain_passes_the_bare_coupling(self):
        res = central_spin_coupling(SystemSpec(1), 1, 0.02)
        assert res.value == pytest.approx(0.02, abs=1e-14)

    def test_three_site_values(self):
        assert central_spin_coupling(SystemSpec(3), 1, 0.3).value == pytest.approx(0.2, abs=1e-12)
        assert central_spin_coupling(SystemSpec(3), 2, 0.3).value == pytest.approx(-0.1, abs=1e-12)

    def test_nine_site_sign_alternation(self):
        for site in range(1, 10):
            value = central_spin_coupling(SystemSpec(9), site, 0.01).value
            assert np.sign(value) == (1 if site % 2 else -1)

    @pytest.mark.parametrize("n", [3, 5, 7, 9, 11, 13])
    def test_matrix_element_identities(self, n):
        # moment of |0_c>, negated moment of |1_c>, and the cross x element
        # coincide once the doublet phase is pinned by the lowering image
        for site in range(1, n + 1):
            res = central_spin_coupling(SystemSpec(n), site, 1.0)
            assert res.diagnostics["element_spread"] < 1e-9
            assert not res.flags

    def test_magnitude_bounded_by_bare_coupling(self):
        for site in range(1, 8):
            res = central_spin_coupling(SystemSpec(7), site, 0.05)
            assert abs(res.value) <= 0.05 + 1e-15

    def test_even_chain_rejected(self):
        with pytest.raises(ParityError):
            central_spin_coupling(SystemSpec(4), 1, 0.01)

    def test_perturbative_splitting_matches_prediction(self):
        # one weakly attached qubit: the lowest four full-system levels form
        # a singlet/triplet pattern split by |J*| up to O(j / gap) corrections
        for n, site in [(5, 1), (7, 2), (9, 1)]:
            j = 0.01
            pred = abs(central_spin_coupling(SystemSpec(n), site, j).value)
            gm = ground_manifold(SystemSpec(n, attachments=[Attachment("A", site, j)]), k=6)
            split = gm.energies[3] - gm.energies[0]
            gap = ground_manifold(SystemSpec(n)).gap
            assert split == pytest.approx(pred, rel=5 * j / gap)


class TestThreeSpinModel:
    def test_symmetric_point(self):
        m = three_spin_model(1.0)
        assert m.ordering == ("D1", "D2", "Q")
        assert np.allclose(
            [lev.energy for lev in m.manifolds], [-1.0, 0.0, 0.5], atol=1e-12
        )
        expected = np.array([1.0, -2.0, 1.0]) / np.sqrt(6.0)
        overlap = abs(np.dot(m.member_plus.amps, expected))
        assert overlap >= 1.0 - 1e-12

    def test_symmetric_point_outer_concurrence(self):
        c_ab, c_ac, c_cb = three_spin_concurrences(three_spin_model(1.0))
        assert c_ab == pytest.approx(1 / 3, abs=1e-10)
        assert c_ac == pytest.approx(c_cb, abs=1e-10)

    @pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
    def test_positive_ratio_ordering(self, lam):
        assert three_spin_model(lam).ordering == ("D1", "D2", "Q")

    @pytest.mark.parametrize("lam", [-0.5, -1.0, -2.0])
    def test_negative_ratio_ordering(self, lam):
        assert three_spin_model(lam).ordering == ("D1'", "Q", "D2'")

    def test_opposite_sign_ground_member(self):
        m = three_spin_model(-1.0)
        root3 = np.sqrt(3.0)
        expected = np.array([(2 + root3) / (3 + root3), -1 / root3, -1 / (3 + root3)])
        assert np.max(np.abs(m.member_plus.amps - expected)) < 1e-12

    def test_strong_ferro_partner_limit(self):
        m = three_spin_model(-1000.0)
        c_ab, _, _ = three_spin_concurrences(m)
        assert c_ab == pytest.approx(2 / 3, abs=2e-3)
        limit = np.array([2.0, -1.0, -1.0]) / np.sqrt(6.0)
        assert abs(np.dot(m.member_plus.amps, limit)) > 1 - 1e-3

    def test_decoupled_partner(self):
        c_ab, c_ac, c_cb = three_spin_concurrences(three_spin_model(0.0))
        assert c_ab == 0.0
        assert c_ac == pytest.approx(1.0, abs=1e-12)

    def test_double_ferro_gives_quadruplet_ground(self):
        for lam in (0.5, 1.0, 3.0):
            m = three_spin_model(lam, sign_a=-1)
            assert m.manifolds[0].multiplicity == 4
            assert m.manifolds[0].total_s == pytest.approx(1.5, abs=1e-9)

    def test_level_count(self):
        m = three_spin_model(0.7)
        assert len(m.energies) == 8
        assert sum(lev.multiplicity for lev in m.manifolds) == 8

    def test_infinite_ratio_rejected(self):
        with pytest.raises(ValueError):
            three_spin_model(float("inf"))


class TestRkky:
    def test_two_site_anchor(self):
        # second-order perturbation theory for two qubits on the two-site
        # chain gives an induced S_A.S_B coefficient of exactly jA jB / 2
        ex = rkky_exact(SystemSpec(2), 1, 2, 0.01, 0.01)
        ap = rkky_approx(SystemSpec(2), 1, 2, 0.01, 0.01)
        assert ex.value == pytest.approx(0.5e-4, rel=1e-12)
        assert ap.value == pytest.approx(ex.value, rel=1e-12)

    def test_vanishes_without_bare_coupling(self):
        assert rkky_exact(SystemSpec(4), 1, 4, 0.0, 0.01).value == 0.0

    def test_sign_structure_ten_sites(self):
        for j in range(2, 11):
            value = rkky_exact(SystemSpec(10), 1, j, 0.01, 0.01).value
            assert np.sign(value) == (1 if (j - 1) % 2 else -1)

    def test_approx_tracks_exact_signs(self):
        for j in range(1, 11):
            ex = rkky_exact(SystemSpec(10), 1, j, 0.01, 0.01).value
            ap = rkky_approx(SystemSpec(10), 1, j, 0.01, 0.01).value
            assert np.sign(ex) == np.sign(ap)

    def test_axis_independence(self):
        for (i, j) in [(1, 2), (1, 5), (3, 8)]:
            z = rkky_exact(SystemSpec(8), i, j, 0.01, 0.01, axis="z").value
            x = rkky_exact(SystemSpec(8), i, j, 0.01, 0.01, axis="x").value
            y = rkky_exact(SystemSpec(8), i, j, 0.01, 0.01, axis="y").value
            assert abs(z - x) < 1e-9
            assert abs(z - y) < 1e-9

    @given(st.floats(1e-4, 0.05), st.floats(1e-4, 0.05))
    @settings(max_examples=10, deadline=None)
    def test_bilinear_in_bare_couplings(self, ja, jb):
        base = rkky_exact(SystemSpec(4), 1, 4, 1.0, 1.0).value
        scaled = rkky_exact(SystemSpec(4), 1, 4, ja, jb).value
        assert scaled == pytest.approx(ja * jb * base, rel=1e-10)

    def test_swap_symmetry(self):
        a = rkky_exact(SystemSpec(8), 2, 7, 0.01, 0.03).value
        b = rkky_exact(SystemSpec(8), 7, 2, 0.03, 0.01).value
        assert a == pytest.approx(b, rel=1e-12)

    def test_odd_chain_rejected(self):
        with pytest.raises(ParityError):
            rkky_exact(SystemSpec(5), 1, 5, 0.01, 0.01)
        with pytest.raises(ParityError):
            rkky_approx(SystemSpec(5), 1, 5, 0.01, 0.01)

    def test_same_site_pair_is_ferromagnetic(self):
        assert rkky_exact(SystemSpec(10), 1, 1, 0.01, 0.01).value < 0
        assert rkky_approx(SystemSpec(10), 1, 1, 0.01, 0.01).value < 0


class TestCouplingFromGap:
    def test_matches_second_order_for_odd_separation(self):
        spec = SystemSpec(8, attachments=[Attachment("A", 1, 0.01), Attachment("B", 8, 0.01)])
        gap_route = coupling_from_gap(spec)
        exact = rkky_exact(SystemSpec(8), 1, 8, 0.01, 0.01)
        assert gap_route.ground_character == "singlet"
        assert gap_route.value > 0
        assert abs(gap_route.value) == pytest.approx(abs(exact.value), rel=0.10)

    def test_even_separation_is_ferromagnetic(self):
        spec = SystemSpec(8, attachments=[Attachment("A", 1, 0.01), Attachment("B", 7, 0.01)])
        res = coupling_from_gap(spec)
        assert res.ground_character == "triplet"
        assert res.value < 0

    def test_two_site_anchor(self):
        spec = SystemSpec(2, attachments=[Attachment("A", 1, 0.01), Attachment("B", 2, 0.01)])
        res = coupling_from_gap(spec)
        assert res.value == pytest.approx(0.5e-4, rel=0.05)

    @pytest.mark.parametrize("n", [4, 6, 10])
    def test_cross_method_consistency(self, n):
        spec = SystemSpec(n, attachments=[Attachment("A", 1, 0.01), Attachment("B", n, 0.01)])
        gap_route = coupling_from_gap(spec)
        exact = rkky_exact(SystemSpec(n), 1, n, 0.01, 0.01)
        assert np.sign(gap_route.value) == np.sign(exact.value)
        assert abs(gap_route.value) == pytest.approx(abs(exact.value), rel=0.10)

    def test_row_serialization(self):
        spec = SystemSpec(4, attachments=[Attachment("A", 1, 0.01), Attachment("B", 4, 0.01)])
        row = coupling_from_gap(spec).to_row()
        assert row["method"] == "gap"
        assert row["N"] == 4 and row["i"] == 1 and row["j"] == 4
        assert np.isfinite(row["value"])


class TestSignMap:
    def test_three_site(self):
        labels = [(s.site, s.label) for s in sign_map(SystemSpec(3))]
        assert labels == [(1, "A"), (2, "F"), (3, "A")]

    def test_single_site(self):
        assert [s.label for s in sign_map(SystemSpec(1))] == ["A"]

    def test_nine_site_alternation(self):
        labels = [s.label for s in sign_map(SystemSpec(9))]
        assert labels == ["A", "F", "A", "F", "A", "F", "A", "F", "A"]

    def test_moments_reported(self):
        entry = sign_map(SystemSpec(3))[0]
        assert entry.moment == pytest.approx(2 / 3, abs=1e-12)
