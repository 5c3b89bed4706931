"""The alternating form, se_ij generators, and orbit comparisons."""

import pytest

from umrow import (
    Ideal,
    MatrixR,
    UnimodularRow,
    compare_e_esp_orbits,
    compare_relative_orbits,
    elem_gen,
    is_symplectic,
    rel_esp_orbit,
    se_gen,
    sigma,
    symplectic_form,
)
from umrow.errors import IndexOutOfRange, OddSize


class TestSigma:
    def test_even_goes_down(self):
        assert sigma(2, 4) == 3

    def test_odd_goes_up(self):
        assert sigma(2, 1) == 2

    def test_involution(self):
        for m in (1, 2, 3):
            for k in range(1, 2 * m + 1):
                assert sigma(m, sigma(m, k)) == k

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            sigma(2, 5)


class TestForm:
    def test_block_structure(self, z4):
        psi = symplectic_form(z4, 2)
        assert psi.rows[0][1] == 1 and psi.rows[1][0] == 3
        assert psi.rows[2][3] == 1 and psi.rows[3][2] == 3

    def test_alternating(self, z6):
        psi = symplectic_form(z6, 3)
        neg = MatrixR(z6, [[z6.neg(x) for x in row] for row in psi.rows])
        assert psi.transpose() == neg
        assert all(psi.rows[k][k] == z6.zero for k in range(6))


class TestSeGen:
    def test_paired_index_single_entry(self, z4):
        # i = sigma(j) for (1,2): only the (1,2) entry appears
        m = se_gen(z4, 2, 1, 2, 3)
        expected = [list(r) for r in MatrixR.identity(z4, 4).rows]
        expected[0][1] = 3
        assert m == MatrixR(z4, expected)

    def test_se13_over_z4(self, z4):
        # sign (-1)^4 = +1, sigma(3) = 4, sigma(1) = 2: I + E13 - E42
        m = se_gen(z4, 2, 1, 3, 1)
        expected = [list(r) for r in MatrixR.identity(z4, 4).rows]
        expected[0][2] = 1
        expected[3][1] = 3
        assert m == MatrixR(z4, expected)

    def test_zero_parameter(self, z6):
        assert se_gen(z6, 2, 1, 3, 0) == MatrixR.identity(z6, 4)

    def test_all_generators_symplectic(self, rng, z4, z6, dual_numbers):
        for ring in (z4, z6, dual_numbers):
            for i in range(1, 5):
                for j in range(1, 5):
                    if i == j:
                        continue
                    for _ in range(30):
                        m = se_gen(ring, 2, i, j, ring.random(rng))
                        assert is_symplectic(m)
                        assert m.det() == ring.one

    def test_plain_elementary_is_not_symplectic(self, z4):
        assert not is_symplectic(elem_gen(z4, 4, 1, 3, 1))

    def test_odd_size_rejected(self, z4):
        with pytest.raises(OddSize):
            is_symplectic(MatrixR.identity(z4, 3))


class TestOrbitComparison:
    def test_z2_m2(self, z2):
        cmp_res = compare_e_esp_orbits(z2, 2)
        assert cmp_res.equal
        assert cmp_res.left_size == cmp_res.right_size == 15

    def test_z4_m2(self, z4):
        cmp_res = compare_e_esp_orbits(z4, 2)
        assert cmp_res.equal and cmp_res.left_size == 240


class TestRelativeSymplectic:
    def test_contains_base_with_empty_certificate(self, z4):
        ideal = Ideal(z4, [2])
        row = UnimodularRow.e1(z4, 4)
        orbit = rel_esp_orbit(row, ideal, conj_depth=1)
        assert row.entries in orbit
        assert len(orbit.certificate(row.entries)) == 0

    def test_reaches_e1_from_congruent_row(self, z4):
        ideal = Ideal(z4, [2])
        row = UnimodularRow(z4, (3, 2, 2, 2))
        orbit = rel_esp_orbit(row, ideal, conj_depth=1)
        e1 = (1, 0, 0, 0)
        assert e1 in orbit
        word = orbit.certificate(e1)
        assert word.apply_to_row(row.entries) == e1
        # every letter is conjugated-symplectic with parameter in the ideal
        assert all(letter[0] == "conj" for letter in word)

    def test_zero_ideal_trivial(self, z4):
        ideal = Ideal(z4, [0])
        row = UnimodularRow.e1(z4, 4)
        orbit = rel_esp_orbit(row, ideal, conj_depth=1)
        assert orbit.as_set() == {row.entries}

    def test_relative_e_esp_subsets_agree_here(self, z4):
        # budgeted subset-mode comparison; equality of the computed subsets
        ideal = Ideal(z4, [2])
        row = UnimodularRow(z4, (3, 2, 2, 2))
        report = compare_relative_orbits(row, ideal, conj_depth=1)
        assert report["subset_mode"]
        assert report["equal_as_sets"]
