"""Certificates: letters, replay, inversion, transport, serialization."""

import pytest

from umrow import (
    ElementaryWord,
    Ideal,
    IntegersModRing,
    MatrixR,
    UnimodularRow,
    act_row,
    elem_gen,
    elem_letter,
    map_word_parameters,
    symp_letter,
)
from umrow.errors import DiagonalIndex, IndexOutOfRange
from umrow.words import conj_letter, letter_matrix


def random_word(ring, n, rng, length=6):
    letters = []
    while len(letters) < length:
        i, j = rng.randrange(1, n + 1), rng.randrange(1, n + 1)
        if i == j:
            continue
        letters.append(elem_letter(ring, n, i, j, ring.random(rng)))
    return ElementaryWord(ring, n, letters)


class TestElemGen:
    def test_row_action_adds_multiple(self, z4):
        m = elem_gen(z4, 3, 1, 3, 2)
        assert m.act_on_row((1, 0, 0)) == (1, 0, 2)

    def test_zero_parameter_is_identity(self, z6):
        assert elem_gen(z6, 3, 1, 2, 0) == MatrixR.identity(z6, 3)

    def test_determinant_one_random(self, rng, z6):
        for _ in range(50):
            i, j = rng.sample(range(1, 4), 2)
            m = elem_gen(z6, 3, i, j, z6.random(rng))
            assert m.det() == z6.one

    def test_diagonal_rejected(self, z6):
        with pytest.raises(DiagonalIndex):
            elem_gen(z6, 3, 2, 2, 1)

    def test_out_of_range_rejected(self, z6):
        with pytest.raises(IndexOutOfRange):
            elem_gen(z6, 3, 1, 4, 1)


class TestWords:
    def test_replay_matches_letterwise_action(self, rng, z6):
        for _ in range(20):
            w = random_word(z6, 3, rng)
            v = tuple(z6.random(rng) for _ in range(3))
            assert w.apply_to_row(v) == w.replay().act_on_row(v)

    def test_inverse_roundtrip(self, rng, z6):
        for _ in range(20):
            w = random_word(z6, 4, rng)
            v = tuple(z6.random(rng) for _ in range(4))
            assert w.concat(w.inverse()).apply_to_row(v) == v
        assert w.concat(w.inverse()).replay() == MatrixR.identity(z6, 4)

    def test_replay_has_determinant_one(self, rng, z4, z6, dual_numbers):
        for ring in (z4, z6, dual_numbers):
            for _ in range(10):
                w = random_word(ring, 3, rng)
                assert w.replay().det() == ring.one

    def test_empty_word_fixes_rows(self, z6):
        v = UnimodularRow(z6, (1, 2, 3))
        assert act_row(v, ElementaryWord.empty(z6, 3)).entries == v.entries

    def test_witness_transport(self, rng, z6):
        base = UnimodularRow(z6, (1, 2, 3), witness=(5, 1, 0))
        for _ in range(200):
            w = random_word(z6, 3, rng)
            out = act_row(base, w)
            acc = z6.zero
            for a, b in zip(out.entries, out.witness):
                acc = z6.add(acc, z6.mul(a, b))
            assert acc == z6.one


class TestConjLetters:
    def test_congruent_to_identity_mod_ideal(self, rng, z4):
        ideal = Ideal(z4, [2])
        for _ in range(20):
            g = random_word(z4, 3, rng, length=3)
            i, j = rng.sample(range(1, 4), 2)
            letter = conj_letter(
                z4, 3, g, elem_letter(z4, 3, i, j, 2), ideal=ideal
            )
            mat = letter_matrix(z4, 3, letter)
            assert mat.scaled_diff_in_ideal(ideal)
            assert mat.det() == z4.one

    def test_parameter_outside_ideal_rejected(self, z4):
        ideal = Ideal(z4, [2])
        with pytest.raises(ValueError):
            conj_letter(
                z4, 3, ElementaryWord.empty(z4, 3),
                elem_letter(z4, 3, 1, 2, 1), ideal=ideal,
            )


class TestSerialization:
    def test_json_roundtrip_elem_and_symp(self, z4):
        w = ElementaryWord(
            z4,
            4,
            [symp_letter(z4, 4, 1, 3, 1), elem_letter(z4, 4, 1, 2, 3)],
        )
        assert ElementaryWord.from_json(w.to_json()) == w

    def test_json_roundtrip_conj(self, z4):
        ideal = Ideal(z4, [2])
        g = ElementaryWord(z4, 3, [elem_letter(z4, 3, 2, 1, 3)])
        w = ElementaryWord(
            z4, 3, [conj_letter(z4, 3, g, elem_letter(z4, 3, 1, 2, 2), ideal=ideal)]
        )
        back = ElementaryWord.from_json(w.to_json())
        assert back == w
        assert back.replay() == w.replay()

    def test_replay_is_bit_exact_validity(self, z6):
        w = ElementaryWord(z6, 3, [elem_letter(z6, 3, 1, 2, 4)])
        target = w.apply_to_row((1, 0, 0))
        tampered = ElementaryWord(z6, 3, [elem_letter(z6, 3, 1, 2, 5)])
        assert tampered.apply_to_row((1, 0, 0)) != target


class TestParameterMaps:
    def test_homomorphism_shadow(self, rng, z6):
        # reduction mod 2: Z/6 -> Z/2 as a payload map on a fixed word
        z2 = IntegersModRing(2)
        for _ in range(20):
            w = random_word(z6, 3, rng)
            v = tuple(z6.random(rng) for _ in range(3))
            mapped = map_word_parameters(w, z2, lambda p: p % 2)
            lhs = tuple(x % 2 for x in w.apply_to_row(v))
            rhs = mapped.apply_to_row(tuple(x % 2 for x in v))
            assert lhs == rhs
