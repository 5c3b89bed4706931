"""R[X] rows: evaluation, bounded witnesses, products, Jacobson reduction."""

import pytest

from umrow import (
    ElementaryWord,
    UnimodularRow,
    bounded_unimodular_solve,
    completion_check,
    elem_letter,
    euclidean_reduce_word,
    jacobson_radical,
    jacobson_reduce,
    poly_eval0,
    poly_ring,
    poly_row,
    specialization_consistent,
    vdk_product_poly,
)
from umrow.errors import CertificateInvalid, NotUnimodular
from umrow.polyext import eval0_word
from umrow.words import map_word_parameters


def random_poly_word(ring, n, rng, length=5, coeff_len=2):
    letters = []
    while len(letters) < length:
        i, j = rng.randrange(1, n + 1), rng.randrange(1, n + 1)
        if i == j:
            continue
        lam = ring._trim(
            [ring.base.random(rng) for _ in range(rng.randint(1, coeff_len))]
        )
        letters.append(elem_letter(ring, n, i, j, lam))
    return ElementaryWord(ring, n, letters)


class TestEval0:
    def test_constant_row(self, z4):
        row = poly_row(z4, [[3], [2], [1]])
        assert poly_eval0(row).entries == (3, 2, 1)

    def test_spec_examples(self, z4, f5):
        assert poly_eval0(poly_row(f5, [[0, 1], [1, 1], [0]])).entries == (0, 1, 0)
        assert poly_eval0(poly_row(z4, [[1, 2], [0, 2], [2]])).entries == (1, 0, 2)

    def test_homomorphism_shadow(self, rng, z6):
        # eval0(v . word) = eval0(v) . eval0(word)
        ring = poly_ring(z6)
        for _ in range(25):
            word = random_poly_word(ring, 3, rng)
            entries = tuple(ring.random(rng, max_degree=2) for _ in range(3))
            lhs = tuple(ring.eval0(x) for x in word.apply_to_row(entries))
            rhs = eval0_word(word).apply_to_row(tuple(ring.eval0(x) for x in entries))
            assert lhs == rhs


class TestBoundedSolve:
    def test_f5_example_degree_zero(self, f5):
        row = poly_row(f5, [[0, 1], [1, 1], [0]])
        wit = bounded_unimodular_solve(row, 0)
        assert wit == ((4,), (1,), ())

    def test_e1_any_bound(self, z4):
        row = poly_row(z4, [[1], [0], [0]])
        wit = bounded_unimodular_solve(row, 3)
        assert wit[0] == (1,)

    def test_x_and_2_over_z4_has_no_witness(self, z4):
        # (X, 2) reduces to (X, 0) over F2[X]: X*b1 never has constant term 1,
        # so there is no witness at any degree; the bounded answer is None
        row = poly_row(z4, [[0, 1], [2]])
        assert bounded_unimodular_solve(row, 1) is None
        assert bounded_unimodular_solve(row, 5) is None

    def test_witnesses_expand_to_one(self, rng, z4, z6):
        for base in (z4, z6):
            ring = poly_ring(base)
            found = 0
            while found < 20:
                entries = tuple(ring.random(rng, max_degree=1) for _ in range(3))
                row = UnimodularRow(ring, entries, check=False)
                wit = bounded_unimodular_solve(row, 3)
                if wit is None:
                    continue
                acc = ring.zero
                for a, b in zip(entries, wit):
                    acc = ring.add(acc, ring.mul(a, b))
                assert acc == ring.one
                found += 1

    def test_tiny_finite_base_fallback(self, dual_numbers):
        ring = poly_ring(dual_numbers)
        one = dual_numbers.one
        row = UnimodularRow(ring, [(one,), ()], check=False)
        wit = bounded_unimodular_solve(row, 0)
        assert wit is not None


class TestPolyProduct:
    def test_spec_example_z4(self, z4):
        ring = poly_ring(z4)
        v_rep = UnimodularRow(ring, [(1, 2), (0, 2), (3,)], check=False)
        w_rep = UnimodularRow(ring, [(1,), (0, 2), (3,)], check=False)
        out = vdk_product_poly(v_rep, w_rep)
        # w1 = 1 from the witness of w_rep: head (1+2X)+1 = 2+2X
        assert out.entries == ((1, 2), (), (3,))
        assert bounded_unimodular_solve(out, 3) is not None

    def test_identity_class_at_zero(self, z6):
        ring = poly_ring(z6)
        e1 = UnimodularRow(ring, [(1,), (), ()], check=False)
        w = UnimodularRow(ring, [(5,), (), ()], check=False)
        out = vdk_product_poly(e1, w)
        report = specialization_consistent(e1, w)
        assert report["consistent"]
        assert poly_eval0(out).is_unimodular()

    def test_specialization_random_pairs(self, rng, z4, z6):
        for base in (z4, z6):
            ring = poly_ring(base)
            done = 0
            while done < 10:
                tail = tuple(ring.random(rng, max_degree=1) for _ in range(2))
                v = UnimodularRow(ring, (ring.random(rng, max_degree=1),) + tail, check=False)
                w = UnimodularRow(ring, (ring.random(rng, max_degree=1),) + tail, check=False)
                if bounded_unimodular_solve(v, 3) is None:
                    continue
                if bounded_unimodular_solve(w, 3) is None:
                    continue
                report = specialization_consistent(v, w)
                assert report["consistent"]
                done += 1


class TestJacobson:
    def test_radical_values(self, z4, z6, f5, dual_numbers):
        assert jacobson_radical(z4).gens == (2,)
        assert jacobson_radical(z6).is_zero
        assert jacobson_radical(f5).is_zero
        rad = jacobson_radical(dual_numbers)
        assert [dual_numbers.format(g) for g in rad.gens] == ["t"]

    def test_quasi_regularity_of_members(self, z4):
        rad = jacobson_radical(z4)
        for x in rad.elements():
            for y in z4.elements():
                assert z4.unit_inverse(z4.add(z4.one, z4.mul(x, y))) is not None

    def test_reduction_pipeline_z4(self, z4):
        word = jacobson_reduce(UnimodularRow(z4, (3, 2, 2)))
        assert word.apply_to_row((3, 2, 2)) == (1, 0, 0)

    def test_reduction_over_semisimple_ring(self, z6):
        word = jacobson_reduce(UnimodularRow(z6, (5, 2, 3)))
        assert word.apply_to_row((5, 2, 3)) == (1, 0, 0)

    def test_reduction_rejects_non_unimodular(self, z4):
        with pytest.raises(NotUnimodular):
            jacobson_reduce(UnimodularRow(z4, (2, 0, 2)))

    def test_intermediate_row_congruent_mod_radical(self, z4):
        # after the lifted stage the row must be e1 mod J; rerun the stages
        from umrow.rings import QuotientRing
        from umrow.vdk import e1_orbit

        rad = jacobson_radical(z4)
        q = QuotientRing(z4, rad)
        row = (3, 2, 2)
        q_entries = tuple(q.rep(x) for x in row)
        orbit = e1_orbit(q, 3)
        lifted = map_word_parameters(
            orbit.certificate(q_entries).inverse(), z4, lambda p: p
        )
        mid = lifted.apply_to_row(row)
        jset = rad.element_set()
        assert z4.sub(mid[0], 1) in jset
        assert all(x in jset for x in mid[1:])


class TestEuclidean:
    def test_random_reductions(self, rng, f5):
        ring = poly_ring(f5)
        e1 = (ring.one, ring.zero, ring.zero)
        done = 0
        while done < 30:
            cand = random_poly_word(ring, 3, rng).apply_to_row(e1)
            if max((len(e) - 1 for e in cand if e), default=0) > 3:
                continue
            row = UnimodularRow(ring, cand, check=False)
            word = euclidean_reduce_word(row)
            assert word.apply_to_row(row.entries) == e1
            done += 1

    def test_rejects_non_unimodular(self, f5):
        ring = poly_ring(f5)
        row = UnimodularRow(ring, [(0, 1), (0, 0, 1), ()], check=False)
        with pytest.raises(NotUnimodular):
            euclidean_reduce_word(row)


class TestCompletion:
    def test_constant_row(self, f5):
        report = completion_check(poly_row(f5, [[3], [0], [1]]))
        assert report["verdict"] == "completable"

    def test_certified_path(self, f5):
        ring = poly_ring(f5)
        row = UnimodularRow(ring, [(0, 1), (1, 1), ()], check=False)
        cert = euclidean_reduce_word(row)
        report = completion_check(row, cert)
        assert report["verdict"] == "completable"

    def test_no_certificate_is_unknown(self, f5):
        ring = poly_ring(f5)
        row = UnimodularRow(ring, [(0, 1), (1, 1), ()], check=False)
        report = completion_check(row)
        assert report["verdict"] == "unknown"

    def test_invalid_certificate_rejected(self, f5):
        ring = poly_ring(f5)
        row = UnimodularRow(ring, [(0, 1), (1, 1), ()], check=False)
        bogus = ElementaryWord(ring, 3, [elem_letter(ring, 3, 1, 2, (1,))])
        with pytest.raises(CertificateInvalid):
            completion_check(row, bogus)
