"""Ring backends: canonical forms, units, witnesses, excision maps."""

import itertools

import pytest

from umrow import (
    ExcisionRing,
    Ideal,
    IntegerRing,
    IntegersModRing,
    PolyExtRing,
    PolyQuotientRing,
    PrimeFieldRing,
    ProductRing,
    QuotientRing,
    RingElement,
    enumerate_ring,
    gamma_section,
    is_unit,
    lex_least_witness,
    lift_row,
    omega_map,
    parse_ring,
    pi_map,
    ring_arith,
    ring_from_descriptor,
    solve_unimodular,
    um_rel_member,
)
from umrow.errors import EmptyRow, InfiniteRing, MixedRings, NotRelUnimodular


def all_backends(z4, z6, f5, dual_numbers, z2xz3, exc42):
    quotient = QuotientRing(IntegersModRing(8), Ideal(IntegersModRing(8), [4]))
    return [z4, z6, f5, dual_numbers, z2xz3, exc42, quotient]


class TestArithmetic:
    def test_modular_addition(self, z6):
        assert (z6.element(4) + z6.element(5)).payload == 3

    def test_excision_multiplication(self, exc42):
        # (1,2)*(3,2): cross term 1*2 + 3*2 + 2*2 = 12 = 0 mod 4
        a, b = exc42.element((1, 2)), exc42.element((3, 2))
        assert (a * b).payload == (3, 0)

    def test_multiplicative_identity(self, exc42, z6, dual_numbers):
        for ring in (exc42, z6, dual_numbers):
            for x in ring.elements():
                assert ring.mul(x, ring.one) == x

    def test_ring_arith_dispatch(self, z6):
        a, b = z6.element(4), z6.element(5)
        assert ring_arith(a, b, "add").payload == 3
        assert ring_arith(a, b, "mul").payload == 2
        assert ring_arith(a, b, "sub").payload == 5
        assert ring_arith(a, None, "neg").payload == 2

    def test_mixed_rings_rejected(self, z4, z6):
        with pytest.raises(MixedRings):
            z4.element(1) + z6.element(1)

    def test_ring_axioms_random_triples(
        self, rng, z4, z6, f5, dual_numbers, z2xz3, exc42
    ):
        for ring in all_backends(z4, z6, f5, dual_numbers, z2xz3, exc42):
            for _ in range(60):
                a, b, c = (ring.random(rng) for _ in range(3))
                assert ring.add(a, b) == ring.add(b, a)
                assert ring.mul(a, b) == ring.mul(b, a)
                assert ring.add(ring.add(a, b), c) == ring.add(a, ring.add(b, c))
                assert ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
                assert ring.mul(a, ring.add(b, c)) == ring.add(
                    ring.mul(a, b), ring.mul(a, c)
                )
                assert ring.add(a, ring.zero) == a
                assert ring.mul(a, ring.one) == a
                assert ring.add(a, ring.neg(a)) == ring.zero


class TestUnits:
    def test_unit_5_mod_6(self, z6):
        assert is_unit(z6.element(5)).payload == 5

    def test_one_is_unit_everywhere(self, z4, z6, f5, dual_numbers, z2xz3, exc42):
        for ring in all_backends(z4, z6, f5, dual_numbers, z2xz3, exc42):
            assert is_unit(ring.element(ring.one)).payload == ring.one

    def test_2_mod_6_is_not_a_unit(self, z6):
        assert is_unit(z6.element(2)) is None

    def test_inverse_pairs_to_one(self, rng, z4, z6, f5, dual_numbers, z2xz3, exc42):
        for ring in all_backends(z4, z6, f5, dual_numbers, z2xz3, exc42):
            for x in ring.elements():
                inv = ring.unit_inverse(x)
                if inv is not None:
                    assert ring.mul(x, inv) == ring.one

    def test_excision_unit_formula_matches_scan(self, exc42):
        # the closed-form inverse must agree with exhaustive search
        for x in exc42.elements():
            by_formula = exc42.unit_inverse(x)
            by_scan = next(
                (y for y in exc42.elements() if exc42.mul(x, y) == exc42.one), None
            )
            assert (by_formula is None) == (by_scan is None)


class TestSolveUnimodular:
    def test_witness_2_3_mod_6(self, z6):
        wit = solve_unimodular([z6.element(2), z6.element(3)])
        assert wit is not None
        total = sum((a * b for a, b in zip([z6.element(2), z6.element(3)], wit)),
                    z6.element(0))
        assert total.payload == 1

    def test_e1_row(self, z6):
        wit = solve_unimodular([z6.element(1), z6.element(0), z6.element(0)])
        assert [w.payload for w in wit] == [1, 0, 0]

    def test_non_unimodular(self, z6):
        assert solve_unimodular([z6.element(2), z6.element(4)]) is None

    def test_empty_row(self, z6):
        with pytest.raises(EmptyRow):
            solve_unimodular([])

    def test_oracle_equivalence_small(self, z4, z6, dual_numbers, z2xz3, exc42):
        # attainable-sum sets versus the backend solver, rows of length <= 2
        for ring in (z4, z6, dual_numbers, z2xz3, exc42):
            elems = ring.elements()
            for row in itertools.product(elems, repeat=2):
                attain = {ring.zero}
                for a in row:
                    mults = [ring.mul(a, w) for w in elems]
                    attain = {ring.add(s, m) for s in attain for m in mults}
                assert (ring.one in attain) == (ring.solve_row(row) is not None)

    def test_witnesses_verify_everywhere(self, rng, z4, z6, f5, dual_numbers,
                                         z2xz3, exc42):
        for ring in all_backends(z4, z6, f5, dual_numbers, z2xz3, exc42):
            for _ in range(40):
                row = tuple(ring.random(rng) for _ in range(3))
                wit = ring.solve_row(row)
                if wit is None:
                    continue
                acc = ring.zero
                for a, b in zip(row, wit):
                    acc = ring.add(acc, ring.mul(a, b))
                assert acc == ring.one

    def test_lex_least_witness_is_least(self, z6):
        wit = lex_least_witness(z6, (1, 2, 3))
        assert wit == (0, 2, 1)
        # scanning confirms nothing smaller pairs to 1
        for cand in itertools.product(range(6), repeat=3):
            if cand >= wit:
                break
            assert sum(a * b for a, b in zip((1, 2, 3), cand)) % 6 != 1

    def test_integers_backend(self):
        zz = IntegerRing()
        wit = zz.solve_row((6, 10, 15))
        assert wit is not None
        assert sum(a * b for a, b in zip((6, 10, 15), wit)) == 1
        assert zz.solve_row((6, 10)) is None


class TestRelativeRows:
    def test_member(self, z4):
        ideal = Ideal(z4, [2])
        row = [z4.element(x) for x in (3, 2, 2)]
        assert um_rel_member(row, ideal)

    def test_e1_member(self, z4):
        ideal = Ideal(z4, [2])
        row = [z4.element(x) for x in (1, 0, 0)]
        assert um_rel_member(row, ideal)

    def test_non_member(self, z4):
        ideal = Ideal(z4, [2])
        row = [z4.element(x) for x in (3, 1, 0)]
        assert not um_rel_member(row, ideal)


class TestExcisionMaps:
    def test_omega_example(self, exc42):
        assert omega_map(exc42.element((3, 2))).payload == 1

    def test_omega_after_gamma_is_identity(self, z4, exc42):
        for x in z4.elements():
            assert omega_map(gamma_section(z4.element(x), exc42)).payload == x

    def test_lift_row_pattern(self, z4, exc42):
        row = [z4.element(x) for x in (3, 2, 2)]
        lifted = lift_row(row, exc42)
        assert [e.payload for e in lifted] == [(1, 2), (0, 2), (0, 2)]
        # omega sends the lift back to the row
        assert [omega_map(e).payload for e in lifted] == [3, 2, 2]

    def test_lift_rejects_non_member(self, z4, exc42):
        with pytest.raises(NotRelUnimodular):
            lift_row([z4.element(x) for x in (3, 1, 0)], exc42)

    def test_omega_is_a_homomorphism(self, rng, exc42):
        for _ in range(100):
            a, b = exc42.random(rng), exc42.random(rng)
            ea, eb = RingElement(exc42, a), RingElement(exc42, b)
            assert omega_map(ea + eb) == omega_map(ea) + omega_map(eb)
            assert omega_map(ea * eb) == omega_map(ea) * omega_map(eb)

    def test_pi_kernel_is_zero_oplus_i(self, exc42):
        kernel = {x for x in exc42.elements() if pi_map(RingElement(exc42, x)).payload == 0}
        ideal_part = {(0, i) for i in exc42.ideal.elements()}
        assert kernel == ideal_part


class TestEnumeration:
    def test_counts(self, z2, z6, exc42):
        assert len(list(enumerate_ring(z2))) == 2
        assert len(list(enumerate_ring(z6))) == 6
        assert len(list(enumerate_ring(exc42))) == 8

    def test_deterministic_order(self, exc42):
        first = [e.payload for e in enumerate_ring(exc42)]
        second = [e.payload for e in enumerate_ring(exc42)]
        assert first == second

    def test_infinite_ring_raises(self):
        with pytest.raises(InfiniteRing):
            list(enumerate_ring(IntegerRing()))


class TestPolyQuotient:
    def test_normal_form_idempotent(self, rng):
        circle = PolyQuotientRing(5, ["x", "y"], ["x^2+y^2-1"])
        for _ in range(30):
            # random small polynomial, canonicalised on entry
            terms = {
                (rng.randrange(3), rng.randrange(3)): rng.randrange(1, 5)
                for _ in range(3)
            }
            p = circle.coerce(tuple(terms.items()))
            assert circle.coerce(p) == p

    def test_normal_form_compatible_with_ops(self, rng, dual_numbers):
        ring = dual_numbers
        for _ in range(40):
            a, b = ring.random(rng), ring.random(rng)
            # ops on canonical forms staying canonical
            assert ring.coerce(ring.add(a, b)) == ring.add(a, b)
            assert ring.coerce(ring.mul(a, b)) == ring.mul(a, b)

    def test_cardinality_and_elements(self, dual_numbers):
        assert dual_numbers.cardinality == 4
        shown = [dual_numbers.format(x) for x in dual_numbers.elements()]
        assert shown == ["0", "1", "t", "t+1"]

    def test_unit_certificate_on_infinite_quotient(self):
        circle = PolyQuotientRing(5, ["x", "y"], ["x^2+y^2-1"])
        # x is not a unit on the circle; x+2 might be, 1 surely is
        assert circle.unit_inverse(circle.parse("x")) is None
        assert circle.unit_inverse(circle.one) == circle.one
        wit = circle.solve_row((circle.parse("x"), circle.parse("y")))
        assert wit is not None

    def test_composite_coefficients_rejected(self):
        with pytest.raises(ValueError):
            PolyQuotientRing(6, ["t"], ["t^2"])


class TestDsl:
    def test_aliases(self):
        assert parse_ring("Z/6").descriptor() == {"kind": "IntegersMod", "n": 6}
        assert parse_ring("F5").descriptor() == {"kind": "PrimeField", "p": 5}
        assert parse_ring("Z").descriptor() == {"kind": "Integers"}
        assert parse_ring("Z/4[X]").kind == "PolyExt"

    def test_descriptor_roundtrip(self, z6, f5, dual_numbers, z2xz3, exc42):
        for ring in (z6, f5, dual_numbers, z2xz3, exc42):
            assert ring_from_descriptor(ring.descriptor()) == ring

    def test_json_dsl(self):
        ring = parse_ring(
            '{"kind":"Excision","base":{"kind":"IntegersMod","n":4},"ideal":["2"]}'
        )
        assert ring.cardinality == 8
        ring = parse_ring(
            '{"kind":"PolyQuotient","p":5,"vars":["x","y"],'
            '"relations":["x^2+y^2-1"]}'
        )
        assert not ring.is_finite

    def test_element_literals(self, z2xz3, exc42):
        assert z2xz3.parse("(1,2)") == (1, 2)
        assert exc42.parse("(3,2)") == (3, 2)
        with pytest.raises(ValueError):
            exc42.parse("(3,1)")  # 1 is not in the ideal (2)


class TestPolyExt:
    def test_divmod_and_gcd(self, f5):
        fx = PolyExtRing(f5, "X")
        a = fx.parse("X^3+2*X+1")
        b = fx.parse("X+1")
        q, r = fx.divmod(a, b)
        assert fx.add(fx.mul(q, b), r) == a
        g, s, t = fx.poly_xgcd(a, b)
        assert fx.add(fx.mul(s, a), fx.mul(t, b)) == g

    def test_unit_recognition_with_nilpotents(self, z4):
        z4x = PolyExtRing(z4, "X")
        u = z4x.parse("1+2*X")
        inv = z4x.unit_inverse(u)
        assert inv is not None and z4x.mul(u, inv) == z4x.one
        assert z4x.unit_inverse(z4x.parse("X")) is None
        assert z4x.unit_inverse(z4x.parse("1+X")) is None

    def test_json_coefficient_arrays(self, z4):
        z4x = PolyExtRing(z4, "X")
        p = z4x.payload_from_json(["1", "2", "3"])
        assert p == (1, 2, 3)
        assert z4x.payload_to_json(p) == ["1", "2", "3"]
