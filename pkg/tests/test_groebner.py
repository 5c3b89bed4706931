"""The polynomial engine behind PolyQuotient: division, bases, cofactors."""

import random

from umrow.groebner import PolyContext, grevlex_key


def rand_poly(ctx, rng, max_terms=4, max_deg=2):
    poly = ctx.zero
    for _ in range(rng.randint(1, max_terms)):
        mono = tuple(rng.randrange(max_deg + 1) for _ in range(ctx.nvars))
        poly = ctx.add(poly, {mono: rng.randrange(1, ctx.p)})
    return poly


class TestDivision:
    def test_division_identity(self):
        ctx = PolyContext(5, ["x", "y"])
        rng = random.Random(11)
        for _ in range(50):
            f = rand_poly(ctx, rng)
            divisors = [rand_poly(ctx, rng) for _ in range(2)]
            quots, rem = ctx.divmod_multi(f, divisors)
            rebuilt = rem
            for q, d in zip(quots, divisors):
                rebuilt = ctx.add(rebuilt, ctx.mul(q, d))
            assert rebuilt == f

    def test_remainder_fully_reduced(self):
        ctx = PolyContext(5, ["x", "y"])
        rng = random.Random(12)
        for _ in range(30):
            f = rand_poly(ctx, rng)
            divisors = [rand_poly(ctx, rng)]
            _, rem = ctx.divmod_multi(f, divisors)
            lead = ctx.lead(divisors[0])[0]
            for mono in rem:
                assert not all(a <= b for a, b in zip(lead, mono))


class TestGroebner:
    def test_nf_idempotent_on_the_circle(self):
        ctx = PolyContext(5, ["x", "y"])
        basis = ctx.groebner([ctx.parse("x^2+y^2-1")])
        rng = random.Random(13)
        for _ in range(40):
            f = rand_poly(ctx, rng, max_deg=3)
            nf1 = ctx.nf(f, basis)
            assert ctx.nf(nf1, basis) == nf1

    def test_nf_respects_ideal_membership(self):
        ctx = PolyContext(2, ["t"])
        basis = ctx.groebner([ctx.parse("t^2")])
        assert ctx.nf(ctx.parse("t^2"), basis) == ctx.zero
        assert ctx.nf(ctx.parse("t^3+t^2"), basis) == ctx.zero
        assert ctx.nf(ctx.parse("t+1"), basis) == ctx.parse("t+1")

    def test_s_polynomial_closure(self):
        # classic two-generator example: the basis must reduce all s-pairs
        ctx = PolyContext(7, ["x", "y"])
        gens = [ctx.parse("x^2+y"), ctx.parse("x*y+1")]
        basis = ctx.groebner(gens)
        for g in gens:
            assert ctx.nf(g, basis) == ctx.zero

    def test_standard_monomials_finite(self):
        ctx = PolyContext(2, ["t"])
        basis = ctx.groebner([ctx.parse("t^2")])
        std = ctx.standard_monomials(basis)
        assert std == [(0,), (1,)]

    def test_standard_monomials_infinite(self):
        ctx = PolyContext(5, ["x", "y"])
        basis = ctx.groebner([ctx.parse("x^2+y^2-1")])
        assert ctx.standard_monomials(basis) is None


class TestCofactors:
    def test_membership_certificates_recombine(self):
        ctx = PolyContext(5, ["x", "y"])
        rng = random.Random(14)
        for _ in range(25):
            gens = [rand_poly(ctx, rng) for _ in range(3)]
            basis, reps = ctx.groebner_with_reps(gens)
            for g, rep in zip(basis, reps):
                rebuilt = ctx.zero
                for cof, gen in zip(rep, gens):
                    rebuilt = ctx.add(rebuilt, ctx.mul(cof, gen))
                assert rebuilt == g

    def test_unit_ideal_detection(self):
        ctx = PolyContext(5, ["x", "y"])
        gens = [ctx.parse("x"), ctx.parse("y"), ctx.parse("x+y+1")]
        basis, reps = ctx.groebner_with_reps(gens)
        k = ctx.constant_member(basis)
        assert k is not None
        rebuilt = ctx.zero
        for cof, gen in zip(reps[k], gens):
            rebuilt = ctx.add(rebuilt, ctx.mul(cof, gen))
        assert rebuilt == basis[k]


class TestText:
    def test_parse_format_roundtrip(self):
        ctx = PolyContext(5, ["x", "y"])
        rng = random.Random(15)
        for _ in range(40):
            f = rand_poly(ctx, rng, max_deg=3)
            assert ctx.parse(ctx.format(f)) == f

    def test_negative_and_implicit_product(self):
        ctx = PolyContext(5, ["x", "y"])
        assert ctx.parse("-x") == ctx.scale(ctx.var(0), 4)
        assert ctx.parse("2x") == ctx.parse("2*x")
        assert ctx.parse("(x+y)^2") == ctx.parse("x^2+2*x*y+y^2")

    def test_grevlex_order_examples(self):
        # x > y, x^2 y > x y^2, ties broken by the rightmost difference
        x, y = (1, 0), (0, 1)
        assert grevlex_key(x) > grevlex_key(y)
        assert grevlex_key((2, 1)) > grevlex_key((1, 2))
