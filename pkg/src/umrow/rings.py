"""Computable commutative ring backends with canonical element forms.

Every backend stores elements as plain hashable payloads (ints, tuples,
frozen term lists) that are always in canonical form, so equality and
hashing are structural.  `RingElement` is a thin operator-overloading
wrapper around (ring, payload); the orbit searches work on raw payloads.

Supported ring kinds: Integers, IntegersMod(n), PrimeField(p),
PolyQuotient (F_p[x...]/relations via Groebner normal forms), Product,
Quotient (finite base), Excision (R + I with (r,i)(s,j) = (rs, rj+si+ij)),
and PolyExt (univariate R[X]).
"""

from __future__ import annotations

import itertools
import json
import re
from math import gcd

from .errors import (
    EmptyRow,
    InfiniteRing,
    MixedRings,
    NotRelUnimodular,
    UnsupportedBase,
)
from .groebner import PolyContext
from .linsolve import xgcd

_ENUM_CAP = 1_000_000


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Ring:
    """Payload-level ring interface; subclasses fill in the backend."""

    kind = "abstract"
    cardinality = None

    # -- arithmetic ---------------------------------------------------------

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    # -- structure ----------------------------------------------------------

    @property
    def is_finite(self):
        return self.cardinality is not None

    @property
    def is_field(self):
        return False

    def elements(self):
        if not self.is_finite:
            raise InfiniteRing(f"{self.name()} is not finite")
        if self.cardinality > _ENUM_CAP:
            raise UnsupportedBase(
                f"{self.name()} has {self.cardinality} elements; enumeration capped"
            )
        cached = getattr(self, "_elements", None)
        if cached is None:
            cached = tuple(self._enumerate())
            self._elements = cached
        return cached

    def _enumerate(self):
        raise NotImplementedError

    def index(self, a):
        table = getattr(self, "_index", None)
        if table is None:
            table = {x: k for k, x in enumerate(self.elements())}
            self._index = table
        return table[a]

    def sort_key(self, a):
        return self.index(a)

    def random(self, rng):
        elems = self.elements()
        return elems[rng.randrange(len(elems))]

    # -- units and witnesses -------------------------------------------------

    def unit_inverse(self, a):
        """Inverse payload when `a` is a unit, else None."""
        for x in self.elements():
            if self.mul(a, x) == self.one:
                return x
        return None

    def solve_row(self, entries):
        """Witness payloads (b_i) with sum(a_i*b_i) = 1, or None."""
        if not entries:
            raise EmptyRow("empty row")
        if not self.is_finite:
            raise UnsupportedBase(
                f"no unimodularity solver for {self.name()}"
            )
        # Attainable-sum dynamic programming with witness back-pointers;
        # deterministic because dicts keep insertion order.
        attain = {self.zero: ()}
        elems = self.elements()
        for a in entries:
            mults = [(w, self.mul(a, w)) for w in elems]
            new = {}
            for val, wit in attain.items():
                for w, aw in mults:
                    s = self.add(val, aw)
                    if s not in new:
                        new[s] = wit + (w,)
            attain = new
        return attain.get(self.one)

    # -- conversions ---------------------------------------------------------

    def coerce(self, x):
        raise NotImplementedError

    def parse(self, text):
        raise NotImplementedError

    def format(self, a):
        raise NotImplementedError

    def payload_to_json(self, a):
        return self.format(a)

    def payload_from_json(self, j):
        if isinstance(j, str):
            return self.parse(j)
        return self.coerce(j)

    def element(self, x):
        return RingElement(self, self.coerce(x))

    # -- identity ------------------------------------------------------------

    def descriptor(self):
        raise NotImplementedError

    def canonical_dsl(self):
        cached = getattr(self, "_dsl", None)
        if cached is None:
            cached = json.dumps(self.descriptor(), sort_keys=True, separators=(",", ":"))
            self._dsl = cached
        return cached

    def name(self):
        return self.canonical_dsl()

    def __eq__(self, other):
        return isinstance(other, Ring) and self.canonical_dsl() == other.canonical_dsl()

    def __hash__(self):
        return hash(self.canonical_dsl())

    def __repr__(self):
        return f"<ring {self.name()}>"


class RingElement:
    """An element as (ring, canonical payload)."""

    __slots__ = ("ring", "payload")

    def __init__(self, ring, payload):
        self.ring = ring
        self.payload = payload

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise MixedRings(f"{self.ring.name()} vs {other.ring.name()}")
            return other.payload
        return self.ring.coerce(other)

    def __add__(self, other):
        return RingElement(self.ring, self.ring.add(self.payload, self._coerce(other)))

    def __sub__(self, other):
        return RingElement(self.ring, self.ring.sub(self.payload, self._coerce(other)))

    def __mul__(self, other):
        return RingElement(self.ring, self.ring.mul(self.payload, self._coerce(other)))

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.payload))

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.payload == other.payload
        try:
            return self.payload == self.ring.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.payload))

    def __repr__(self):
        return f"{self.ring.format(self.payload)}"


class Ideal:
    """Finitely generated ideal with an exact membership test."""

    def __init__(self, ring, gens):
        self.ring = ring
        self.gens = tuple(ring.coerce(g) for g in gens)
        self._elems = None

    def elements(self):
        """All ideal elements, sorted; finite rings only."""
        if self._elems is None:
            ring = self.ring
            base = ring.elements()
            multiples = set()
            for g in self.gens:
                for r in base:
                    multiples.add(ring.mul(r, g))
            span = {ring.zero}
            frontier = [ring.zero]
            while frontier:
                x = frontier.pop()
                for m in multiples:
                    y = ring.add(x, m)
                    if y not in span:
                        span.add(y)
                        frontier.append(y)
            self._elems = tuple(sorted(span, key=ring.sort_key))
        return self._elems

    def element_set(self):
        return frozenset(self.elements())

    def contains(self, a):
        ring = self.ring
        if isinstance(ring, IntegerRing):
            g = 0
            for x in self.gens:
                g = gcd(g, x)
            return a == 0 if g == 0 else a % g == 0
        if isinstance(ring, PolyQuotientRing):
            return ring.ideal_normal_form(self, a) == ()
        if ring.is_finite:
            return a in self.element_set()
        raise UnsupportedBase(f"no membership test over {ring.name()}")

    @property
    def is_zero(self):
        return all(g == self.ring.zero for g in self.gens)

    def to_json(self):
        return [self.ring.payload_to_json(g) for g in self.gens]

    def __eq__(self, other):
        return (
            isinstance(other, Ideal)
            and self.ring == other.ring
            and self.gens == other.gens
        )

    def __hash__(self):
        return hash((self.ring, self.gens))

    def __repr__(self):
        gens = ",".join(self.ring.format(g) for g in self.gens)
        return f"({gens})"


# ---------------------------------------------------------------------------
# concrete backends
# ---------------------------------------------------------------------------


class IntegerRing(Ring):
    kind = "Integers"
    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def sort_key(self, a):
        return (abs(a), 0 if a >= 0 else 1)

    def random(self, rng):
        return rng.randint(-9, 9)

    def unit_inverse(self, a):
        return a if a in (1, -1) else None

    def solve_row(self, entries):
        if not entries:
            raise EmptyRow("empty row")
        g, coeffs = 0, []
        for a in entries:
            g2, s, t = xgcd(g, a)
            coeffs = [c * s for c in coeffs] + [t]
            g = g2
        return tuple(coeffs) if g == 1 else None

    def coerce(self, x):
        if isinstance(x, RingElement):
            if x.ring != self:
                raise MixedRings("element of another ring")
            return x.payload
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool) or not isinstance(x, int):
            raise ValueError(f"not an integer: {x!r}")
        return x

    def parse(self, text):
        return int(text.strip())

    def format(self, a):
        return str(a)

    def descriptor(self):
        return {"kind": "Integers"}

    def name(self):
        return "Z"


class IntegersModRing(Ring):
    kind = "IntegersMod"

    def __init__(self, n):
        if n < 2:
            raise ValueError("modulus must be >= 2")
        self.n = n
        self.zero = 0
        self.one = 1 % n
        self.cardinality = n

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    @property
    def is_field(self):
        return _is_prime(self.n)

    def _enumerate(self):
        return range(self.n)

    def sort_key(self, a):
        return a

    def index(self, a):
        return a

    def random(self, rng):
        return rng.randrange(self.n)

    def unit_inverse(self, a):
        g, s, _ = xgcd(a, self.n)
        return s % self.n if g == 1 else None

    def solve_row(self, entries):
        if not entries:
            raise EmptyRow("empty row")
        g, coeffs = self.n, []
        for a in entries:
            g2, s, t = xgcd(g, a)
            coeffs = [(c * s) % self.n for c in coeffs] + [t % self.n]
            g = g2
        return tuple(coeffs) if g == 1 else None

    def coerce(self, x):
        if isinstance(x, RingElement):
            if x.ring != self:
                raise MixedRings("element of another ring")
            return x.payload
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool) or not isinstance(x, int):
            raise ValueError(f"not an integer: {x!r}")
        return x % self.n

    def parse(self, text):
        return int(text.strip()) % self.n

    def format(self, a):
        return str(a)

    def descriptor(self):
        return {"kind": "IntegersMod", "n": self.n}

    def name(self):
        return f"Z/{self.n}"


class PrimeFieldRing(IntegersModRing):
    kind = "PrimeField"

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        super().__init__(p)

    @property
    def is_field(self):
        return True

    def unit_inverse(self, a):
        return pow(a, self.n - 2, self.n) if a else None

    def solve_row(self, entries):
        if not entries:
            raise EmptyRow("empty row")
        for k, a in enumerate(entries):
            if a:
                w = [0] * len(entries)
                w[k] = self.unit_inverse(a)
                return tuple(w)
        return None

    def descriptor(self):
        return {"kind": "PrimeField", "p": self.n}

    def name(self):
        return f"F{self.n}"


class PolyQuotientRing(Ring):
    """F_p[x_1..x_k] modulo relations, elements as Groebner normal forms."""

    kind = "PolyQuotient"

    def __init__(self, p, names, relations):
        if not _is_prime(p):
            raise ValueError("PolyQuotient coefficients must be a prime field")
        self.p = p
        self.ctx = PolyContext(p, names)
        rels = []
        for rel in relations:
            rels.append(self.ctx.parse(rel) if isinstance(rel, str) else dict(rel))
        self.relations = rels
        self.rel_basis = self.ctx.groebner(rels) if rels else []
        self.zero = ()
        self.one = self._canon(self.ctx.one)
        std = self.ctx.standard_monomials(self.rel_basis) if self.rel_basis else None
        self._std = std
        self.cardinality = (p ** len(std)) if std is not None else None
        self._ideal_bases = {}

    def _canon(self, poly):
        if self.rel_basis:
            poly = self.ctx.nf(poly, self.rel_basis)
        return self.ctx.freeze(poly)

    def add(self, a, b):
        return self._canon(self.ctx.add(dict(a), dict(b)))

    def neg(self, a):
        return self._canon(self.ctx.neg(dict(a)))

    def mul(self, a, b):
        return self._canon(self.ctx.mul(dict(a), dict(b)))

    @property
    def is_field(self):
        cached = getattr(self, "_field_flag", None)
        if cached is None:
            cached = self.is_finite and all(
                self.unit_inverse(x) is not None
                for x in self.elements()
                if x != self.zero
            )
            self._field_flag = cached
        return cached

    def _enumerate(self):
        # Base-p counter over the standard monomials, constants first.
        std = self._std
        for k in range(self.cardinality):
            poly = {}
            rem = k
            for mono in std:
                rem, digit = divmod(rem, self.p)
                if digit:
                    poly[mono] = digit
            yield self.ctx.freeze(poly)

    def sort_key(self, a):
        if self.is_finite:
            return self.index(a)
        from .groebner import grevlex_key

        return tuple((grevlex_key(m), c) for m, c in a)

    def unit_inverse(self, a):
        if a == self.zero:
            return None
        basis, reps = self.ctx.groebner_with_reps([dict(a)] + self.relations)
        k = self.ctx.constant_member(basis)
        if k is None:
            return None
        c = basis[k][(0,) * self.ctx.nvars]
        inv = self._canon(self.ctx.scale(reps[k][0], self.ctx.inv(c)))
        assert self.mul(a, inv) == self.one
        return inv

    def solve_row(self, entries):
        if not entries:
            raise EmptyRow("empty row")
        gens = [dict(a) for a in entries] + self.relations
        basis, reps = self.ctx.groebner_with_reps(gens)
        k = self.ctx.constant_member(basis)
        if k is None:
            return None
        c = basis[k][(0,) * self.ctx.nvars]
        cinv = self.ctx.inv(c)
        witness = tuple(
            self._canon(self.ctx.scale(reps[k][i], cinv)) for i in range(len(entries))
        )
        acc = self.zero
        for a, w in zip(entries, witness):
            acc = self.add(acc, self.mul(a, w))
        assert acc == self.one
        return witness

    def ideal_normal_form(self, ideal, a):
        """Normal form of `a` modulo (ideal gens) + relations."""
        key = ideal.gens
        basis = self._ideal_bases.get(key)
        if basis is None:
            basis = self.ctx.groebner([dict(g) for g in key] + self.relations)
            self._ideal_bases[key] = basis
        if not basis:
            return a
        return self.ctx.freeze(self.ctx.nf(dict(a), basis))

    def coerce(self, x):
        if isinstance(x, RingElement):
            if x.ring != self:
                raise MixedRings("element of another ring")
            return x.payload
        if isinstance(x, int):
            return self._canon(self.ctx.const(x))
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, dict):
            return self._canon(dict(x))
        if isinstance(x, tuple):
            return self._canon(dict(x))
        raise ValueError(f"cannot coerce {x!r}")

    def parse(self, text):
        return self._canon(self.ctx.parse(text))

    def format(self, a):
        return self.ctx.format(dict(a))

    def descriptor(self):
        return {
            "kind": "PolyQuotient",
            "p": self.p,
            "vars": list(self.ctx.names),
            "relations": [self.ctx.format(r) for r in self.relations],
        }

    def name(self):
        rels = ",".join(self.ctx.format(r) for r in self.relations)
        return f"F{self.p}[{','.join(self.ctx.names)}]/({rels})"


class ProductRing(Ring):
    kind = "Product"

    def __init__(self, factors):
        if not factors:
            raise ValueError("product of no rings")
        self.factors = tuple(factors)
        self.zero = tuple(f.zero for f in self.factors)
        self.one = tuple(f.one for f in self.factors)
        cards = [f.cardinality for f in self.factors]
        self.cardinality = None
        if all(c is not None for c in cards):
            card = 1
            for c in cards:
                card *= c
            self.cardinality = card

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(f.neg(x) for f, x in zip(self.factors, a))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def _enumerate(self):
        return itertools.product(*(f.elements() for f in self.factors))

    def unit_inverse(self, a):
        out = []
        for f, x in zip(self.factors, a):
            inv = f.unit_inverse(x)
            if inv is None:
                return None
            out.append(inv)
        return tuple(out)

    def solve_row(self, entries):
        if not entries:
            raise EmptyRow("empty row")
        per_factor = []
        for k, f in enumerate(self.factors):
            wit = f.solve_row([a[k] for a in entries])
            if wit is None:
                return None
            per_factor.append(wit)
        return tuple(zip(*per_factor))

    def coerce(self, x):
        if isinstance(x, RingElement):
            if x.ring != self:
                raise MixedRings("element of another ring")
            return x.payload
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, int):
            return tuple(f.coerce(x) for f in self.factors)
        if isinstance(x, (tuple, list)) and len(x) == len(self.factors):
            return tuple(f.coerce(v) for f, v in zip(self.factors, x))
        raise ValueError(f"cannot coerce {x!r}")

    def parse(self, text):
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"product element literal must be (..,..): {text!r}")
        parts = _split_top_level(text[1:-1])
        if len(parts) != len(self.factors):
            raise ValueError("wrong number of components")
        return tuple(f.parse(p) for f, p in zip(self.factors, parts))

    def format(self, a):
        return "(" + ",".join(f.format(x) for f, x in zip(self.factors, a)) + ")"

    def payload_to_json(self, a):
        return [f.payload_to_json(x) for f, x in zip(self.factors, a)]

    def payload_from_json(self, j):
        if isinstance(j, str):
            return self.parse(j)
        return tuple(f.payload_from_json(x) for f, x in zip(self.factors, j))

    def descriptor(self):
        return {"kind": "Product", "factors": [f.descriptor() for f in self.factors]}

    def name(self):
        return "Product(" + ",".join(f.name() for f in self.factors) + ")"


class QuotientRing(Ring):
    """Base ring modulo an ideal; canonical form is the least coset member."""

    kind = "Quotient"

    def __init__(self, base, ideal):
        if not base.is_finite:
            raise UnsupportedBase(
                "Quotient needs a finite base ring (PolyQuotient covers the "
                "polynomial case)"
            )
        if ideal.ring != base:
            raise MixedRings("ideal lives in a different ring")
        self.base = base
        self.ideal = ideal
        self._rep = {}
        self.zero = self.rep(base.zero)
        self.one = self.rep(base.one)
        self.cardinality = len(self.elements())

    def rep(self, x):
        cached = self._rep.get(x)
        if cached is None:
            base = self.base
            cached = min(
                (base.add(x, i) for i in self.ideal.elements()), key=base.sort_key
            )
            self._rep[x] = cached
        return cached

    def add(self, a, b):
        return self.rep(self.base.add(a, b))

    def neg(self, a):
        return self.rep(self.base.neg(a))

    def mul(self, a, b):
        return self.rep(self.base.mul(a, b))

    def elements(self):
        cached = getattr(self, "_elements", None)
        if cached is None:
            seen = []
            for x in self.base.elements():
                r = self.rep(x)
                if r == x:
                    seen.append(r)
            cached = tuple(seen)
            self._elements = cached
        return cached

    def lift(self, a):
        """Canonical preimage in the base ring (a section of the quotient)."""
        return a

    def coerce(self, x):
        return self.rep(self.base.coerce(x))

    def parse(self, text):
        return self.rep(self.base.parse(text))

    def format(self, a):
        return self.base.format(a)

    def payload_to_json(self, a):
        return self.base.payload_to_json(a)

    def payload_from_json(self, j):
        return self.rep(self.base.payload_from_json(j))

    def descriptor(self):
        return {
            "kind": "Quotient",
            "base": self.base.descriptor(),
            "ideal": self.ideal.to_json(),
        }

    def name(self):
        return f"{self.base.name()}/{self.ideal!r}"


class ExcisionRing(Ring):
    """Pairs (r, i) with i in I; multiplication (r,i)(s,j) = (rs, rj+si+ij)."""

    kind = "Excision"

    def __init__(self, base, ideal):
        if ideal.ring != base:
            raise MixedRings("ideal lives in a different ring")
        self.base = base
        self.ideal = ideal
        self.zero = (base.zero, base.zero)
        self.one = (base.one, base.zero)
        self.cardinality = None
        if base.is_finite:
            self.cardinality = base.cardinality * len(ideal.elements())

    def add(self, a, b):
        return (self.base.add(a[0], b[0]), self.base.add(a[1], b[1]))

    def neg(self, a):
        return (self.base.neg(a[0]), self.base.neg(a[1]))

    def mul(self, a, b):
        r, i = a
        s, j = b
        base = self.base
        cross = base.add(base.add(base.mul(r, j), base.mul(s, i)), base.mul(i, j))
        return (base.mul(r, s), cross)

    def _enumerate(self):
        for r in self.base.elements():
            for i in self.ideal.elements():
                yield (r, i)

    def unit_inverse(self, a):
        # (r,i) is a unit iff both projections r and r+i are units; then the
        # I-component of the inverse solves (r+i)*j = -(r^{-1})*i... spelled
        # out: j = -(r^{-1} * i * (r+i)^{-1}).
        r, i = a
        base = self.base
        s = base.unit_inverse(r)
        u = base.unit_inverse(base.add(r, i))
        if s is None or u is None:
            return None
        j = base.neg(base.mul(base.mul(s, i), u))
        inv = (s, j)
        assert self.mul(a, inv) == self.one
        return inv

    def coerce(self, x):
        if isinstance(x, RingElement):
            if x.ring != self:
                raise MixedRings("element of another ring")
            return x.payload
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, int):
            return (self.base.coerce(x), self.base.zero)
        if isinstance(x, (tuple, list)) and len(x) == 2:
            r = self.base.coerce(x[0])
            i = self.base.coerce(x[1])
            if not self.ideal.contains(i):
                raise ValueError(
                    f"second component {self.base.format(i)} is not in the ideal"
                )
            return (r, i)
        raise ValueError(f"cannot coerce {x!r}")

    def parse(self, text):
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"excision element literal must be (r,i): {text!r}")
        parts = _split_top_level(text[1:-1])
        if len(parts) != 2:
            raise ValueError("excision elements are pairs")
        return self.coerce((self.base.parse(parts[0]), self.base.parse(parts[1])))

    def format(self, a):
        return f"({self.base.format(a[0])},{self.base.format(a[1])})"

    def payload_to_json(self, a):
        return [self.base.payload_to_json(a[0]), self.base.payload_to_json(a[1])]

    def payload_from_json(self, j):
        if isinstance(j, str):
            return self.parse(j)
        return self.coerce(
            (self.base.payload_from_json(j[0]), self.base.payload_from_json(j[1]))
        )

    def descriptor(self):
        return {
            "kind": "Excision",
            "base": self.base.descriptor(),
            "ideal": self.ideal.to_json(),
        }

    def name(self):
        return f"Excision({self.base.name()},{self.ideal!r})"


class PolyExtRing(Ring):
    """Univariate polynomials over a base ring, coefficient tuples ascending."""

    kind = "PolyExt"

    def __init__(self, base, var="X"):
        if not var.isidentifier():
            raise ValueError(f"bad variable name {var!r}")
        self.base = base
        self.var = var
        self.zero = ()
        self.one = (base.one,)
        self.cardinality = None

    def _trim(self, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == self.base.zero:
            coeffs.pop()
        return tuple(coeffs)

    def add(self, a, b):
        base = self.base
        n = max(len(a), len(b))
        out = []
        for k in range(n):
            x = a[k] if k < len(a) else base.zero
            y = b[k] if k < len(b) else base.zero
            out.append(base.add(x, y))
        return self._trim(out)

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        base = self.base
        out = [base.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = base.add(out[i + j], base.mul(x, y))
        return self._trim(out)

    def degree(self, a):
        return len(a) - 1

    def const(self, c):
        return self._trim([self.base.coerce(c)])

    def x_power(self, k):
        return tuple([self.base.zero] * k + [self.base.one])

    def eval0(self, a):
        return a[0] if a else self.base.zero

    def random(self, rng, max_degree=2):
        return self._trim(
            [self.base.random(rng) for _ in range(rng.randint(0, max_degree) + 1)]
        )

    def unit_inverse(self, a):
        # Units have an invertible constant term and nilpotent higher
        # coefficients; recover the polynomial inverse from the coefficient
        # recurrence and verify exactly.
        if not a:
            return None
        base = self.base
        c0inv = base.unit_inverse(a[0])
        if c0inv is None:
            return None
        deg = len(a) - 1
        if deg == 0:
            return (c0inv,)
        cap = max(64, 8 * (deg + 1))
        v = [c0inv]
        zeros = 0
        for k in range(1, cap + 1):
            acc = base.zero
            for i in range(1, min(k, deg) + 1):
                acc = base.add(acc, base.mul(a[i], v[k - i]))
            vk = base.neg(base.mul(c0inv, acc))
            v.append(vk)
            zeros = zeros + 1 if vk == base.zero else 0
            if zeros >= deg:
                break
        inv = self._trim(v)
        return inv if self.mul(a, inv) == self.one else None

    def _polydivmod(self, a, b):
        # base must be a field
        base = self.base
        binv = base.unit_inverse(b[-1])
        rem = list(a)
        quot = [base.zero] * max(len(a) - len(b) + 1, 0)
        while len(rem) >= len(b):
            if rem[-1] == base.zero:
                rem.pop()
                continue
            k = len(rem) - len(b)
            c = base.mul(rem[-1], binv)
            quot[k] = c
            for i, bc in enumerate(b):
                rem[k + i] = base.sub(rem[k + i], base.mul(c, bc))
            rem.pop()
        return self._trim(quot), self._trim(rem)

    def divmod(self, a, b):
        """Polynomial division with remainder; base ring must be a field."""
        if not self.base.is_field:
            raise UnsupportedBase("polynomial division needs a field base")
        if not b:
            raise ZeroDivisionError("division by the zero polynomial")
        return self._polydivmod(a, b)

    def poly_xgcd(self, a, b):
        """(g, s, t) with s*a + t*b = g over a field base."""
        if not self.base.is_field:
            raise UnsupportedBase("polynomial gcd needs a field base")
        old_r, r = a, b
        old_s, s = self.one, self.zero
        old_t, t = self.zero, self.one
        while r:
            q, rem = self._polydivmod(old_r, r)
            old_r, r = r, rem
            old_s, s = s, self.sub(old_s, self.mul(q, s))
            old_t, t = t, self.sub(old_t, self.mul(q, t))
        return old_r, old_s, old_t

    def solve_row(self, entries):
        if not entries:
            raise EmptyRow("empty row")
        if not self.base.is_field:
            raise UnsupportedBase(
                "exact unimodularity over R[X] needs a field base; use the "
                "bounded-degree solver otherwise"
            )
        g, coeffs = self.zero, []
        for a in entries:
            g2, s, t = self.poly_xgcd(g, a)
            coeffs = [self.mul(c, s) for c in coeffs] + [t]
            g = g2
        if len(g) != 1:
            return None
        cinv = self.base.unit_inverse(g[0])
        if cinv is None:
            return None
        scale = (cinv,)
        return tuple(self.mul(c, scale) for c in coeffs)

    def coerce(self, x):
        if isinstance(x, RingElement):
            if x.ring != self:
                raise MixedRings("element of another ring")
            return x.payload
        if isinstance(x, int):
            return self.const(x)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (tuple, list)):
            return self._trim([self.base.coerce(c) for c in x])
        raise ValueError(f"cannot coerce {x!r}")

    def parse(self, text):
        text = text.strip()
        if text.startswith("["):
            return self.payload_from_json(json.loads(text))
        return self._parse_infix(text)

    _TERM = re.compile(
        r"\s*([+-]?)\s*(?:(\d+)\s*\*?\s*)?(?:([A-Za-z_][A-Za-z_0-9]*)\s*(?:\^\s*(\d+))?)?"
    )

    def _parse_infix(self, text):
        # Integer-coefficient terms only; compound bases use JSON arrays.
        pos = 0
        acc = self.zero
        while pos < len(text):
            m = self._TERM.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"bad polynomial literal: {text!r}")
            sign, coeff, name, power = m.groups()
            if coeff is None and name is None:
                raise ValueError(f"bad polynomial literal: {text!r}")
            if name is not None and name != self.var:
                raise ValueError(f"unknown variable {name!r}")
            c = int(coeff) if coeff is not None else 1
            if sign == "-":
                c = -c
            k = 0
            if name is not None:
                k = int(power) if power is not None else 1
            term = self.mul(self.const(c), self.x_power(k)) if k else self.const(c)
            acc = self.add(acc, term)
            pos = m.end()
        return acc

    def format(self, a):
        if not a:
            return "0"
        parts = []
        for k in range(len(a) - 1, -1, -1):
            c = a[k]
            if c == self.base.zero:
                continue
            cs = self.base.format(c)
            if any(ch in cs for ch in "+-") and len(cs) > 1 and not cs.startswith("("):
                cs = f"({cs})"
            if k == 0:
                parts.append(cs)
            else:
                xs = self.var if k == 1 else f"{self.var}^{k}"
                parts.append(xs if cs == "1" else f"{cs}*{xs}")
        return "+".join(parts)

    def payload_to_json(self, a):
        return [self.base.payload_to_json(c) for c in a]

    def payload_from_json(self, j):
        if isinstance(j, str):
            return self.parse(j)
        return self._trim([self.base.payload_from_json(c) for c in j])

    def sort_key(self, a):
        return (len(a), tuple(self.base.sort_key(c) for c in a))

    def descriptor(self):
        return {"kind": "PolyExt", "base": self.base.descriptor(), "var": self.var}

    def name(self):
        return f"{self.base.name()}[{self.var}]"


# ---------------------------------------------------------------------------
# DSL
# ---------------------------------------------------------------------------


def _split_top_level(text):
    parts, depth, start = [], 0, 0
    for k, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:k])
            start = k + 1
    parts.append(text[start:])
    return [p.strip() for p in parts]


def ring_from_descriptor(desc):
    """Build a ring from its JSON descriptor."""
    kind = desc.get("kind")
    if kind == "Integers":
        return IntegerRing()
    if kind == "IntegersMod":
        return IntegersModRing(int(desc["n"]))
    if kind == "PrimeField":
        return PrimeFieldRing(int(desc["p"]))
    if kind == "PolyQuotient":
        return PolyQuotientRing(int(desc["p"]), desc["vars"], desc["relations"])
    if kind == "Product":
        return ProductRing([ring_from_descriptor(f) for f in desc["factors"]])
    if kind == "Quotient":
        base = ring_from_descriptor(desc["base"])
        gens = [base.payload_from_json(g) for g in desc["ideal"]]
        return QuotientRing(base, Ideal(base, gens))
    if kind == "Excision":
        base = ring_from_descriptor(desc["base"])
        gens = [base.payload_from_json(g) for g in desc["ideal"]]
        return ExcisionRing(base, Ideal(base, gens))
    if kind == "PolyExt":
        return PolyExtRing(ring_from_descriptor(desc["base"]), desc.get("var", "X"))
    raise ValueError(f"unknown ring kind {kind!r}")


_ALIAS_ZMOD = re.compile(r"^Z/(\d+)$")
_ALIAS_FIELD = re.compile(r"^F(\d+)$")
_ALIAS_POLY = re.compile(r"^(.*)\[([A-Za-z_][A-Za-z_0-9]*)\]$")


def parse_ring(text):
    """Parse a ring from the JSON DSL or a shorthand alias (Z, Z/6, F5, Z/4[X])."""
    text = text.strip()
    if text.startswith("{"):
        return ring_from_descriptor(json.loads(text))
    if text == "Z":
        return IntegerRing()
    m = _ALIAS_ZMOD.match(text)
    if m:
        return IntegersModRing(int(m.group(1)))
    m = _ALIAS_FIELD.match(text)
    if m:
        return PrimeFieldRing(int(m.group(1)))
    m = _ALIAS_POLY.match(text)
    if m:
        return PolyExtRing(parse_ring(m.group(1)), m.group(2))
    raise ValueError(f"cannot parse ring {text!r}")


# ---------------------------------------------------------------------------
# element-level operations
# ---------------------------------------------------------------------------


def _same_ring(elems):
    rings = {e.ring for e in elems}
    if len(rings) != 1:
        raise MixedRings("operands from different rings")
    return next(iter(rings))


def ring_arith(a, b, op):
    """Arithmetic on elements: op in {add, mul, neg, sub}."""
    if op == "neg":
        return -a
    ring = _same_ring([a, b])
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "sub":
        return a - b
    raise ValueError(f"unknown op {op!r}")


def is_unit(a):
    """Inverse element when `a` is a unit, else None."""
    inv = a.ring.unit_inverse(a.payload)
    return None if inv is None else RingElement(a.ring, inv)


def solve_unimodular(row):
    """Witness elements (b_i) with sum(a_i*b_i) = 1, or None."""
    row = list(row)
    if not row:
        raise EmptyRow("empty row")
    ring = _same_ring(row)
    wit = ring.solve_row([a.payload for a in row])
    return None if wit is None else [RingElement(ring, w) for w in wit]


def lex_least_witness(ring, entries):
    """Least witness in enumeration order, coordinate by coordinate.

    Payload-level; finite rings only.  Returns None when the row is not
    unimodular.
    """
    if not entries:
        raise EmptyRow("empty row")
    if not ring.is_finite:
        raise InfiniteRing("lexicographic witness needs a finite ring")
    elems = ring.elements()
    r = len(entries)
    suffix = [None] * (r + 1)
    suffix[r] = frozenset([ring.zero])
    for k in range(r - 1, -1, -1):
        mults = {ring.mul(entries[k], w) for w in elems}
        suffix[k] = frozenset(
            ring.add(s, m) for s in suffix[k + 1] for m in mults
        )
    if ring.one not in suffix[0]:
        return None
    target = ring.one
    wit = []
    for k in range(r):
        for w in elems:
            rest = ring.sub(target, ring.mul(entries[k], w))
            if rest in suffix[k + 1]:
                wit.append(w)
                target = rest
                break
    assert target == ring.zero
    return tuple(wit)


def um_rel_member(row, ideal):
    """True iff the row is unimodular and congruent to e1 modulo the ideal."""
    row = list(row)
    if not row:
        raise EmptyRow("empty row")
    ring = _same_ring(row)
    if ideal.ring != ring:
        raise MixedRings("ideal over a different ring")
    entries = [a.payload for a in row]
    if not ideal.contains(ring.sub(entries[0], ring.one)):
        return False
    if any(not ideal.contains(a) for a in entries[1:]):
        return False
    return ring.solve_row(entries) is not None


def omega_map(x):
    """The retraction (r, i) -> r + i from an excision ring onto its base."""
    ring = x.ring
    if not isinstance(ring, ExcisionRing):
        raise MixedRings("omega expects an excision-ring element")
    r, i = x.payload
    return RingElement(ring.base, ring.base.add(r, i))


def pi_map(x):
    """The projection (r, i) -> r."""
    ring = x.ring
    if not isinstance(ring, ExcisionRing):
        raise MixedRings("pi expects an excision-ring element")
    return RingElement(ring.base, x.payload[0])


def gamma_section(x, excision):
    """The section r -> (r, 0) of omega."""
    if not isinstance(excision, ExcisionRing) or excision.base != x.ring:
        raise MixedRings("gamma expects a base element and its excision ring")
    return RingElement(excision, (x.payload, excision.base.zero))


def lift_row(row, excision):
    """Lift (1+i1, i2, ..., in) in Um(R, I) to ((1,i1),(0,i2),...) over R+I."""
    row = list(row)
    ring = _same_ring(row)
    if not isinstance(excision, ExcisionRing) or excision.base != ring:
        raise MixedRings("row and excision ring do not match")
    if not um_rel_member(row, excision.ideal):
        raise NotRelUnimodular("row is not congruent to e1 modulo the ideal")
    base = ring
    first = base.sub(row[0].payload, base.one)
    lifted = [RingElement(excision, (base.one, first))]
    lifted.extend(RingElement(excision, (base.zero, a.payload)) for a in row[1:])
    return lifted


def enumerate_ring(ring):
    """Every element of a finite ring exactly once, deterministic order."""
    return (RingElement(ring, p) for p in ring.elements())
