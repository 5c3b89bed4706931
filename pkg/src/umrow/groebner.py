"""Multivariate polynomials over a prime field and Buchberger's algorithm.

Polynomials are dicts mapping exponent tuples to nonzero coefficients in
[1, p).  The monomial order is degrevlex throughout; `grevlex_key` turns a
monomial into a sortable key so `max` picks the leading monomial.

Two Groebner entry points are provided: `groebner` returns the reduced
basis (used for canonical normal forms), and `groebner_with_reps` tracks a
representation of every basis element as a combination of the input
generators, so that ideal-membership answers come with explicit cofactors.
"""

from __future__ import annotations

import re

Mono = tuple
Poly = dict


def grevlex_key(mono):
    return (sum(mono), tuple(-e for e in reversed(mono)))


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True when a | b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class PolyContext:
    """Arithmetic for polynomials in fixed variables over F_p."""

    def __init__(self, p, names):
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        self.p = p
        self.names = tuple(names)
        self.nvars = len(self.names)
        self.zero = {}
        self.one = {(0,) * self.nvars: 1}

    def const(self, c):
        c %= self.p
        return {} if c == 0 else {(0,) * self.nvars: c}

    def var(self, k):
        mono = tuple(1 if i == k else 0 for i in range(self.nvars))
        return {mono: 1}

    def inv(self, c):
        return pow(c, self.p - 2, self.p)

    def add(self, f, g):
        out = dict(f)
        for m, c in g.items():
            s = (out.get(m, 0) + c) % self.p
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return out

    def neg(self, f):
        return {m: self.p - c for m, c in f.items()}

    def sub(self, f, g):
        return self.add(f, self.neg(g))

    def scale(self, f, c):
        c %= self.p
        if c == 0:
            return {}
        return {m: (v * c) % self.p for m, v in f.items()}

    def mul_term(self, f, mono, c):
        c %= self.p
        if c == 0:
            return {}
        return {mono_mul(m, mono): (v * c) % self.p for m, v in f.items()}

    def mul(self, f, g):
        out = {}
        for m1, c1 in f.items():
            for m2, c2 in g.items():
                m = mono_mul(m1, m2)
                s = (out.get(m, 0) + c1 * c2) % self.p
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return out

    def lead(self, f):
        m = max(f, key=grevlex_key)
        return m, f[m]

    def divmod_multi(self, f, divisors):
        """Full division: f = sum(q_k * divisors[k]) + r, no term of r
        divisible by any leading monomial of the divisors."""
        quots = [dict() for _ in divisors]
        rem = {}
        work = dict(f)
        leads = [self.lead(d) if d else None for d in divisors]
        while work:
            m, c = self.lead(work)
            for k, ld in enumerate(leads):
                if ld is None:
                    continue
                lm, lc = ld
                if mono_divides(lm, m):
                    qm = mono_div(m, lm)
                    qc = (c * self.inv(lc)) % self.p
                    qk = quots[k]
                    qk[qm] = (qk.get(qm, 0) + qc) % self.p
                    work = self.sub(work, self.mul_term(divisors[k], qm, qc))
                    break
            else:
                rem[m] = c
                del work[m]
        return quots, rem

    def nf(self, f, basis):
        return self.divmod_multi(f, basis)[1]

    def _spair(self, f, g):
        lmf, lcf = self.lead(f)
        lmg, lcg = self.lead(g)
        lcm = mono_lcm(lmf, lmg)
        uf = (mono_div(lcm, lmf), self.inv(lcf))
        ug = (mono_div(lcm, lmg), self.inv(lcg))
        return uf, ug, lcm == mono_mul(lmf, lmg)

    def groebner(self, gens):
        """Reduced Groebner basis (monic, tail-reduced, sorted)."""
        basis = [dict(g) for g in gens if g]
        for k, g in enumerate(basis):
            _, lc = self.lead(g)
            basis[k] = self.scale(g, self.inv(lc))
        pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
        while pairs:
            i, j = pairs.pop(0)
            uf, ug, coprime = self._spair(basis[i], basis[j])
            if coprime:
                continue
            s = self.sub(
                self.mul_term(basis[i], *uf), self.mul_term(basis[j], *ug)
            )
            r = self.nf(s, basis)
            if r:
                _, lc = self.lead(r)
                r = self.scale(r, self.inv(lc))
                basis.append(r)
                pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))
        return self._reduce_basis(basis)

    def _reduce_basis(self, basis):
        # Minimal basis first: a proper divisor has strictly smaller degree,
        # so ascending grevlex order meets divisors before multiples.
        basis = sorted(basis, key=lambda f: grevlex_key(self.lead(f)[0]))
        minimal = []
        for g in basis:
            lm = self.lead(g)[0]
            if any(mono_divides(self.lead(h)[0], lm) for h in minimal):
                continue
            minimal.append(g)
        reduced = []
        for k, g in enumerate(minimal):
            others = minimal[:k] + minimal[k + 1 :]
            r = self.nf(g, others) if others else g
            if r:
                _, lc = self.lead(r)
                reduced.append(self.scale(r, self.inv(lc)))
        reduced.sort(key=lambda f: grevlex_key(self.lead(f)[0]))
        return reduced

    def groebner_with_reps(self, gens):
        """Groebner basis plus cofactors over the inputs.

        Returns (basis, reps) with basis[k] = sum(reps[k][i] * gens[i]).
        The basis is not interreduced; it is only meant for membership
        certificates, not canonical forms.
        """
        basis = []
        reps = []
        ngen = len(gens)
        for i, g in enumerate(gens):
            if not g:
                continue
            _, lc = self.lead(g)
            c = self.inv(lc)
            basis.append(self.scale(g, c))
            rep = [self.zero] * ngen
            rep[i] = self.const(c)
            reps.append(rep)
        pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
        while pairs:
            i, j = pairs.pop(0)
            uf, ug, coprime = self._spair(basis[i], basis[j])
            if coprime:
                continue
            s = self.sub(
                self.mul_term(basis[i], *uf), self.mul_term(basis[j], *ug)
            )
            rep = [
                self.sub(
                    self.mul_term(reps[i][k], *uf), self.mul_term(reps[j][k], *ug)
                )
                for k in range(ngen)
            ]
            quots, r = self.divmod_multi(s, basis)
            for k in range(ngen):
                acc = rep[k]
                for t, q in enumerate(quots):
                    if q:
                        acc = self.sub(acc, self.mul(q, reps[t][k]))
                rep[k] = acc
            if r:
                _, lc = self.lead(r)
                c = self.inv(lc)
                basis.append(self.scale(r, c))
                reps.append([self.scale(rk, c) for rk in rep])
                pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))
        return basis, reps

    def constant_member(self, basis):
        """Index of a nonzero-constant basis element, or None."""
        unit_mono = (0,) * self.nvars
        for k, g in enumerate(basis):
            if len(g) == 1 and unit_mono in g:
                return k
        return None

    def standard_monomials(self, basis, cap=1 << 20):
        """Monomials outside the leading-term ideal, or None if infinite."""
        lms = [self.lead(g)[0] for g in basis]
        bounds = []
        for k in range(self.nvars):
            pure = [
                m[k]
                for m in lms
                if all(e == 0 for i, e in enumerate(m) if i != k)
            ]
            if not pure:
                return None
            bounds.append(min(pure))
        monos = [()]
        for b in bounds:
            monos = [m + (e,) for m in monos for e in range(b)]
        out = [
            m for m in monos if not any(mono_divides(lm, m) for lm in lms)
        ]
        if len(out) > cap:
            return None
        out.sort(key=grevlex_key)
        return out

    # -- text form ---------------------------------------------------------

    _TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|\^|\*|\+|\-|\(|\))")

    def parse(self, text):
        tokens = []
        pos = 0
        while pos < len(text):
            m = self._TOKEN.match(text, pos)
            if not m:
                if text[pos:].strip():
                    raise ValueError(f"bad polynomial literal: {text!r}")
                break
            tokens.append(m.group(1))
            pos = m.end()
        self._tokens = tokens
        self._tpos = 0
        poly = self._parse_expr()
        if self._tpos != len(tokens):
            raise ValueError(f"trailing input in polynomial literal: {text!r}")
        return poly

    def _peek(self):
        return self._tokens[self._tpos] if self._tpos < len(self._tokens) else None

    def _next(self):
        tok = self._peek()
        self._tpos += 1
        return tok

    def _parse_expr(self):
        sign = 1
        if self._peek() in ("+", "-"):
            sign = -1 if self._next() == "-" else 1
        acc = self._parse_term()
        if sign < 0:
            acc = self.neg(acc)
        while self._peek() in ("+", "-"):
            op = self._next()
            t = self._parse_term()
            acc = self.add(acc, t) if op == "+" else self.sub(acc, t)
        return acc

    def _parse_term(self):
        acc = self._parse_factor()
        while True:
            tok = self._peek()
            if tok == "*":
                self._next()
                acc = self.mul(acc, self._parse_factor())
            elif tok is not None and (tok.isdigit() or tok.isidentifier() or tok == "("):
                acc = self.mul(acc, self._parse_factor())
            else:
                return acc

    def _parse_factor(self):
        base = self._parse_atom()
        if self._peek() == "^":
            self._next()
            tok = self._next()
            if tok is None or not tok.isdigit():
                raise ValueError("exponent must be a nonnegative integer")
            out = self.one
            for _ in range(int(tok)):
                out = self.mul(out, base)
            return out
        return base

    def _parse_atom(self):
        tok = self._next()
        if tok is None:
            raise ValueError("unexpected end of polynomial literal")
        if tok == "(":
            inner = self._parse_expr()
            if self._next() != ")":
                raise ValueError("unbalanced parentheses")
            return inner
        if tok.isdigit():
            return self.const(int(tok))
        if tok in self.names:
            return self.var(self.names.index(tok))
        raise ValueError(f"unknown variable {tok!r}")

    def format(self, f):
        if not f:
            return "0"
        parts = []
        for m in sorted(f, key=grevlex_key, reverse=True):
            c = f[m]
            factors = []
            for k, e in enumerate(m):
                if e == 1:
                    factors.append(self.names[k])
                elif e > 1:
                    factors.append(f"{self.names[k]}^{e}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([str(c)] + factors))
        return "+".join(parts)

    def freeze(self, f):
        """Hashable canonical payload: terms sorted leading-first."""
        return tuple(
            (m, f[m]) for m in sorted(f, key=grevlex_key, reverse=True)
        )

    @staticmethod
    def thaw(payload):
        return dict(payload)
