"""Elementary words: replayable certificates of row and matrix equivalences.

A word is a sequence of letters over a fixed ring and size n:

  ("elem", i, j, lam)          the transvection I + lam*E_ij, i != j
  ("symp", i, j, z)            the elementary symplectic generator se_ij(z)
  ("conj", g_letters, core)    g * core * g^{-1} for an elementary word g

Indices are 1-based, matching the generator notation.  Replay is exact: a
certificate is valid iff replaying it reproduces the claimed target.
"""

from __future__ import annotations

from .errors import (
    CertificateInvalid,
    DiagonalIndex,
    IndexOutOfRange,
    MixedRings,
    SizeMismatch,
)
from .matrices import MatrixR
from .rings import ring_from_descriptor


def sigma_pair(k):
    """The pairing involution on 1-based indices: 2i <-> 2i-1."""
    return k - 1 if k % 2 == 0 else k + 1


def elem_letter(ring, n, i, j, lam):
    if i == j:
        raise DiagonalIndex(f"i = j = {i}")
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexOutOfRange(f"indices ({i},{j}) for size {n}")
    return ("elem", i, j, ring.coerce(lam))


def symp_letter(ring, n, i, j, z):
    if n % 2:
        raise SizeMismatch("symplectic letters need even size")
    if i == j:
        raise DiagonalIndex(f"i = j = {i}")
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexOutOfRange(f"indices ({i},{j}) for size {n}")
    return ("symp", i, j, ring.coerce(z))


def conj_letter(ring, n, g_letters, core, ideal=None):
    """Conjugated generator g * core * g^{-1}; core parameter must be in I."""
    if isinstance(g_letters, ElementaryWord):
        g_letters = g_letters.letters
    if ideal is not None and not ideal.contains(core[3]):
        raise ValueError("relative letter parameter lies outside the ideal")
    return ("conj", tuple(g_letters), core)


def _invert_letter(ring, letter):
    kind = letter[0]
    if kind == "conj":
        return ("conj", letter[1], _invert_letter(ring, letter[2]))
    return (kind, letter[1], letter[2], ring.neg(letter[3]))


_MATRIX_CACHE = {}


def letter_matrix(ring, n, letter):
    key = (ring, n, letter)
    cached = _MATRIX_CACHE.get(key)
    if cached is not None:
        return cached
    kind = letter[0]
    if kind == "elem":
        _, i, j, lam = letter
        rows = [list(r) for r in MatrixR.identity(ring, n).rows]
        rows[i - 1][j - 1] = ring.add(rows[i - 1][j - 1], lam)
        mat = MatrixR(ring, rows)
    elif kind == "symp":
        _, i, j, z = letter
        rows = [list(r) for r in MatrixR.identity(ring, n).rows]
        rows[i - 1][j - 1] = ring.add(rows[i - 1][j - 1], z)
        if i != sigma_pair(j):
            # minus (-1)^{i+j} z at position (sigma(j), sigma(i))
            k, l = sigma_pair(j), sigma_pair(i)
            if (i + j) % 2 == 0:
                rows[k - 1][l - 1] = ring.sub(rows[k - 1][l - 1], z)
            else:
                rows[k - 1][l - 1] = ring.add(rows[k - 1][l - 1], z)
        mat = MatrixR(ring, rows)
    elif kind == "conj":
        _, g_letters, core = letter
        g = ElementaryWord(ring, n, g_letters)
        mat = g.replay().mul(letter_matrix(ring, n, core)).mul(g.inverse().replay())
    else:
        raise ValueError(f"unknown letter kind {kind!r}")
    _MATRIX_CACHE[key] = mat
    return mat


def apply_letter_to_row(ring, n, entries, letter):
    kind = letter[0]
    if kind == "elem":
        _, i, j, lam = letter
        i -= 1
        j -= 1
        vj = ring.add(entries[j], ring.mul(entries[i], lam))
        return entries[:j] + (vj,) + entries[j + 1 :]
    if kind == "symp":
        _, i, j, z = letter
        vj = ring.add(entries[j - 1], ring.mul(entries[i - 1], z))
        if i == sigma_pair(j):
            return entries[: j - 1] + (vj,) + entries[j:]
        k, l = sigma_pair(j), sigma_pair(i)
        # second update reads sigma(j) and writes sigma(i); the targets are
        # disjoint from the sources, so both use the original entries
        delta = ring.mul(entries[k - 1], z)
        if (i + j) % 2 == 0:
            vl = ring.sub(entries[l - 1], delta)
        else:
            vl = ring.add(entries[l - 1], delta)
        out = list(entries)
        out[j - 1] = vj
        out[l - 1] = vl
        return tuple(out)
    return letter_matrix(ring, n, letter).act_on_row(entries)


def map_word_parameters(word, target_ring, fn):
    """Copy a word onto `target_ring`, mapping every parameter through fn.

    When fn is a ring homomorphism on payloads, replay commutes with the
    entrywise map (the letters are polynomial in their parameters).
    """

    def map_letter(letter):
        if letter[0] == "conj":
            return (
                "conj",
                tuple(map_letter(l) for l in letter[1]),
                map_letter(letter[2]),
            )
        return (letter[0], letter[1], letter[2], target_ring.coerce(fn(letter[3])))

    return ElementaryWord(
        target_ring, word.n, tuple(map_letter(l) for l in word.letters)
    )


class ElementaryWord:
    """A replayable sequence of generator letters."""

    __slots__ = ("ring", "n", "letters")

    def __init__(self, ring, n, letters=()):
        self.ring = ring
        self.n = n
        self.letters = tuple(letters)

    @classmethod
    def empty(cls, ring, n):
        return cls(ring, n)

    def concat(self, other):
        if other.ring != self.ring or other.n != self.n:
            raise MixedRings("concatenating words over different contexts")
        return ElementaryWord(self.ring, self.n, self.letters + other.letters)

    def __mul__(self, other):
        return self.concat(other)

    def append(self, letter):
        return ElementaryWord(self.ring, self.n, self.letters + (letter,))

    def inverse(self):
        letters = tuple(
            _invert_letter(self.ring, l) for l in reversed(self.letters)
        )
        return ElementaryWord(self.ring, self.n, letters)

    def replay(self):
        """The product matrix of all letters, in order."""
        rows = MatrixR.identity(self.ring, self.n).rows
        for letter in self.letters:
            rows = tuple(
                apply_letter_to_row(self.ring, self.n, row, letter) for row in rows
            )
        return MatrixR(self.ring, rows)

    def apply_to_row(self, entries):
        entries = tuple(entries)
        if len(entries) != self.n:
            raise SizeMismatch(f"row length {len(entries)} vs word size {self.n}")
        for letter in self.letters:
            entries = apply_letter_to_row(self.ring, self.n, entries, letter)
        return entries

    def transport_witness(self, witness):
        """Column transport: witness of v becomes a witness of v*replay()."""
        ring = self.ring
        col = tuple(witness)
        for letter in self.letters:
            if letter[0] == "elem":
                _, i, j, lam = letter
                # (I + lam E_ij)^{-1} applied on the left subtracts lam*b_j
                # from b_i
                vi = ring.sub(col[i - 1], ring.mul(lam, col[j - 1]))
                col = col[: i - 1] + (vi,) + col[i:]
            else:
                inv = letter_matrix(ring, self.n, _invert_letter(ring, letter))
                col = inv.act_on_column(col)
        return col

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        return (
            isinstance(other, ElementaryWord)
            and self.ring == other.ring
            and self.n == other.n
            and self.letters == other.letters
        )

    def __hash__(self):
        return hash((self.ring, self.n, self.letters))

    def __repr__(self):
        return f"<word of {len(self.letters)} letters over {self.ring.name()}>"

    # -- serialization -------------------------------------------------------

    def _letter_json(self, letter):
        ring = self.ring
        kind = letter[0]
        if kind == "elem":
            return {
                "kind": "elem",
                "i": letter[1],
                "j": letter[2],
                "lambda": ring.payload_to_json(letter[3]),
            }
        if kind == "symp":
            return {
                "kind": "symp",
                "i": letter[1],
                "j": letter[2],
                "z": ring.payload_to_json(letter[3]),
            }
        _, g_letters, core = letter
        return {
            "kind": "conj",
            "g": [self._letter_json(l) for l in g_letters],
            "core": core[0],
            "i": core[1],
            "j": core[2],
            "x": ring.payload_to_json(core[3]),
        }

    def to_json(self):
        return {
            "ring": self.ring.descriptor(),
            "n": self.n,
            "letters": [self._letter_json(l) for l in self.letters],
        }

    @classmethod
    def _letter_from_json(cls, ring, n, obj):
        kind = obj.get("kind")
        if kind == "elem":
            return elem_letter(ring, n, obj["i"], obj["j"], ring.payload_from_json(obj["lambda"]))
        if kind == "symp":
            return symp_letter(ring, n, obj["i"], obj["j"], ring.payload_from_json(obj["z"]))
        if kind == "conj":
            g = tuple(cls._letter_from_json(ring, n, l) for l in obj["g"])
            core_kind = obj.get("core", "elem")
            x = ring.payload_from_json(obj["x"])
            if core_kind == "elem":
                core = elem_letter(ring, n, obj["i"], obj["j"], x)
            else:
                core = symp_letter(ring, n, obj["i"], obj["j"], x)
            return ("conj", g, core)
        raise CertificateInvalid(f"unknown letter kind {kind!r}")

    @classmethod
    def from_json(cls, obj, ring=None):
        if ring is None:
            ring = ring_from_descriptor(obj["ring"])
        n = int(obj["n"])
        letters = tuple(cls._letter_from_json(ring, n, l) for l in obj["letters"])
        return cls(ring, n, letters)
