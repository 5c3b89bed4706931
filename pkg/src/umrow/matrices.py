"""Exact square matrices over a ring backend."""

from __future__ import annotations

from .errors import MixedRings, SizeMismatch


class MatrixR:
    """Immutable n x n matrix of ring payloads."""

    __slots__ = ("ring", "n", "rows")

    def __init__(self, ring, rows):
        self.ring = ring
        self.rows = tuple(tuple(r) for r in rows)
        self.n = len(self.rows)
        if any(len(r) != self.n for r in self.rows):
            raise SizeMismatch("matrix must be square")

    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero, ring.one
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_elements(cls, ring, rows):
        return cls(ring, [[ring.coerce(x) for x in row] for row in rows])

    def entry(self, i, j):
        return self.rows[i][j]

    def mul(self, other):
        if self.ring != other.ring:
            raise MixedRings("matrices over different rings")
        if self.n != other.n:
            raise SizeMismatch(f"{self.n} vs {other.n}")
        ring = self.ring
        n = self.n
        bcols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            new = []
            for col in bcols:
                acc = ring.zero
                for a, b in zip(row, col):
                    acc = ring.add(acc, ring.mul(a, b))
                new.append(acc)
            out.append(new)
        return MatrixR(ring, out)

    def act_on_row(self, entries):
        """Right action: returns entries * self as a payload tuple."""
        if len(entries) != self.n:
            raise SizeMismatch(f"row length {len(entries)} vs size {self.n}")
        ring = self.ring
        out = []
        for j in range(self.n):
            acc = ring.zero
            for i in range(self.n):
                acc = ring.add(acc, ring.mul(entries[i], self.rows[i][j]))
            out.append(acc)
        return tuple(out)

    def act_on_column(self, entries):
        """Left action on a column vector: self * entries."""
        if len(entries) != self.n:
            raise SizeMismatch(f"column length {len(entries)} vs size {self.n}")
        ring = self.ring
        out = []
        for row in self.rows:
            acc = ring.zero
            for a, b in zip(row, entries):
                acc = ring.add(acc, ring.mul(a, b))
            out.append(acc)
        return tuple(out)

    def transpose(self):
        return MatrixR(self.ring, zip(*self.rows))

    def det(self):
        """Exact determinant by cofactor expansion (small sizes)."""
        return _det(self.ring, self.rows)

    def scaled_diff_in_ideal(self, ideal):
        """True when every entry of (self - I) lies in the ideal."""
        ring = self.ring
        for i in range(self.n):
            for j in range(self.n):
                want = ring.one if i == j else ring.zero
                if not ideal.contains(ring.sub(self.rows[i][j], want)):
                    return False
        return True

    def __eq__(self, other):
        return (
            isinstance(other, MatrixR)
            and self.ring == other.ring
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ring, self.rows))

    def __repr__(self):
        body = "; ".join(
            " ".join(self.ring.format(x) for x in row) for row in self.rows
        )
        return f"[{body}]"

    def to_json(self):
        return [[self.ring.payload_to_json(x) for x in row] for row in self.rows]

    @classmethod
    def from_json(cls, ring, rows):
        return cls(ring, [[ring.payload_from_json(x) for x in row] for row in rows])


def _det(ring, rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return ring.sub(
            ring.mul(rows[0][0], rows[1][1]), ring.mul(rows[0][1], rows[1][0])
        )
    acc = ring.zero
    minor_rows = rows[1:]
    for j in range(n):
        c = rows[0][j]
        if c == ring.zero:
            continue
        minor = [
            [row[k] for k in range(n) if k != j] for row in minor_rows
        ]
        term = ring.mul(c, _det(ring, minor))
        acc = ring.add(acc, term) if j % 2 == 0 else ring.sub(acc, term)
    return acc
