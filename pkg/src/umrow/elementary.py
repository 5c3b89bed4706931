"""Unimodular rows, the elementary action, orbit searches and Mennicke
symbols.

Orbit enumeration is breadth-first over generator letters with parent
pointers, so every discovered row carries a replayable word from the base
point.  Group membership for the Mennicke machinery runs a bidirectional
(meet-in-the-middle) right-multiplication BFS under a node budget; a Yes is
always replay-verified, a No is only reported when the forward closure is
exhausted.
"""

from __future__ import annotations

from collections import deque

from .errors import (
    BFSFailure,
    BudgetExceeded,
    CertificateInvalid,
    InfiniteRing,
    MixedRings,
    NotRelUnimodular,
    NotUnimodular,
    SizeMismatch,
)
from .matrices import MatrixR
from .rings import Ideal, RingElement, lex_least_witness, um_rel_member
from .words import (
    ElementaryWord,
    apply_letter_to_row,
    conj_letter,
    elem_letter,
    letter_matrix,
    symp_letter,
)

DEFAULT_ROW_BUDGET = 10**6
DEFAULT_MATRIX_BUDGET = 10**7
DEFAULT_CONJ_DEPTH = 2


class UnimodularRow:
    """A row of ring payloads with an optional witness (sum a_i b_i = 1)."""

    __slots__ = ("ring", "entries", "witness")

    def __init__(self, ring, entries, witness=None, check=True):
        self.ring = ring
        self.entries = tuple(ring.coerce(x) for x in entries)
        self.witness = None if witness is None else tuple(
            ring.coerce(x) for x in witness
        )
        if check and self.witness is not None:
            acc = ring.zero
            for a, b in zip(self.entries, self.witness):
                acc = ring.add(acc, ring.mul(a, b))
            if acc != ring.one:
                raise NotUnimodular("witness does not pair to 1")

    @classmethod
    def e1(cls, ring, n):
        return cls(
            ring,
            (ring.one,) + (ring.zero,) * (n - 1),
            (ring.one,) + (ring.zero,) * (n - 1),
        )

    @property
    def n(self):
        return len(self.entries)

    def elements(self):
        return [RingElement(self.ring, x) for x in self.entries]

    def solve_witness(self):
        """Attach a witness computed by the ring backend, or None."""
        wit = self.ring.solve_row(self.entries)
        if wit is None:
            return None
        return UnimodularRow(self.ring, self.entries, wit, check=False)

    def is_unimodular(self):
        if self.witness is not None:
            return True
        return self.ring.solve_row(self.entries) is not None

    def to_json(self):
        return [self.ring.payload_to_json(x) for x in self.entries]

    def __eq__(self, other):
        return (
            isinstance(other, UnimodularRow)
            and self.ring == other.ring
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.ring, self.entries))

    def __repr__(self):
        body = ",".join(self.ring.format(x) for x in self.entries)
        return f"({body})"


def elem_gen(ring, n, i, j, lam):
    """The elementary matrix I_n + lam*E_ij."""
    return letter_matrix(ring, n, elem_letter(ring, n, i, j, lam))


def act_row(row, word):
    """Right action row * replay(word), transporting the witness if present."""
    if row.ring != word.ring:
        raise MixedRings("row and word over different rings")
    if row.n != word.n:
        raise SizeMismatch(f"row length {row.n} vs word size {word.n}")
    entries = word.apply_to_row(row.entries)
    witness = None
    if row.witness is not None:
        witness = word.transport_witness(row.witness)
    return UnimodularRow(row.ring, entries, witness, check=False)


# ---------------------------------------------------------------------------
# generator sets
# ---------------------------------------------------------------------------


def additive_generators(ring):
    """A small set generating (R, +); e_ij over these still generates E_n."""
    gens = []
    span = {ring.zero}
    for x in ring.elements():
        if x in span:
            continue
        gens.append(x)
        frontier = list(span)
        while frontier:
            y = frontier.pop()
            z = ring.add(y, x)
            while z not in span:
                span.add(z)
                frontier.append(z)
                z = ring.add(z, x)
    return gens


def _scalar_range(ring, lambda_range):
    if lambda_range == "full":
        return [x for x in ring.elements() if x != ring.zero]
    if lambda_range == "generators":
        return additive_generators(ring)
    raise ValueError(f"unknown lambda range {lambda_range!r}")


def build_letters(
    ring,
    n,
    mode="E",
    ideal=None,
    lambda_range="full",
    conj_depth=DEFAULT_CONJ_DEPTH,
    budget=DEFAULT_ROW_BUDGET,
):
    """Generator letters for one of the four action modes.

    Modes: "E", "ESp", "E_rel", "ESp_rel".  Relative modes draw conjugators
    from all elementary words of length <= conj_depth and keep one letter
    per distinct conjugated matrix (subset mode: a verified subset of the
    true relative generator set).
    """
    if not ring.is_finite:
        raise InfiniteRing("generator enumeration needs a finite ring")
    symp = mode in ("ESp", "ESp_rel")
    if symp and n % 2:
        raise SizeMismatch("symplectic modes need even n")
    positions = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    make = symp_letter if symp else elem_letter
    if mode in ("E", "ESp"):
        scalars = _scalar_range(ring, lambda_range)
        return [make(ring, n, i, j, lam) for (i, j) in positions for lam in scalars]
    if mode not in ("E_rel", "ESp_rel"):
        raise ValueError(f"unknown mode {mode!r}")
    if ideal is None:
        raise ValueError("relative modes need an ideal")
    params = [x for x in ideal.elements() if x != ring.zero]
    base = [
        make(ring, n, i, j, lam)
        for (i, j) in positions
        for lam in _scalar_range(ring, lambda_range)
    ]
    # conjugator words up to the depth, deduplicated by their matrices
    conjugators = [()]
    seen = {MatrixR.identity(ring, n): ()}
    frontier = [()]
    for _ in range(conj_depth):
        new_frontier = []
        for letters in frontier:
            for letter in base:
                cand = letters + (letter,)
                mat = ElementaryWord(ring, n, cand).replay()
                if mat in seen:
                    continue
                seen[mat] = cand
                conjugators.append(cand)
                new_frontier.append(cand)
                if len(seen) > budget:
                    raise BudgetExceeded("conjugator enumeration over budget")
        frontier = new_frontier
    letters = []
    distinct = set()
    for g_letters in conjugators:
        for (i, j) in positions:
            for x in params:
                core = make(ring, n, i, j, x)
                letter = conj_letter(ring, n, g_letters, core, ideal=ideal)
                mat = letter_matrix(ring, n, letter)
                if mat in distinct:
                    continue
                distinct.add(mat)
                letters.append(letter)
                if len(letters) > budget:
                    raise BudgetExceeded("relative generator set over budget")
    return letters


# ---------------------------------------------------------------------------
# orbit BFS
# ---------------------------------------------------------------------------


class OrbitResult:
    """BFS output: members in discovery order plus replayable certificates."""

    def __init__(self, ring, n, root, parents, order, subset_mode=False):
        self.ring = ring
        self.n = n
        self.root = root
        self._parents = parents
        self.members = tuple(order)
        self.subset_mode = subset_mode

    def __len__(self):
        return len(self.members)

    def __contains__(self, entries):
        return tuple(entries) in self._parents

    def as_set(self):
        return frozenset(self.members)

    def certificate(self, entries):
        """Word carrying the root row to `entries`."""
        entries = tuple(entries)
        letters = []
        cur = entries
        while True:
            parent = self._parents[cur]
            if parent is None:
                break
            prev, letter = parent
            letters.append(letter)
            cur = prev
        letters.reverse()
        word = ElementaryWord(self.ring, self.n, letters)
        assert word.apply_to_row(self.root) == entries
        return word


def orbit_bfs(
    row,
    mode="E",
    ideal=None,
    lambda_range="full",
    conj_depth=DEFAULT_CONJ_DEPTH,
    budget=None,
    letters=None,
    target=None,
):
    """Breadth-first orbit of `row` under the chosen generator letters.

    With `target` set the search stops as soon as the target row is found
    (the result then holds a partial orbit).  Relative modes are budgeted
    and flagged subset-mode.
    """
    ring = row.ring
    if not ring.is_finite:
        raise InfiniteRing("orbit enumeration needs a finite ring")
    rel = mode in ("E_rel", "ESp_rel")
    if rel:
        if ideal is None:
            raise ValueError("relative modes need an ideal")
        if not um_rel_member(row.elements(), ideal):
            raise NotRelUnimodular("base row is not in Um(R, I)")
    if letters is None:
        letters = build_letters(
            ring,
            row.n,
            mode=mode,
            ideal=ideal,
            lambda_range=lambda_range,
            conj_depth=conj_depth,
            budget=budget if budget is not None else DEFAULT_ROW_BUDGET,
        )
    cap = budget if budget is not None else (DEFAULT_ROW_BUDGET if rel else None)
    root = row.entries
    parents = {root: None}
    order = [root]
    queue = deque([root])
    n = row.n
    while queue:
        cur = queue.popleft()
        for letter in letters:
            new = apply_letter_to_row(ring, n, cur, letter)
            if new in parents:
                continue
            parents[new] = (cur, letter)
            order.append(new)
            queue.append(new)
            if target is not None and new == target:
                return OrbitResult(ring, n, root, parents, order, subset_mode=True)
            if cap is not None and len(parents) > cap:
                raise BudgetExceeded(f"orbit BFS exceeded {cap} rows")
    return OrbitResult(ring, n, root, parents, order, subset_mode=rel)


class Decision:
    """Outcome of a budgeted search: yes (with certificate), no, or unknown."""

    __slots__ = ("status", "word", "reason")

    def __init__(self, status, word=None, reason=""):
        self.status = status
        self.word = word
        self.reason = reason

    @property
    def is_yes(self):
        return self.status == "yes"

    def __repr__(self):
        return f"<{self.status}{': ' + self.reason if self.reason else ''}>"


def same_orbit(v, w, mode="E", ideal=None, budget=None, lambda_range="full"):
    """Decide v ~ w under the chosen action; Yes carries a verified word.

    Over finite rings the BFS is exhaustive, so No is definitive.  Over
    infinite rings only a bounded heuristic (Euclidean reduction for R[X]
    over a field) is attempted; failures come back unknown.
    """
    if v.ring != w.ring:
        raise MixedRings("rows over different rings")
    if v.n != w.n:
        raise SizeMismatch("rows of different lengths")
    ring = v.ring
    if not v.is_unimodular() or not w.is_unimodular():
        return Decision("no", reason="input row is not unimodular")
    if v.entries == w.entries:
        return Decision("yes", ElementaryWord.empty(ring, v.n))
    if ring.is_finite:
        try:
            result = orbit_bfs(
                v,
                mode=mode,
                ideal=ideal,
                budget=budget,
                lambda_range=lambda_range,
                target=w.entries,
            )
        except BudgetExceeded:
            return Decision("unknown", reason="orbit budget exhausted")
        if w.entries in result:
            word = result.certificate(w.entries)
            assert word.apply_to_row(v.entries) == w.entries
            return Decision("yes", word)
        if result.subset_mode:
            return Decision("unknown", reason="relative orbit is subset mode")
        return Decision("no", reason="exhaustive orbit does not contain the target")
    # infinite rings: bounded heuristic via Euclidean reduction
    from .errors import UnsupportedBase
    from .polyext import euclidean_reduce_word  # local import, avoids a cycle

    try:
        alpha = euclidean_reduce_word(v)
        beta = euclidean_reduce_word(w)
    except (InfiniteRing, NotUnimodular, UnsupportedBase):
        return Decision("unknown", reason="no decision procedure for this ring")
    word = alpha.concat(beta.inverse())
    if word.apply_to_row(v.entries) == w.entries:
        return Decision("yes", word)
    return Decision("unknown", reason="heuristic reduction failed")


# ---------------------------------------------------------------------------
# elementary-group membership (bidirectional BFS) and Mennicke symbols
# ---------------------------------------------------------------------------


def elementary_membership(matrix, budget=DEFAULT_MATRIX_BUDGET):
    """Decide matrix in E_n(R) by meet-in-the-middle right-multiplication BFS.

    Yes returns a replay-verified word; No only when the whole group was
    enumerated; Unknown past the node budget.
    """
    ring = matrix.ring
    if not ring.is_finite:
        raise InfiniteRing("membership BFS needs a finite ring")
    n = matrix.n
    identity = MatrixR.identity(ring, n)
    if matrix == identity:
        return Decision("yes", ElementaryWord.empty(ring, n))
    letters = build_letters(ring, n, mode="E")
    inverse_letters = [
        ("elem", l[1], l[2], ring.neg(l[3])) for l in letters
    ]

    def found(mat):
        fw = _chase(forward, mat)
        bw = back[mat]
        word = ElementaryWord(ring, n, tuple(fw) + tuple(bw))
        assert word.replay() == matrix
        return Decision("yes", word)

    forward = {identity: None}
    back = {matrix: ()}
    fq = deque([identity])
    bq = deque([matrix])
    if matrix in forward:
        return found(matrix)
    while fq or bq:
        if len(forward) + len(back) > budget:
            return Decision("unknown", reason="matrix budget exhausted")
        expand_forward = bool(fq) and (not bq or len(fq) <= len(bq))
        if expand_forward:
            cur = fq.popleft()
            for letter in letters:
                new_rows = tuple(
                    apply_letter_to_row(ring, n, row, letter) for row in cur.rows
                )
                new = MatrixR(ring, new_rows)
                if new in forward:
                    continue
                forward[new] = (cur, letter)
                if new in back:
                    return found(new)
                fq.append(new)
        else:
            cur = bq.popleft()
            path = back[cur]
            for letter in inverse_letters:
                new_rows = tuple(
                    apply_letter_to_row(ring, n, row, letter) for row in cur.rows
                )
                new = MatrixR(ring, new_rows)
                if new in back:
                    continue
                # new * inverse(letter) = cur, so prepend the forward letter
                back[new] = (("elem", letter[1], letter[2], ring.neg(letter[3])),) + path
                if new in forward:
                    return found(new)
                bq.append(new)
        if not fq and not bq:
            break
    # forward closure exhausted without meeting: matrix is outside E_n(R)
    if matrix not in forward:
        return Decision("no", reason="E_n(R) enumerated without reaching the matrix")
    return found(matrix)


def _chase(parents, node):
    letters = []
    while True:
        parent = parents[node]
        if parent is None:
            break
        prev, letter = parent
        letters.append(letter)
        node = prev
    letters.reverse()
    return letters


class MennickeClass:
    """The class of the explicit 3x3 completion of (a, b) in SL_3/E_3."""

    __slots__ = ("ring", "a", "b", "c", "d", "matrix")

    def __init__(self, ring, a, b, c, d):
        self.ring = ring
        self.a = a
        self.b = b
        self.c = c
        self.d = d
        z, o = ring.zero, ring.one
        self.matrix = MatrixR(ring, [[a, b, z], [c, d, z], [z, z, o]])
        assert self.matrix.det() == o

    def inverse_matrix(self):
        ring = self.ring
        z, o = ring.zero, ring.one
        return MatrixR(
            ring,
            [
                [self.d, ring.neg(self.b), z],
                [ring.neg(self.c), self.a, z],
                [z, z, o],
            ],
        )

    def __repr__(self):
        return f"ms({self.ring.format(self.a)},{self.ring.format(self.b)})"


def mennicke(a, b):
    """Mennicke symbol ms(a, b) with a deterministic completion.

    The completion (c, d) = (-b2, b1) comes from the least unimodularity
    witness (b1, b2) of (a, b), so ad - bc = a*b1 + b*b2 = 1.
    """
    ring = a.ring
    if ring != b.ring:
        raise MixedRings("mennicke arguments over different rings")
    pa, pb = a.payload, b.payload
    if ring.is_finite:
        wit = lex_least_witness(ring, (pa, pb))
    else:
        wit = ring.solve_row((pa, pb))
    if wit is None:
        raise NotUnimodular("(a, b) is not a unimodular pair")
    b1, b2 = wit
    return MennickeClass(ring, pa, pb, ring.neg(b2), b1)


def mennicke_equal(m1, m2, budget=DEFAULT_MATRIX_BUDGET):
    """Decide ms-class equality: is m2^{-1} * m1 in E_3(R)?

    Yes carries a word w with m2 * replay(w) = m1, verified by replay.
    """
    if m1.ring != m2.ring:
        raise MixedRings("classes over different rings")
    target = m2.inverse_matrix().mul(m1.matrix)
    decision = elementary_membership(target, budget=budget)
    if decision.is_yes:
        assert m2.matrix.mul(decision.word.replay()) == m1.matrix
    return decision


def first_row_orbit_test(sigma, stabilized_word=None, budget=None):
    """Test [e1 * sigma] = [e1] for det-1 sigma; over finite rings decisive.

    A caller asserting stable elementarity may pass a word replaying to
    sigma + identity block; the word is verified before the orbit test.
    """
    ring = sigma.ring
    if sigma.det() != ring.one:
        raise NotUnimodular("sigma must have determinant 1")
    if stabilized_word is not None:
        m = stabilized_word.n
        if m < sigma.n:
            raise SizeMismatch("stabilized word smaller than sigma")
        expect = [
            [
                sigma.rows[i][j]
                if i < sigma.n and j < sigma.n
                else (ring.one if i == j else ring.zero)
                for j in range(m)
            ]
            for i in range(m)
        ]
        if stabilized_word.replay() != MatrixR(ring, expect):
            raise CertificateInvalid("stabilized word does not replay to sigma + I")
    n = sigma.n
    moved = UnimodularRow(ring, sigma.rows[0], check=False).solve_witness()
    if moved is None:
        raise NotUnimodular("first row of sigma is not unimodular")
    decision = same_orbit(moved, UnimodularRow.e1(ring, n), budget=budget)
    if decision.status == "no":
        # det-1 over a finite ring always completes; a No here is a bug
        raise BFSFailure("first-row orbit test returned No over a finite ring")
    return decision
