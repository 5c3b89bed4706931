"""Van der Kallen's product on orbit spaces, niceness checks, group tables,
stable range, and relative transitivity through the excision ring.

The product of classes sharing a common tail is

    [(x1, v2..vn)] * [(v1, v2..vn)] = [(v1(x1+w1)-1, (x1+w1)v2, v3..vn)]

with v1*w1 = 1 modulo (v2..vn).  Over the finite rings this toolkit can
enumerate, every orbit space is a one-element group, so the value of these
operations is machinery verification: products stay unimodular, all valid
w1 choices land in one orbit, tables satisfy the group axioms, and every
certificate replays.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os

from .elementary import (
    Decision,
    UnimodularRow,
    act_row,
    orbit_bfs,
    same_orbit,
)
from .errors import (
    BFSFailure,
    InfiniteRing,
    MixedRings,
    NoModularInverse,
    NotRelUnimodular,
    NotUnimodular,
    SizeMismatch,
    TailMismatch,
)
from .rings import (
    ExcisionRing,
    Ideal,
    lex_least_witness,
    lift_row,
    ring_from_descriptor,
    um_rel_member,
)
from .version import MATH_VERSION, SCHEMA_VERSION, __version__
from .words import ElementaryWord, map_word_parameters

_UM_CACHE = {}
_TAIL_IDEAL_CACHE = {}
_E1_ORBIT_CACHE = {}


def enumerate_unimodular(ring, n):
    """All rows of Um_n(R) in element-enumeration order (memoized)."""
    if not ring.is_finite:
        raise InfiniteRing("cannot enumerate rows of an infinite ring")
    key = (ring, n)
    cached = _UM_CACHE.get(key)
    if cached is None:
        elems = ring.elements()
        cached = tuple(
            row
            for row in itertools.product(elems, repeat=n)
            if ring.solve_row(row) is not None
        )
        _UM_CACHE[key] = cached
    return cached


def e1_orbit(ring, n):
    """The E_n-orbit of e1 (memoized; the workhorse of the finite checks)."""
    key = (ring, n)
    cached = _E1_ORBIT_CACHE.get(key)
    if cached is None:
        cached = orbit_bfs(UnimodularRow.e1(ring, n))
        _E1_ORBIT_CACHE[key] = cached
    return cached


def tail_ideal_set(ring, tail):
    key = (ring, tuple(tail))
    cached = _TAIL_IDEAL_CACHE.get(key)
    if cached is None:
        cached = Ideal(ring, tail).element_set()
        _TAIL_IDEAL_CACHE[key] = cached
    return cached


# ---------------------------------------------------------------------------
# stable range
# ---------------------------------------------------------------------------


def stable_range_condition(ring, n):
    """Exhaustively decide sr_n(R): every Um_{n+1} row shortens to Um_n."""
    if not ring.is_finite:
        raise InfiniteRing("stable range needs a finite ring")
    elems = ring.elements()
    failures = []
    for row in enumerate_unimodular(ring, n + 1):
        last = row[n]
        head = row[:n]
        ok = False
        for cs in itertools.product(elems, repeat=n):
            shortened = tuple(
                ring.add(head[k], ring.mul(cs[k], last)) for k in range(n)
            )
            if ring.solve_row(shortened) is not None:
                ok = True
                break
        if not ok:
            failures.append(row)
    return (not failures), failures


def sr(ring, cap=4):
    """The stable range: least n with sr_n(R); finite rings give 1."""
    for n in range(1, cap + 1):
        holds, _ = stable_range_condition(ring, n)
        if holds:
            return n
    raise BFSFailure(f"sr(R) > {cap} for {ring.name()}")


def sdim(ring, cap=4):
    return sr(ring, cap=cap) - 1


# ---------------------------------------------------------------------------
# the product
# ---------------------------------------------------------------------------


def valid_w1_choices(w_rep):
    """All w1 with v1*w1 = 1 modulo the tail ideal, in enumeration order."""
    ring = w_rep.ring
    tail_set = tail_ideal_set(ring, w_rep.entries[1:])
    v1 = w_rep.entries[0]
    return [
        w
        for w in ring.elements()
        if ring.sub(ring.mul(v1, w), ring.one) in tail_set
    ]


def canonical_w1(w_rep):
    """First coordinate of the least unimodularity witness of w_rep."""
    wit = lex_least_witness(w_rep.ring, w_rep.entries)
    if wit is None:
        raise NotUnimodular("representative is not unimodular")
    return wit[0]


def vdk_product(v_rep, w_rep, w1=None):
    """The product row (v1(x1+w1)-1, (x1+w1)v2, v3..vn) with a fresh witness."""
    if v_rep.ring != w_rep.ring:
        raise MixedRings("representatives over different rings")
    if v_rep.n != w_rep.n:
        raise SizeMismatch("representatives of different lengths")
    if v_rep.n < 2:
        raise SizeMismatch("the product needs rows of length >= 2")
    if v_rep.entries[1:] != w_rep.entries[1:]:
        raise TailMismatch("representatives do not share their tail")
    ring = v_rep.ring
    x1 = v_rep.entries[0]
    v1 = w_rep.entries[0]
    tail = w_rep.entries[1:]
    if w1 is None:
        w1 = canonical_w1(w_rep)
    else:
        w1 = ring.coerce(w1)
        if ring.is_finite:
            tail_set = tail_ideal_set(ring, tail)
            if ring.sub(ring.mul(v1, w1), ring.one) not in tail_set:
                raise NoModularInverse("w1 is not inverse to v1 modulo the tail")
    s = ring.add(x1, w1)
    head = ring.sub(ring.mul(v1, s), ring.one)
    entries = (head, ring.mul(s, tail[0])) + tail[1:]
    out = UnimodularRow(ring, entries, check=False).solve_witness()
    # vdK Lemma 3.5(i): the product of unimodular representatives is
    # unimodular; a failure here is an implementation bug.
    assert out is not None, "product row lost unimodularity"
    return out


class CommonTailReps:
    def __init__(self, v_rep, w_rep, cert_v, cert_w):
        self.v_rep = v_rep
        self.w_rep = w_rep
        self.cert_v = cert_v
        self.cert_w = cert_w


def common_tail_reps(v, w):
    """Orbit representatives of [v], [w] sharing their last n-1 coordinates.

    Deterministic choice: scan the v-orbit in BFS discovery order and take
    the first row whose tail also occurs in the w-orbit (first discovery
    there as well).  Certificates replay v and w onto the representatives.
    """
    if v.ring != w.ring:
        raise MixedRings("rows over different rings")
    if v.n != w.n:
        raise SizeMismatch("rows of different lengths")
    ring = v.ring
    if not ring.is_finite:
        raise InfiniteRing("representative search needs a finite ring")
    if not v.is_unimodular() or not w.is_unimodular():
        raise NotUnimodular("both rows must be unimodular")
    orbit_v = orbit_bfs(v)
    orbit_w = orbit_bfs(w)
    first_by_tail = {}
    for rw in orbit_w.members:
        first_by_tail.setdefault(rw[1:], rw)
    for rv in orbit_v.members:
        rw = first_by_tail.get(rv[1:])
        if rw is None:
            continue
        cert_v = orbit_v.certificate(rv)
        cert_w = orbit_w.certificate(rw)
        v_src = v if v.witness is not None else v.solve_witness()
        w_src = w if w.witness is not None else w.solve_witness()
        return CommonTailReps(act_row(v_src, cert_v), act_row(w_src, cert_w), cert_v, cert_w)
    raise BFSFailure("no common-tail representatives found")


class NicenessResult:
    """Verdict of one product-vs-first-entry-multiplication comparison."""

    def __init__(self, verdict, product, target, word=None, reps=None):
        self.verdict = verdict  # "nice" | "not_nice" | "unknown"
        self.product = product
        self.target = target
        self.word = word
        self.reps = reps

    def __repr__(self):
        return f"<{self.verdict}: {self.product!r} vs {self.target!r}>"


def nice_check(v, w, budget=None):
    """Compare [vRep * wRep] against [(x1*v1, v2..vn)].

    Over finite rings the orbit decision is exhaustive, hence decisive; a
    NotNice outcome would contradict the trivial orbit structure and is
    surfaced verbatim (it indicates a bug, never silently swallowed).
    """
    reps = common_tail_reps(v, w)
    ring = v.ring
    x1 = reps.v_rep.entries[0]
    v1 = reps.w_rep.entries[0]
    product = vdk_product(reps.v_rep, reps.w_rep)
    target = UnimodularRow(
        ring, (ring.mul(x1, v1),) + reps.w_rep.entries[1:], check=False
    )
    decision = same_orbit(product, target, budget=budget)
    verdict = {"yes": "nice", "no": "not_nice", "unknown": "unknown"}[decision.status]
    return NicenessResult(verdict, product, target, word=decision.word, reps=reps)


# ---------------------------------------------------------------------------
# group tables
# ---------------------------------------------------------------------------


class OrbitTable:
    """Orbit classes of Um_n(R) with the van der Kallen multiplication."""

    def __init__(self, ring, n, classes, class_index, table, sr_value, meta=None):
        self.ring = ring
        self.n = n
        self.classes = classes  # list of representative entry tuples
        self.class_index = class_index  # entries -> class id
        self.table = table  # list of lists of class ids
        self.sr = sr_value
        self.sdim = sr_value - 1
        self.meta = dict(meta or {})
        self._orbits = {}

    @property
    def num_classes(self):
        return len(self.classes)

    def class_of(self, row):
        entries = row.entries if isinstance(row, UnimodularRow) else tuple(row)
        return self.class_index[entries]

    def multiply(self, ci, cj):
        return self.table[ci][cj]

    @property
    def identity_class(self):
        ring = self.ring
        e1 = (ring.one,) + (ring.zero,) * (self.n - 1)
        return self.class_index[e1]

    def certificate_to_class(self, row):
        """Word carrying the row to its class representative."""
        entries = row.entries if isinstance(row, UnimodularRow) else tuple(row)
        cid = self.class_index[entries]
        orbit = self._orbits.get(cid)
        if orbit is None:
            orbit = orbit_bfs(UnimodularRow(self.ring, self.classes[cid], check=False))
            self._orbits[cid] = orbit
        return orbit.certificate(entries).inverse()

    def verify_group_axioms(self):
        """Exhaustive axiom check of the finished table."""
        k = self.num_classes
        e = self.identity_class
        t = self.table
        abelian = all(t[i][j] == t[j][i] for i in range(k) for j in range(k))
        associative = all(
            t[t[i][j]][l] == t[i][t[j][l]]
            for i in range(k)
            for j in range(k)
            for l in range(k)
        )
        identity = all(t[e][j] == j and t[j][e] == j for j in range(k))
        inverses = all(any(t[i][j] == e for j in range(k)) for i in range(k))
        return {
            "abelian": abelian,
            "associative": associative,
            "identity_is_e1": identity,
            "inverses": inverses,
            "group": abelian and associative and identity and inverses,
        }

    def to_json(self):
        ring = self.ring
        return {
            "schema_version": SCHEMA_VERSION,
            "tool_version": __version__,
            "math_version": MATH_VERSION,
            "ring": ring.descriptor(),
            "n": self.n,
            "num_classes": self.num_classes,
            "classes": [
                [ring.payload_to_json(x) for x in rep] for rep in self.classes
            ],
            "row_class": [
                [[ring.payload_to_json(x) for x in row], cid]
                for row, cid in self.class_index.items()
            ],
            "table": self.table,
            "sr": self.sr,
            "sdim": self.sdim,
            "meta": self.meta,
        }

    @classmethod
    def from_json(cls, obj):
        ring = ring_from_descriptor(obj["ring"])
        classes = [
            tuple(ring.payload_from_json(x) for x in rep) for rep in obj["classes"]
        ]
        class_index = {
            tuple(ring.payload_from_json(x) for x in row): cid
            for row, cid in obj["row_class"]
        }
        return cls(
            ring,
            int(obj["n"]),
            classes,
            class_index,
            [list(r) for r in obj["table"]],
            int(obj["sr"]),
            meta=obj.get("meta"),
        )


def table_cache_key(ring, n):
    payload = json.dumps(
        {"math_version": MATH_VERSION, "n": n, "ring": ring.descriptor()},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode()).hexdigest()


def build_group_table(ring, n, cache_dir=None):
    """Partition Um_n(R) into E_n-orbits and build the multiplication table.

    The stable-dimension hypothesis sdim <= 2n-4 is recorded, not enforced:
    a violation flags the table "outside_hypothesis" instead of aborting.
    """
    if not ring.is_finite:
        raise InfiniteRing("group tables need a finite ring")
    if n < 3:
        raise SizeMismatch("the group structure needs n >= 3")
    cache_file = None
    if cache_dir:
        cache_file = os.path.join(cache_dir, table_cache_key(ring, n) + ".json")
        if os.path.exists(cache_file):
            with open(cache_file, "r", encoding="utf-8") as fh:
                return OrbitTable.from_json(json.load(fh))
    um = enumerate_unimodular(ring, n)
    sr_value = sr(ring)
    classes = []
    class_index = {}
    e1 = (ring.one,) + (ring.zero,) * (n - 1)
    for base in itertools.chain([e1], um):
        if base in class_index:
            continue
        cid = len(classes)
        classes.append(base)
        orbit = orbit_bfs(UnimodularRow(ring, base, check=False))
        for member in orbit.members:
            class_index[member] = cid
    assert len(class_index) == len(um)
    table = []
    for rep_i in classes:
        row_ids = []
        for rep_j in classes:
            vi = UnimodularRow(ring, rep_i, check=False)
            wj = UnimodularRow(ring, rep_j, check=False)
            reps = common_tail_reps(vi, wj)
            product = vdk_product(reps.v_rep, reps.w_rep)
            row_ids.append(class_index[product.entries])
        table.append(row_ids)
    meta = {
        "um_count": len(um),
        "hypothesis_sdim_le_2n_minus_4": (sr_value - 1) <= 2 * n - 4,
    }
    out = OrbitTable(ring, n, classes, class_index, table, sr_value, meta=meta)
    if not meta["hypothesis_sdim_le_2n_minus_4"]:
        out.meta["flag"] = "outside_hypothesis"
    out.meta["axioms"] = out.verify_group_axioms()
    if cache_file:
        os.makedirs(cache_dir, exist_ok=True)
        with open(cache_file, "w", encoding="utf-8") as fh:
            json.dump(out.to_json(), fh, sort_keys=True, indent=1)
    return out


# ---------------------------------------------------------------------------
# relative transitivity through the excision ring
# ---------------------------------------------------------------------------


class RelativeTransitivityResult:
    def __init__(self, word, excision_word, log):
        self.word = word
        self.excision_word = excision_word
        self.log = log


def relative_transitivity(row, ideal):
    """A word with row * word = e1 whose replay is congruent to I mod I.

    Constructive route: lift the row to the excision ring R+I, reduce the
    lift to e1 there by BFS, cancel the projected word through the section
    so the excision word is trivial modulo 0+I, then push down along the
    retraction (r, i) -> r+i.  Every stage is replay-verified.
    """
    ring = row.ring
    n = row.n
    if not um_rel_member(row.elements(), ideal):
        raise NotRelUnimodular("row is not in Um_n(R, I)")
    exc = ExcisionRing(ring, ideal)
    lifted = lift_row(row.elements(), exc)
    lifted_entries = tuple(e.payload for e in lifted)

    orbit = e1_orbit(exc, n)
    um_exc = enumerate_unimodular(exc, n)
    if len(orbit) != len(um_exc):
        raise BFSFailure("E_n(R+I) is not transitive on Um_n(R+I)")
    if lifted_entries not in orbit:
        raise BFSFailure("lift not reachable from e1 over the excision ring")

    # eps1: lift * eps1 = e1 over R+I
    eps1 = orbit.certificate(lifted_entries).inverse()
    # project modulo 0+I and re-embed through the section gamma
    base = exc.base
    gamma_of_pi = map_word_parameters(eps1, exc, lambda p: (p[0], base.zero))
    corrected = eps1.concat(gamma_of_pi.inverse())
    e1_exc = (exc.one,) + (exc.zero,) * (n - 1)
    assert corrected.apply_to_row(lifted_entries) == e1_exc
    zero_i = Ideal(exc, [(base.zero, g) for g in ideal.gens])
    assert corrected.replay().scaled_diff_in_ideal(zero_i)

    # push down along omega
    word = map_word_parameters(corrected, ring, lambda p: base.add(p[0], p[1]))
    e1_r = (ring.one,) + (ring.zero,) * (n - 1)
    if word.apply_to_row(row.entries) != e1_r:
        raise BFSFailure("pushed-down word does not carry the row to e1")
    if not word.replay().scaled_diff_in_ideal(ideal):
        raise BFSFailure("pushed-down word is not congruent to I mod I")
    log = {
        "excision_ring": exc.descriptor(),
        "excision_orbit_size": len(orbit),
        "excision_um_count": len(um_exc),
        "lift": [exc.payload_to_json(x) for x in lifted_entries],
        "bfs_word_letters": len(eps1),
        "corrected_letters": len(corrected),
        "final_letters": len(word),
    }
    return RelativeTransitivityResult(word, corrected, log)


# ---------------------------------------------------------------------------
# orbit-level Mennicke multiplicativity
# ---------------------------------------------------------------------------


def verify_ms_multiplicativity(a, a2, b, tail, budget=None):
    """Check [(a*a2, b, tail)] = [(a, b, tail)] * [(a2, b, tail)] at orbit
    level; the row-level shadow of ms(aa', b) = ms(a, b) ms(a', b)."""
    ring = a.ring
    tail_payloads = tuple(ring.coerce(t) for t in tail)
    v = UnimodularRow(ring, (a.payload, b.payload) + tail_payloads, check=False)
    w = UnimodularRow(ring, (a2.payload, b.payload) + tail_payloads, check=False)
    prod_target = UnimodularRow(
        ring, (ring.mul(a.payload, a2.payload), b.payload) + tail_payloads, check=False
    )
    for r, tag in ((v, "(a,b,tail)"), (w, "(a2,b,tail)"), (prod_target, "(a*a2,b,tail)")):
        if not r.is_unimodular():
            raise NotUnimodular(f"{tag} is not unimodular")
    product = vdk_product(v, w)
    decision = same_orbit(product, prod_target, budget=budget)
    return {
        "holds": decision.is_yes,
        "status": decision.status,
        "product": product.to_json(),
        "target": prod_target.to_json(),
        "certificate_letters": None if decision.word is None else len(decision.word),
    }
