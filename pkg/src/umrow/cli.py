"""Command-line front end: ring DSL parsing, task dispatch, JSON output,
certificate verification, and orbit-table cache management.

Every run prints one JSON document to stdout.  Exit codes: 0 success,
1 mathematical negative (not unimodular, invalid certificate, orbits
differ), 2 usage error, 3 budget exhaustion.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys

from . import polyext, symplectic, vdk
from .elementary import (
    DEFAULT_CONJ_DEPTH,
    DEFAULT_MATRIX_BUDGET,
    DEFAULT_ROW_BUDGET,
    UnimodularRow,
    mennicke,
    mennicke_equal,
    orbit_bfs,
    same_orbit,
)
from .errors import (
    BudgetExceeded,
    DiagonalIndex,
    EmptyRow,
    IndexOutOfRange,
    InfiniteRing,
    MixedRings,
    NoWitnessWithinBound,
    OddSize,
    SizeMismatch,
    UmrowError,
    UnsupportedBase,
)
from .rings import (
    ExcisionRing,
    Ideal,
    RingElement,
    gamma_section,
    omega_map,
    parse_ring,
    pi_map,
)
from .version import MATH_VERSION, SCHEMA_VERSION, __version__
from .words import ElementaryWord

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

CACHE_ENV = "UMROW_CACHE_DIR"


def _envelope(command, params, result):
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "math_version": MATH_VERSION,
        "generated_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "command": command,
        "params": params,
        "result": result,
    }


def _emit(command, params, result, code=EXIT_OK):
    print(json.dumps(_envelope(command, params, result), sort_keys=True, indent=2))
    return code


def _parse_row(ring, text):
    """Row literal: comma-separated element literals or a JSON array."""
    text = text.strip()
    if text.startswith("["):
        data = json.loads(text)
        return UnimodularRow(
            ring, [ring.payload_from_json(x) for x in data], check=False
        )
    parts = _split_commas(text)
    return UnimodularRow(ring, [ring.parse(p) for p in parts], check=False)


def _split_commas(text):
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


def _ideal(ring, text):
    gens = [ring.parse(p) for p in _split_commas(text)]
    return Ideal(ring, gens)


def _cache_dir(args):
    return args.cache_dir or os.environ.get(CACHE_ENV) or None


def _row_json(row):
    return row.to_json()


# -- subcommand handlers -----------------------------------------------------


def cmd_um(args):
    ring = parse_ring(args.ring)
    row = _parse_row(ring, args.row)
    witness = ring.solve_row(row.entries)
    result = {
        "ring": ring.descriptor(),
        "row": _row_json(row),
        "unimodular": witness is not None,
        "witness": None
        if witness is None
        else [ring.payload_to_json(w) for w in witness],
    }
    params = {"ring": args.ring, "row": args.row}
    return _emit("um", params, result, EXIT_OK if witness else EXIT_NEGATIVE)


def cmd_orbit(args):
    ring = parse_ring(args.ring)
    row = _parse_row(ring, args.row)
    ideal = _ideal(ring, args.ideal) if args.ideal else None
    result_obj = orbit_bfs(
        row,
        mode=args.mode,
        ideal=ideal,
        budget=args.budget,
        conj_depth=args.conj_depth,
    )
    result = {
        "ring": ring.descriptor(),
        "row": _row_json(row),
        "mode": args.mode,
        "orbit_size": len(result_obj),
        "subset_mode": result_obj.subset_mode,
        "members": [
            [ring.payload_to_json(x) for x in m] for m in result_obj.members
        ]
        if args.members
        else None,
    }
    params = {"ring": args.ring, "row": args.row, "mode": args.mode}
    return _emit("orbit", params, result)


def cmd_table(args):
    ring = parse_ring(args.ring)
    table = vdk.build_group_table(ring, args.n, cache_dir=_cache_dir(args))
    axioms = table.verify_group_axioms()
    result = {
        "ring": ring.descriptor(),
        "n": args.n,
        "num_classes": table.num_classes,
        "classes": [
            [ring.payload_to_json(x) for x in rep] for rep in table.classes
        ],
        "table": table.table,
        "group": "trivial" if table.num_classes == 1 else "nontrivial",
        "axioms": axioms,
        "sr": table.sr,
        "sdim": table.sdim,
        "um_count": table.meta.get("um_count"),
        "cache_key": vdk.table_cache_key(ring, args.n),
    }
    params = {"ring": args.ring, "n": args.n}
    return _emit("table", params, result)


def cmd_nice(args):
    ring = parse_ring(args.ring)
    v = _parse_row(ring, args.v)
    w = _parse_row(ring, args.w)
    res = vdk.nice_check(v, w, budget=args.budget)
    result = {
        "ring": ring.descriptor(),
        "v": _row_json(v),
        "w": _row_json(w),
        "verdict": res.verdict,
        "product": _row_json(res.product),
        "target": _row_json(res.target),
        "certificate": None if res.word is None else res.word.to_json(),
    }
    params = {"ring": args.ring, "v": args.v, "w": args.w}
    code = {"nice": EXIT_OK, "not_nice": EXIT_NEGATIVE, "unknown": EXIT_BUDGET}[
        res.verdict
    ]
    return _emit("nice", params, result, code)


def cmd_mennicke(args):
    ring = parse_ring(args.ring)
    a, b = ring.element(ring.parse(args.a)), ring.element(ring.parse(args.b))
    m1 = mennicke(a, b)
    if args.a2 is not None or args.b2 is not None:
        a2 = ring.element(ring.parse(args.a2 if args.a2 is not None else "1"))
        b2 = ring.element(ring.parse(args.b2 if args.b2 is not None else "0"))
        m2 = mennicke(a2, b2)
    else:
        m2 = mennicke(ring.element(ring.one), ring.element(ring.zero))
    decision = mennicke_equal(m1, m2, budget=args.budget)
    result = {
        "ring": ring.descriptor(),
        "m1": m1.matrix.to_json(),
        "m2": m2.matrix.to_json(),
        "status": decision.status,
        "certificate": None if decision.word is None else decision.word.to_json(),
        "reason": decision.reason,
    }
    params = {"ring": args.ring, "a": args.a, "b": args.b}
    code = {"yes": EXIT_OK, "no": EXIT_NEGATIVE, "unknown": EXIT_BUDGET}[
        decision.status
    ]
    return _emit("mennicke", params, result, code)


def cmd_symp_compare(args):
    ring = parse_ring(args.ring)
    row = _parse_row(ring, args.row) if args.row else None
    cmp_res = symplectic.compare_e_esp_orbits(ring, args.m, row=row)
    result = {
        "ring": ring.descriptor(),
        "m": args.m,
        "equal": cmp_res.equal,
        "e_orbit_size": cmp_res.left_size,
        "esp_orbit_size": cmp_res.right_size,
        "witness": None
        if cmp_res.witness is None
        else [ring.payload_to_json(x) for x in cmp_res.witness],
    }
    params = {"ring": args.ring, "m": args.m}
    return _emit(
        "symp-compare", params, result, EXIT_OK if cmp_res.equal else EXIT_NEGATIVE
    )


def cmd_sr(args):
    ring = parse_ring(args.ring)
    per_level = []
    for n in range(1, args.max_n + 1):
        holds, failures = vdk.stable_range_condition(ring, n)
        per_level.append(
            {
                "n": n,
                "holds": holds,
                "failures": [
                    [ring.payload_to_json(x) for x in f] for f in failures[:5]
                ],
            }
        )
    sr_value = vdk.sr(ring)
    result = {
        "ring": ring.descriptor(),
        "sr": sr_value,
        "sdim": sr_value - 1,
        "levels": per_level,
    }
    params = {"ring": args.ring}
    return _emit("sr", params, result)


def cmd_excision_demo(args):
    base = parse_ring(args.ring)
    ideal = _ideal(base, args.ideal)
    exc = ExcisionRing(base, ideal)
    x = RingElement(exc, exc.coerce((base.one, ideal.gens[0] if ideal.gens else base.zero)))
    sample = {
        "element": exc.payload_to_json(x.payload),
        "omega": base.payload_to_json(omega_map(x).payload),
        "pi": base.payload_to_json(pi_map(x).payload),
        "gamma_of_one": exc.payload_to_json(
            gamma_section(RingElement(base, base.one), exc).payload
        ),
    }
    result = {
        "base": base.descriptor(),
        "ideal": ideal.to_json(),
        "excision": exc.descriptor(),
        "cardinality": exc.cardinality,
        "sample": sample,
    }
    params = {"ring": args.ring, "ideal": args.ideal}
    return _emit("excision-demo", params, result)


def cmd_rel_trans(args):
    ring = parse_ring(args.ring)
    ideal = _ideal(ring, args.ideal)
    row = _parse_row(ring, args.row)
    res = vdk.relative_transitivity(row, ideal)
    result = {
        "ring": ring.descriptor(),
        "ideal": ideal.to_json(),
        "row": _row_json(row),
        "word": res.word.to_json(),
        "log": res.log,
    }
    params = {"ring": args.ring, "ideal": args.ideal, "row": args.row}
    return _emit("rel-trans", params, result)


def cmd_jacobson(args):
    ring = parse_ring(args.ring)
    radical = polyext.jacobson_radical(ring)
    result = {
        "ring": ring.descriptor(),
        "radical_generators": radical.to_json(),
        "radical_elements": [ring.payload_to_json(x) for x in radical.elements()],
        "is_zero": radical.is_zero,
    }
    if args.row:
        row = _parse_row(ring, args.row)
        word = polyext.jacobson_reduce(row)
        result["row"] = _row_json(row)
        result["word"] = word.to_json()
    params = {"ring": args.ring, "row": args.row}
    return _emit("jacobson", params, result)


def cmd_poly_nice(args):
    base = parse_ring(args.ring)
    ring = polyext.poly_ring(base, args.var)
    v = _parse_row(ring, args.v)
    w = _parse_row(ring, args.w)
    try:
        report = polyext.specialization_consistent(
            v, w, bound=args.degree_bound, budget=args.budget
        )
    except NoWitnessWithinBound as exc:
        params = {"ring": args.ring, "v": args.v, "w": args.w}
        return _emit(
            "poly-nice",
            params,
            {"error": str(exc), "verdict": "inconclusive"},
            EXIT_BUDGET,
        )
    result = {
        "base": base.descriptor(),
        "ring": ring.descriptor(),
        "v": _row_json(v),
        "w": _row_json(w),
        "consistent": report["consistent"],
        "status": report["status"],
        "product_at_0": report["product_at_0"],
        "product_of_evaluations": report["product_of_evaluations"],
    }
    params = {"ring": args.ring, "v": args.v, "w": args.w, "var": args.var}
    code = EXIT_OK if report["consistent"] else EXIT_NEGATIVE
    return _emit("poly-nice", params, result, code)


def cmd_verify_cert(args):
    with open(args.file, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    word = ElementaryWord.from_json(payload)
    ring = word.ring
    result = {"ring": ring.descriptor(), "n": word.n, "letters": len(word)}
    params = {"file": args.file}
    if "source" in payload and "target" in payload:
        source = tuple(ring.payload_from_json(x) for x in payload["source"])
        target = tuple(ring.payload_from_json(x) for x in payload["target"])
        replayed = word.apply_to_row(source)
        ok = replayed == target
        result.update(
            {
                "kind": "row",
                "valid": ok,
                "replayed": [ring.payload_to_json(x) for x in replayed],
                "reason": "ok" if ok else "replay mismatch",
            }
        )
    elif "target_matrix" in payload:
        from .matrices import MatrixR

        target = MatrixR.from_json(ring, payload["target_matrix"])
        replayed = word.replay()
        ok = replayed == target
        result.update(
            {
                "kind": "matrix",
                "valid": ok,
                "reason": "ok" if ok else "replay mismatch",
            }
        )
    else:
        replayed = word.replay()
        ok = replayed.det() == ring.one
        result.update(
            {
                "kind": "bare",
                "valid": ok,
                "reason": "ok" if ok else "determinant is not 1",
            }
        )
    return _emit("verify-cert", params, result, EXIT_OK if ok else EXIT_NEGATIVE)


def cmd_cache(args):
    cache_dir = _cache_dir(args)
    params = {"action": args.action}
    if args.action == "path":
        return _emit("cache", params, {"path": cache_dir})
    if cache_dir is None or not os.path.isdir(cache_dir):
        entries = []
    else:
        entries = sorted(
            f for f in os.listdir(cache_dir) if f.endswith(".json")
        )
    if args.action == "list":
        return _emit("cache", params, {"path": cache_dir, "entries": entries})
    if args.action == "clear":
        for f in entries:
            os.remove(os.path.join(cache_dir, f))
        return _emit("cache", params, {"path": cache_dir, "removed": len(entries)})
    raise ValueError(f"unknown cache action {args.action!r}")


# -- parser -------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="umrow",
        description="Exact calculus of unimodular rows over explicit "
        "commutative rings: orbits, certificates, van der Kallen products.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, budget=DEFAULT_ROW_BUDGET):
        p.add_argument("--budget", type=int, default=budget, help="node budget")
        p.add_argument(
            "--cache-dir", default=None, help=f"cache directory (or ${CACHE_ENV})"
        )

    p = sub.add_parser("um", help="decide unimodularity, print a witness")
    p.add_argument("--ring", required=True)
    p.add_argument("--row", required=True)
    p.set_defaults(func=cmd_um)

    p = sub.add_parser("orbit", help="BFS orbit of a row with certificates")
    p.add_argument("--ring", required=True)
    p.add_argument("--row", required=True)
    p.add_argument(
        "--mode", choices=["E", "ESp", "E_rel", "ESp_rel"], default="E"
    )
    p.add_argument("--ideal", default=None, help="generators, comma separated")
    p.add_argument("--conj-depth", type=int, default=DEFAULT_CONJ_DEPTH)
    p.add_argument("--members", action="store_true", help="list all members")
    add_common(p)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("table", help="orbit classes and the product table")
    p.add_argument("--ring", required=True)
    p.add_argument("--n", type=int, required=True)
    add_common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("nice", help="compare the product with first-entry multiplication")
    p.add_argument("--ring", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--w", required=True)
    add_common(p)
    p.set_defaults(func=cmd_nice)

    p = sub.add_parser("mennicke", help="Mennicke class equality via E_3 membership")
    p.add_argument("--ring", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--a2", default=None)
    p.add_argument("--b2", default=None)
    add_common(p, budget=DEFAULT_MATRIX_BUDGET)
    p.set_defaults(func=cmd_mennicke)

    p = sub.add_parser("symp-compare", help="E vs ESp orbit comparison")
    p.add_argument("--ring", required=True)
    p.add_argument("--m", type=int, required=True, help="half-size (size 2m)")
    p.add_argument("--row", default=None)
    add_common(p)
    p.set_defaults(func=cmd_symp_compare)

    p = sub.add_parser("sr", help="stable range and stable dimension")
    p.add_argument("--ring", required=True)
    p.add_argument("--max-n", type=int, default=2)
    add_common(p)
    p.set_defaults(func=cmd_sr)

    p = sub.add_parser("excision-demo", help="build R+I and its retraction maps")
    p.add_argument("--ring", required=True, help="base ring")
    p.add_argument("--ideal", required=True)
    add_common(p)
    p.set_defaults(func=cmd_excision_demo)

    p = sub.add_parser("rel-trans", help="relative transitivity certificate")
    p.add_argument("--ring", required=True)
    p.add_argument("--ideal", required=True)
    p.add_argument("--row", required=True)
    add_common(p)
    p.set_defaults(func=cmd_rel_trans)

    p = sub.add_parser("jacobson", help="Jacobson radical and row reduction")
    p.add_argument("--ring", required=True)
    p.add_argument("--row", default=None)
    add_common(p)
    p.set_defaults(func=cmd_jacobson)

    p = sub.add_parser("poly-nice", help="specialization consistency over R[X]")
    p.add_argument("--ring", required=True, help="base ring")
    p.add_argument("--var", default="X")
    p.add_argument("--v", required=True, help="JSON row of coefficient arrays")
    p.add_argument("--w", required=True)
    p.add_argument("--degree-bound", type=int, default=None)
    add_common(p)
    p.set_defaults(func=cmd_poly_nice)

    p = sub.add_parser("verify-cert", help="replay a certificate file")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_verify_cert)

    p = sub.add_parser("cache", help="orbit-table cache management")
    p.add_argument("action", choices=["list", "clear", "path"])
    p.add_argument("--cache-dir", default=None)
    p.set_defaults(func=cmd_cache)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; version/help exit 0
        return int(exc.code or 0)
    usage_errors = (
        MixedRings,
        SizeMismatch,
        DiagonalIndex,
        IndexOutOfRange,
        EmptyRow,
        OddSize,
        InfiniteRing,
        UnsupportedBase,
    )
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"umrow: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except usage_errors as exc:
        print(f"umrow: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UmrowError as exc:
        print(f"umrow: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"umrow: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
