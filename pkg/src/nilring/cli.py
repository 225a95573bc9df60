"""Command-line front end.

Ring specs are inline strings or JSON objects::

    cyclic:N                 integers mod N
    ut3:M                    constant-diagonal upper-triangular 3x3 matrices over Z/M
    product:A+B[+C...]       direct product of inline specs
    quotient:SPEC/g1,g2      quotient by the two-sided ideal generated by g1, g2
    tables:PATH              table file (order, addition table, multiplication table, zero, one)

Exit codes: 0 success, 1 a theorem check was refuted, 2 usage or parse
error, 3 an enumeration cap was exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import config
from .errors import CapExceeded, NilringError
from .ideals import Sidedness, enumerate_ideals
from .localization import localize_ideal, localize_ring, multiplicative_closure, non_zero_divisors
from .predicates import classify_lattice, is_nil_essential, is_semisimple, jacobson_radical, nilradical, socle
from .registry import BY_ID, EXISTENCE_IDS, PROBES, REGISTRY, hunt_counterexample, run_check, run_suite, summarize, ut3_shape_names
from .reports import dumps
from .specs import build_ring, default_corpus_path, load_corpus, parse_spec

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def _emit(args, payload: dict, text: str) -> None:
    print(dumps(payload) if args.format == "json" else text)


def _ring(args):
    spec = parse_spec(args.ring)
    return spec, build_ring(spec)


def _names(ring, mask_ideal) -> str:
    return "{" + ", ".join(mask_ideal.names()) + "}"


def cmd_describe(args) -> int:
    spec, ring = _ring(args)
    side = Sidedness.TWO_SIDED if ring.commutative else Sidedness.LEFT
    units = [ring.name(x) for x in range(ring.order) if ring.unit_elements[x]]
    idem = [ring.name(x) for x in range(ring.order) if ring.idempotent_elements[x]]
    jac, soc = jacobson_radical(ring), socle(ring, side)
    nil = nilradical(ring) if ring.commutative else None
    payload = {
        "ring": spec.label,
        "order": ring.order,
        "commutative": ring.commutative,
        "zero_ring": ring.order == 1,
        "units": units,
        "idempotents": idem,
        "nilradical": nil.to_json() if nil is not None else None,
        "jacobson_radical": jac.to_json(),
        "socle": soc.to_json(),
        "socle_sidedness": side.value,
        "semisimple": is_semisimple(ring),
    }
    lines = [
        f"ring: {spec.label}" + ("  (zero ring)" if ring.order == 1 else ""),
        f"order: {ring.order}",
        f"commutative: {str(ring.commutative).lower()}",
        f"units: {', '.join(units)}",
        f"idempotents: {', '.join(idem)}",
    ]
    if nil is not None:
        lines.append(f"nilradical: {nil.label()} = {_names(ring, nil)}")
    lines += [
        f"jacobson radical: {jac.label()} = {_names(ring, jac)}",
        f"socle ({side.value}): {soc.label()} = {_names(ring, soc)}",
        f"semisimple: {str(payload['semisimple']).lower()}",
    ]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_ideals(args) -> int:
    spec, ring = _ring(args)
    side = Sidedness.parse(args.sidedness) if args.sidedness else (Sidedness.TWO_SIDED if ring.commutative else Sidedness.LEFT)
    lattice = enumerate_ideals(ring, side)
    flags = classify_lattice(lattice)
    shapes = ut3_shape_names(ring, lattice)
    rows = []
    for k, (I, fl) in enumerate(zip(lattice, flags)):
        row = {"index": k, **I.to_json(), "size": I.size, **fl.to_json()}
        if shapes:
            row["shape"] = shapes[k]
        rows.append(row)
    payload = {"ring": spec.label, "sidedness": side.value, "count": len(rows), "ideals": rows}
    cols = ["nilpotent", "essential", "nil_essential", "minimal", "maximal"]
    head = f"{'#':>3}  {'shape':<6}" if shapes else f"{'#':>3}"
    head += f"  {'generators':<22} {'size':>5}  " + "  ".join(cols) + "  index"
    lines = [f"{spec.label}: {len(rows)} {side.value} ideals", head]
    for row in rows:
        line = f"{row['index']:>3}" + (f"  {row['shape']:<6}" if shapes else "")
        gens = "(" + ", ".join(row["generators"]) + ")" if row["generators"] else "(0)"
        line += f"  {gens:<22} {row['size']:>5}  "
        line += "  ".join(f"{str(row[c]).lower():<{len(c)}}" for c in cols)
        line += f"  {row['nilpotency_index'] if row['nilpotency_index'] is not None else '-'}"
        lines.append(line)
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _check_exit(reports: list[dict]) -> int:
    if any(r["status"] == "refuted" for r in reports):
        return EXIT_REFUTED
    if any(r["status"] == "skipped" and (r["reason"] or "").startswith("cap") for r in reports):
        return EXIT_CAP
    return EXIT_OK


def cmd_check(args) -> int:
    spec = parse_spec(args.ring)
    report = run_check(args.check_id, spec)
    _emit(args, report.to_json(), report.to_text())
    return _check_exit([report.to_json()])


def _corpus(args):
    return load_corpus(args.corpus or default_corpus_path())


def cmd_suite(args) -> int:
    corpus = _corpus(args)
    selection = args.checks.split(",") if args.checks else corpus.selection
    reports = run_suite(corpus.specs, selection, jobs=args.jobs, caps=corpus.caps)
    for r in reports:
        r.pop("elapsed_seconds", None)
    summary = summarize(reports)
    if args.format == "json":
        print(dumps({"reports": reports, "summary": summary}))
    else:
        for r in reports:
            line = f"{r['check_id']:<6} {r['ring']:<28} {r['status']}"
            if r["sidedness"]:
                line += f"  [{r['sidedness']}]"
            if "instances" in r["statistics"]:
                line += f"  instances={r['statistics']['instances']}"
            if r["reason"]:
                line += f"  ({r['reason']})"
            print(line)
        counts = ", ".join(f"{k}={v}" for k, v in sorted(summary["counts"].items()))
        print(f"summary: {counts}")
        print(f"confirmed counterexample checks: {', '.join(summary['confirmed_existence_checks']) or 'none'}")
        if summary["refuted"]:
            print(f"refuted: {', '.join(summary['refuted'])}")
    return EXIT_REFUTED if summary["refuted"] else EXIT_OK


def cmd_hunt(args) -> int:
    corpus = _corpus(args)
    result = hunt_counterexample(args.claim_id, corpus.specs, args.budget)
    _emit(args, result.to_json(), result.to_text())
    refutes_theorem = args.claim_id in BY_ID and args.claim_id not in EXISTENCE_IDS and result.witness is not None
    return EXIT_REFUTED if refutes_theorem else EXIT_OK


def cmd_localize(args) -> int:
    spec, ring = _ring(args)
    if args.invert:
        S = multiplicative_closure(ring, [ring.index(t.strip()) for t in args.invert.split(",") if t.strip()])
    else:
        S = non_zero_divisors(ring)
    loc = localize_ring(ring, S)
    lattice = enumerate_ideals(ring, Sidedness.TWO_SIDED)
    rows = []
    for I in lattice:
        local = localize_ideal(loc, I)
        rows.append({
            "ideal": I.to_json(),
            "localized": local.to_json(),
            "nil_essential": is_nil_essential(I).holds,
            "localized_nil_essential": is_nil_essential(local).holds,
        })
    payload = {**loc.to_json(), "base": spec.label, "ideals": rows}
    table = ", ".join(f"{k}->{v}" for k, v in loc.canonical.to_json().items())
    lines = [
        f"ring: {spec.label}",
        f"S: {{{', '.join(S.names())}}}",
        f"kernel: {{{', '.join(loc.torsion.names())}}}",
        f"localized order: {loc.result.order}",
        f"canonical map: {table}",
        f"{'I':<16} {'S^-1 I':<16} {'I nil-essential':<16} S^-1 I nil-essential",
    ]
    for I, row in zip(lattice, rows):
        local_gens = row["localized"]["generators"]
        local = "(" + ", ".join(local_gens) + ")" if local_gens else "(0)"
        lines.append(f"{I.label():<16} {local:<16} {str(row['nil_essential']).lower():<16} {str(row['localized_nil_essential']).lower()}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nilring", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--max-order", type=int, default=None, help="largest ring order accepted (env NILRING_MAX_ORDER)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("describe", parents=[common], help="order, units, idempotents and radicals")
    p.add_argument("ring")
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("ideals", parents=[common], help="ideal lattice with classification flags")
    p.add_argument("ring")
    p.add_argument("--sidedness", choices=[s.value for s in Sidedness])
    p.set_defaults(func=cmd_ideals)

    ids = [c.check_id for c in REGISTRY]
    p = sub.add_parser("check", parents=[common], help="run one registry check on one ring")
    p.add_argument("check_id", choices=ids + list(PROBES))
    p.add_argument("ring")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("suite", parents=[common], help="run the registry over a corpus")
    p.add_argument("--corpus", help="corpus JSON (default: bundled corpus)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--checks", help="comma-separated check ids")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("hunt", parents=[common], help="search a corpus for a counterexample")
    p.add_argument("claim_id", choices=ids + list(PROBES))
    p.add_argument("--corpus")
    p.add_argument("--budget", type=int, default=100_000)
    p.set_defaults(func=cmd_hunt)

    p = sub.add_parser("localize", parents=[common], help="ring of fractions and localized ideals")
    p.add_argument("ring")
    p.add_argument("--invert", help="comma-separated element names to invert (default: all non-zero-divisors)")
    p.set_defaults(func=cmd_localize)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1 or (getattr(args, "budget", 1) or 0) < 0:
        parser.error("--jobs must be positive and --budget non-negative")
    try:
        if args.max_order is not None:
            config.set_max_order(args.max_order)
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (NilringError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        config.set_max_order(None)


if __name__ == "__main__":
    sys.exit(main())
