"""Command-line front end.

Subcommands: poly, interval, extend, verify-reduction, scan.  Every
command prints a JSON envelope {format, command, inputs, result, timing}
to stdout.  Exit codes: 0 success, 1 mathematical disagreement found,
2 malformed input or configuration, 3 precondition violation.
"""

from __future__ import annotations

import argparse
import sys as _sys
import time

from . import serialize
from .bruhat import interval as build_interval
from .bruhat import parabolic_interval
from .core import INF, CoxeterSystem, InputError, PreconditionError
from .extension import extend_system, verify_reduction_sweep
from .invariance import ClassX, scan as run_scan
from .klpoly import get_table
from .serialize import canonical_dumps, poly_to_jsonable, system_fingerprint

EXIT_OK = 0
EXIT_DISAGREEMENT = 1
EXIT_INPUT = 2
EXIT_PRECONDITION = 3


def _parse_quotient(sys: CoxeterSystem, text: str) -> frozenset:
    if not text:
        return frozenset()
    names = [t for t in text.replace(",", " ").split() if t]
    return frozenset(sys.generator(n) for n in names)


def _parse_policy(sys: CoxeterSystem, text: str) -> dict:
    policy = {}
    if not text:
        return policy
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise InputError(f"policy item {item!r} must look like s1=3")
        name, _, value = item.partition("=")
        s = sys.generator(name.strip())
        value = value.strip()
        if value == "inf":
            policy[s] = INF
        else:
            try:
                policy[s] = int(value)
            except ValueError:
                raise InputError(f"bad policy bond {value!r}") from None
    return policy


def _parse_class_x(text: str) -> ClassX:
    values = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        values.append(INF if item == "inf" else int(item))
    return ClassX(values)


def _emit(command: str, inputs: dict, result: dict, started: float) -> None:
    envelope = {
        "format": 1,
        "command": command,
        "inputs": inputs,
        "result": result,
        "timing": round(time.perf_counter() - started, 6),
    }
    _sys.stdout.write(canonical_dumps(envelope))


def _load_cache(args, table) -> dict | None:
    if not getattr(args, "cache", None):
        return None
    fp = system_fingerprint(table.sys)
    counts = serialize.cache_load(args.cache, {fp: table})
    return {"preloaded": counts[fp]}


def _store_cache(args, table) -> int:
    if not getattr(args, "cache", None):
        return 0
    return serialize.cache_append(args.cache, system_fingerprint(table.sys), table)


# -- poly ------------------------------------------------------------------


def cmd_poly(args) -> int:
    started = time.perf_counter()
    name, sys, _spec = serialize.load_system(args.system)
    J = _parse_quotient(sys, args.quotient)
    u = sys.element(args.u)
    v = sys.element(args.v)
    table = get_table(sys)
    cache_info = _load_cache(args, table)
    x = args.type
    methods = ("recursion", "duality") if args.method == "both" else (args.method,)
    polys = {}
    if args.kind == "R":
        polys["recursion"] = table.parabolic_r(u, v, J, x)
    else:
        for method in methods:
            if method == "recursion":
                polys[method] = table.parabolic_kl(u, v, J, x)
            else:
                polys[method] = table.parabolic_kl_duality(u, v, J, x)
    values = list(polys.values())
    agree = all(p == values[0] for p in values)
    result = {
        "u": sys.word_str(u),
        "v": sys.word_str(v),
        "quotient": sorted(sys.names[s] for s in J),
        "type": x,
        "kind": args.kind,
        "polynomials": {m: poly_to_jsonable(p) for m, p in polys.items()},
    }
    if args.method == "both" and args.kind == "P":
        result["agree"] = agree
    if cache_info is not None:
        cache_info["hits"] = table.cache_hits
        cache_info["stored"] = _store_cache(args, table)
        result["cache"] = cache_info
    _emit("poly", {"system": name}, result, started)
    return EXIT_OK if agree else EXIT_DISAGREEMENT


# -- interval -----------------------------------------------------------------


def cmd_interval(args) -> int:
    started = time.perf_counter()
    name, sys, _spec = serialize.load_system(args.system)
    u = sys.element(args.u)
    v = sys.element(args.v)
    if args.quotient:
        J = _parse_quotient(sys, args.quotient)
        ivl = parabolic_interval(sys, u, v, J)
    else:
        ivl = build_interval(sys, u, v)
    elements = [
        {
            "word": sys.word_str(z),
            "length": len(z),
            "rank": ivl.ranks[i],
            "marked": ivl.is_marked(i) if ivl.marked is not None else None,
        }
        for i, z in enumerate(ivl.ground)
    ]
    result = {
        "u": sys.word_str(u),
        "v": sys.word_str(v),
        "size": ivl.size,
        "elements": elements,
        "covers": [list(c) for c in ivl.covers],
    }
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(serialize.interval_to_dot(ivl))
        result["dot"] = args.dot
    _emit("interval", {"system": name}, result, started)
    return EXIT_OK


# -- extend ------------------------------------------------------------------------


def cmd_extend(args) -> int:
    started = time.perf_counter()
    name, sys, _spec = serialize.load_system(args.system)
    J = _parse_quotient(sys, args.quotient)
    policy = _parse_policy(sys, args.policy)
    class_x = _parse_class_x(args.class_x) if args.class_x else None
    ext = extend_system(sys, J, policy=policy, class_x=class_x)
    spec = serialize.system_to_spec(ext.extended, f"{name}~ext")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(canonical_dumps(spec))
    result = {
        "quotient": sorted(sys.names[s] for s in J),
        "adjoined": ext.extended.names[ext.stilde],
        "spec": spec,
    }
    if args.out:
        result["out"] = args.out
    _emit("extend", {"system": name}, result, started)
    return EXIT_OK


# -- verify-reduction ------------------------------------------------------------------


def cmd_verify_reduction(args) -> int:
    started = time.perf_counter()
    name, sys, _spec = serialize.load_system(args.system)
    J = _parse_quotient(sys, args.quotient)
    policy = _parse_policy(sys, args.policy)
    class_x = _parse_class_x(args.class_x) if args.class_x else None
    ext = extend_system(sys, J, policy=policy, class_x=class_x)
    base_table = get_table(sys)
    cache_info = _load_cache(args, base_table)
    report = verify_reduction_sweep(ext, args.max_length)
    records = [
        {
            "u": sys.word_str(r.u),
            "v": sys.word_str(r.v),
            "x": r.x,
            "kind": r.kind,
            "lhs": poly_to_jsonable(r.lhs),
            "rhs": poly_to_jsonable(r.rhs),
            "equal": r.equal and r.paths_agree,
        }
        for r in report.records
    ]
    result = {
        "quotient": sorted(sys.names[s] for s in J),
        "extended": serialize.system_to_spec(ext.extended, f"{name}~ext"),
        "summary": report.summary(),
        "records": records,
    }
    if cache_info is not None:
        cache_info["hits"] = base_table.cache_hits
        cache_info["stored"] = _store_cache(args, base_table)
        result["cache"] = cache_info
    _emit("verify-reduction", {"system": name}, result, started)
    return EXIT_OK if report.all_equal else EXIT_DISAGREEMENT


# -- scan ---------------------------------------------------------------------------------


def cmd_scan(args) -> int:
    started = time.perf_counter()
    config = serialize.load_scan_config(args.config)
    cache_counts = None
    if args.cache:
        tables = {}
        for _name, system, _spec in config.entries:
            tables[system_fingerprint(system)] = get_table(system)
        cache_counts = serialize.cache_load(args.cache, tables)
    report = run_scan(config)
    json_path = args.out + ".json"
    csv_path = args.out + ".csv"
    with open(json_path, "w") as fh:
        fh.write(canonical_dumps(report.to_jsonable()))
    with open(csv_path, "w") as fh:
        fh.write(report.csv_text())
    stored = 0
    if args.cache:
        for _name, system, _spec in config.entries:
            stored += serialize.cache_append(
                args.cache, system_fingerprint(system), get_table(system)
            )
    result = {
        "report": json_path,
        "csv": csv_path,
        "summary": report.to_jsonable()["summary"],
    }
    if cache_counts is not None:
        result["cache"] = {"preloaded": sum(cache_counts.values()), "stored": stored}
    _emit("scan", {"config": args.config}, result, started)
    return EXIT_OK if report.ok else EXIT_DISAGREEMENT


# -- argument wiring -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coxkl",
        description=(
            "Parabolic Kazhdan-Lusztig and R-polynomials over Coxeter systems, "
            "maximal-quotient extensions, and invariance scanning."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", help="compute one polynomial")
    p.add_argument("--system", required=True, help="system spec JSON file")
    p.add_argument("--u", default="", help="lower element, space-separated names")
    p.add_argument("--v", required=True, help="upper element")
    p.add_argument("--quotient", default="", help="names in J, comma separated")
    p.add_argument("--type", default="q", choices=["q", "-1"])
    p.add_argument("--kind", default="P", choices=["P", "R"])
    p.add_argument("--method", default="recursion",
                   choices=["recursion", "duality", "both"])
    p.add_argument("--cache", default=None, help="JSON-lines polynomial cache")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("interval", help="build a Bruhat interval")
    p.add_argument("--system", required=True)
    p.add_argument("--u", default="")
    p.add_argument("--v", required=True)
    p.add_argument("--quotient", default="")
    p.add_argument("--dot", default=None, help="write a DOT Hasse diagram here")
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser("extend", help="adjoin a maximal-quotient generator")
    p.add_argument("--system", required=True)
    p.add_argument("--quotient", required=True)
    p.add_argument("--policy", default="", help="bond overrides, e.g. s1=3,s3=inf")
    p.add_argument("--class-x", dest="class_x", default=None,
                   help="restrict bonds to this class, e.g. 3,inf")
    p.add_argument("--out", default=None, help="write the extended spec here")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("verify-reduction",
                       help="check polynomial transport to the extension")
    p.add_argument("--system", required=True)
    p.add_argument("--quotient", required=True)
    p.add_argument("--policy", default="")
    p.add_argument("--class-x", dest="class_x", default=None)
    p.add_argument("--max-length", dest="max_length", type=int, required=True)
    p.add_argument("--cache", default=None)
    p.set_defaults(func=cmd_verify_reduction)

    p = sub.add_parser("scan", help="run an invariance scan from a config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True, help="output prefix for .json/.csv")
    p.add_argument("--cache", default=None)
    p.set_defaults(func=cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    raise SystemExit(main())
