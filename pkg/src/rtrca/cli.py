"""Command-line front end.

Subcommands: build (emit a netlist file), sim (run vectors against the
addition oracle), verify (static and dynamic timing checks), table4 (the
analytic cycle-time table).  Exit codes: 0 ok, 1 check failure, 2 usage or
parse error.  The RTRCA_DELAYS environment variable names a default delay
config file.
"""

from __future__ import annotations

import argparse
import os
import sys
from decimal import Decimal

from .adders import AdderKind, RcaDescriptor, build_rca
from .gates import ConfigError, DelayConfig, GateType
from .netlist import Netlist, validate
from .sim import (
    DeadlockError,
    exhaustive_vectors,
    parse_vector_file,
    random_vectors,
    run_handshake_cycle,
    run_skewed_rtz,
    run_vectors,
)
from .timing import (
    BUILTIN_ROWS,
    generate_table,
    load_rows,
    max_golden_deviation,
    table_to_csv,
)
from .vcd import write_vcd
from .verify import (
    FULL_ADDER_COVERS,
    check_disjoint_cover,
    check_relative_timing,
    classify_indication,
    detect_orphans,
    find_rtz_skew_threshold,
    static_rt_slack,
)

_KINDS = {kind.value: kind for kind in AdderKind}


def _delays_from(args) -> DelayConfig:
    path = args.delays or os.environ.get("RTRCA_DELAYS")
    if path:
        return DelayConfig.load(path)
    return DelayConfig.default()


def _census_line(netlist: Netlist) -> str:
    counts = netlist.census()
    parts = ", ".join(f"{t.value}:{counts[t]}" for t in GateType if t in counts)
    return f"{len(netlist.gates)} gates ({parts})"


def cmd_build(args) -> int:
    netlist = build_rca(_KINDS[args.kind], args.n)
    netlist.save(args.out)
    print(f"wrote {args.out}: {_census_line(netlist)}")
    return 0


def cmd_sim(args) -> int:
    delays = _delays_from(args)
    netlist = build_rca(_KINDS[args.kind], args.n)
    if args.vectors:
        vectors = parse_vector_file(args.vectors)
        source = f"file({args.vectors})"
    elif args.exhaustive:
        vectors = list(exhaustive_vectors(args.n))
        source = f"exhaustive(width={args.n})"
    else:
        vectors = list(random_vectors(args.n, args.random, args.seed))
        source = (f"random(count={args.random}, seed={args.seed}, "
                  f"generator=mersenne-twister)")
    report = run_vectors(netlist, delays, vectors, source=source)
    print(report.summary())
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            report.to_csv(fh)
        print(f"wrote {args.csv}")
    if args.vcd:
        a, b, cin = vectors[0]
        _, trace = run_handshake_cycle(netlist, delays, a, b, cin)
        write_vcd(trace, args.vcd, comment=f"vector {a:x} {b:x} {cin:x}")
        print(f"wrote {args.vcd} (first vector)")
    return 0 if report.all_correct else 1


def cmd_verify(args) -> int:
    delays = _delays_from(args)
    kind = _KINDS[args.kind]
    netlist = build_rca(kind, args.n)
    desc = RcaDescriptor(kind, args.n)
    rows: list[tuple[str, str, str]] = []
    failed = False

    def record(check: str, ok: bool, witness: str = "") -> None:
        nonlocal failed
        status = "ok" if ok else "FAIL"
        if not ok:
            failed = True
        rows.append((check, status, witness))
        line = f"{check}: {status}"
        if witness:
            line += f" ({witness})"
        print(line)

    violations = validate(netlist)
    record("netlist-validation", not violations, "; ".join(violations))

    if kind is AdderKind.EARLY_OUTPUT and args.n >= 2:
        slack = static_rt_slack(netlist, delays)
        expected = -delays.delay_ps(GateType.AO21)
        record(
            "static-slack",
            slack.slack_ps == expected,
            f"direct {slack.direct_ns:.3f} ns, indirect {slack.indirect_ns:.3f} ns, "
            f"slack {slack.slack_ns:.3f} ns",
        )

    probe_vectors = [(0, 0, 0), ((1 << args.n) - 1, (1 << args.n) - 1, 0),
                     ((1 << args.n) - 1, 0, 1)]
    uniform_ok = True
    uniform_detail = ""
    for a, b, cin in probe_vectors:
        _, trace = run_handshake_cycle(netlist, delays, a, b, cin)
        rt = check_relative_timing(trace, desc) if args.n >= 2 else []
        posts = [f for f in detect_orphans(trace)
                 if f.classification == "post-completion"]
        if rt or posts:
            uniform_ok = False
            uniform_detail = (f"vector {a:x} {b:x} {cin}: "
                              f"{len(rt)} ordering, {len(posts)} post-completion")
            break
    record("uniform-reset-ordering", uniform_ok, uniform_detail)

    fa = build_rca(kind, 1)
    verdict = classify_indication(fa, delays)
    expected_class = "early" if kind is AdderKind.EARLY_OUTPUT else "strong"
    record("indication-class", verdict.klass == expected_class,
           f"classified {verdict.klass}"
           + (", early-reset" if verdict.early_reset else "")
           + (", early-set" if verdict.early_set else ""))

    covers_ok = True
    for rail, cover in FULL_ADDER_COVERS.items():
        result = check_disjoint_cover(cover)
        if not result.disjoint:
            covers_ok = False
            record(f"disjoint-cover-{rail}", False, f"products {result.offending}")
    if covers_ok:
        record("disjoint-covers", True, "4 covers orthogonal")

    if args.skew is not None:
        if args.n < 2 or kind is not AdderKind.EARLY_OUTPUT:
            print("skew analysis needs an early-output cascade of width >= 2",
                  file=sys.stderr)
            return 2
        a, b, cin = 1, 0, 1
        skews = [args.skew] + [0.0] * (args.n - 1)
        trace = run_skewed_rtz(netlist, delays, a, b, cin, skews)
        for v in check_relative_timing(trace, desc):
            rows.append(("skewed-rtz-ordering", "violation",
                         f"stage {v.stage}, margin {v.margin_ns:.3f} ns"))
            print(f"skewed-rtz-ordering: violation at stage {v.stage}, "
                  f"margin {v.margin_ns:.3f} ns")
        orphans = detect_orphans(trace)
        for f in orphans:
            rows.append(("skewed-rtz-orphan", f.classification,
                         f"{f.net} at {f.time_ps / 1000:.3f} ns"))
            print(f"skewed-rtz-orphan: {f.net} at {f.time_ps / 1000:.3f} ns "
                  f"({f.classification})")

    if args.find_threshold:
        threshold = find_rtz_skew_threshold(netlist, delays, 1, 0, 1)
        rows.append(("rtz-skew-threshold", "info", f"{threshold / 1000:.3f} ns"))
        print(f"rtz-skew-threshold: {threshold / 1000:.3f} ns")

    if args.csv:
        import csv as _csv

        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            writer = _csv.writer(fh)
            writer.writerow(["check", "status", "witness"])
            writer.writerows(rows)
        print(f"wrote {args.csv}")
    return 1 if failed else 0


def cmd_table4(args) -> int:
    rows = load_rows(args.rows) if args.rows else BUILTIN_ROWS
    table = generate_table(rows)
    lengths = (4, 8, 16, 24, 28)
    header = f"{'row':<16}" + "".join(f"{f'm={m}':>8}" for m in lengths) + f"{'mean':>8}"
    print(header)
    for entry in table:
        cells = "".join(f"{str(c):>8}" for c in entry.cells)
        print(f"{entry.row.label:<16}{cells}{str(entry.mean):>8}")
    if not args.rows:
        dev = max_golden_deviation(table)
        print(f"max deviation from reference table: {dev} ns")
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            table_to_csv(table, fh)
        print(f"wrote {args.out}")
    return 0


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rtrca",
        description="Dual-rail asynchronous adder simulation and verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="generate a netlist file")
    p_build.add_argument("--kind", choices=sorted(_KINDS), default="early-output")
    p_build.add_argument("--n", type=_positive_int, default=32)
    p_build.add_argument("--out", default="netlist.json")
    p_build.set_defaults(func=cmd_build)

    p_sim = sub.add_parser("sim", help="simulate handshake cycles over vectors")
    p_sim.add_argument("--kind", choices=sorted(_KINDS), default="early-output")
    p_sim.add_argument("--n", type=_positive_int, default=32)
    src = p_sim.add_mutually_exclusive_group(required=True)
    src.add_argument("--vectors", help="file of 'a b cin' hex triples")
    src.add_argument("--random", type=_positive_int, help="count of random vectors")
    src.add_argument("--exhaustive", action="store_true")
    p_sim.add_argument("--seed", type=int, default=1)
    p_sim.add_argument("--delays", help="delay config file (NAME=ns lines)")
    p_sim.add_argument("--csv", help="write the per-vector report here")
    p_sim.add_argument("--vcd", help="write the first vector's trace here")
    p_sim.set_defaults(func=cmd_sim)

    p_verify = sub.add_parser("verify", help="static and dynamic timing checks")
    p_verify.add_argument("--kind", choices=sorted(_KINDS), default="early-output")
    p_verify.add_argument("--n", type=_positive_int, default=2)
    p_verify.add_argument("--skew", type=float, default=None,
                          help="stage-0 reset skew in ns for the ordering check")
    p_verify.add_argument("--find-threshold", action="store_true",
                          help="bisect for the largest violation-free skew")
    p_verify.add_argument("--delays")
    p_verify.add_argument("--csv", help="write check results here")
    p_verify.set_defaults(func=cmd_verify)

    p_table = sub.add_parser("table4", help="analytic cycle-time table")
    p_table.add_argument("--out", help="write the table as CSV here")
    p_table.add_argument("--rows", help="override the latency dataset (CSV)")
    p_table.set_defaults(func=cmd_table4)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DeadlockError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
