"""Command line entry point.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad
usage.  Reports go to the ``--output`` file, else into
``$CHAR2HECKE_OUTPUT_DIR`` (one file per command) if that is set, else to
stdout.  Text reports start with a timestamp line; nothing else in a
report depends on when or how parallel the run was.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys
from pathlib import Path

from . import adapted, checks, kernelspaces, qseries, recurrence
from .gf2poly import to_hex, to_text

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
ENV_OUTPUT_DIR = "CHAR2HECKE_OUTPUT_DIR"


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def _primes(text: str) -> list[int]:
    ps = [int(p) for p in text.split(",") if p]
    for p in ps:
        if not qseries.is_prime(p) or p <= 3:
            raise argparse.ArgumentTypeError(f"{p} is not a prime > 3")
    return ps


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--output", "-o", type=Path, default=None, help="report file")
    common.add_argument("--jobs", "-j", type=_positive, default=1, help="worker processes")

    parser = argparse.ArgumentParser(prog="char2hecke", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)

    cn = groups.add_parser("cn", help="the C_n recurrence").add_subparsers(dest="command", required=True)
    p = cn.add_parser("gen", parents=[common], help="tabulate C_0..C_max")
    p.add_argument("--max", type=_nonneg, required=True)
    p = cn.add_parser("express", parents=[common], help="express every C_4m, 4m < max")
    p.add_argument("--max", type=_positive, required=True)
    p = cn.add_parser("degree-law", parents=[common], help="degree of C_n for n <= max")
    p.add_argument("--max", type=_nonneg, required=True)

    kg = groups.add_parser("kernel", help="the spaces K_m").add_subparsers(dest="command", required=True)
    p = kg.add_parser("verify", parents=[common], help="dimension and degrees of K_m")
    p.add_argument("--max-m", type=_nonneg, required=True)
    p = kg.add_parser("basis", parents=[common], help="echelon basis of K_m")
    p.add_argument("--m", type=_nonneg, required=True)
    p = kg.add_parser("lemma211", parents=[common], help="(U+I)^2 kernels on L and L*")
    p.add_argument("--max-m", type=_nonneg, required=True)

    sg = groups.add_parser("series", help="q-expansion checks").add_subparsers(dest="command", required=True)
    p = sg.add_parser("check-u3", parents=[common], help="U_3 agrees with U on r^n")
    p.add_argument("--max", type=_nonneg, default=64)
    p.add_argument("--precision", "-N", type=_positive, default=4096)
    p = sg.add_parser("check-f", parents=[common], help="series of F, G, D vs enumeration")
    p.add_argument("--precision", "-N", type=_positive, default=10000)

    ag = groups.add_parser("adapted", help="adapted basis of K").add_subparsers(dest="command", required=True)
    p = ag.add_parser("build", parents=[common], help="grid m_ij up to a grade")
    p.add_argument("--grade", type=_nonneg, required=True)
    p.add_argument("--m", type=_nonneg, default=None, help="starting K_m (default 4*grade+4)")
    p = ag.add_parser("tp-series", parents=[common], help="T_p as a series in X, Y")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--grade", type=_nonneg, required=True)
    p = ag.add_parser("stabilize", parents=[common], help="K1/K5 patterns of T_p")
    p.add_argument("--primes", type=_primes, default=[5, 7, 11, 13])
    p.add_argument("--precision", "-N", type=_positive, default=4096)

    vg = groups.add_parser("verify", help="all checks").add_subparsers(dest="command", required=True)
    p = vg.add_parser("all", parents=[common], help="run every check")
    p.add_argument("--level", choices=tuple(checks.LEVELS), default="quick")
    return parser


def _header() -> str:
    return f"# char2hecke report {datetime.datetime.now(datetime.timezone.utc).isoformat(timespec='seconds')}\n"


def _emit(args, body: str):
    target = args.output
    if target is None and os.environ.get(ENV_OUTPUT_DIR):
        ext = {"text": "txt", "json": "json", "csv": "csv"}[args.format]
        target = Path(os.environ[ENV_OUTPUT_DIR]) / f"{args.group}-{args.command}.{ext}"
    if args.format == "text":
        body = _header() + body
    if target is None:
        sys.stdout.write(body)
    else:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(body)


def _lines(rows) -> str:
    return "".join(r + "\n" for r in rows)


def cmd_cn_gen(args) -> int:
    if args.format == "csv":
        _emit(args, recurrence.write_csv(args.max))
    elif args.format == "json":
        rows = [{"n": n, "text": to_text(c)} for n, c in enumerate(recurrence.c_seq(args.max))]
        _emit(args, json.dumps(rows) + "\n")
    else:
        _emit(args, _lines(f"C_{n} = {to_text(c)}" for n, c in enumerate(recurrence.c_seq(args.max))))
    return EXIT_OK


def cmd_cn_express(args) -> int:
    mmax = (args.max - 1) // 4
    reports, failed = [], None
    for rep in recurrence.replay(mmax):
        reports.append(rep)
        if not rep.verified and failed is None:
            failed = rep
    if args.format == "json":
        body = _lines(r.to_json() for r in reports)
    elif args.format == "csv":
        body = "m,verified,support\n" + _lines(
            f"{r.m},{int(r.verified)},{' '.join(map(str, r.support))}" for r in reports)
    else:
        summary = (f"all C_4m, 4m<{args.max}, expressed" if failed is None
                   else f"FAILED at m={failed.m}")
        body = summary + "\n" + _lines(
            f"C_{4 * r.m} = " + (" + ".join(f"C_{k}" for k in r.support) or "0") for r in reports)
    _emit(args, body)
    return EXIT_OK if failed is None else EXIT_FAIL


def cmd_cn_degree_law(args) -> int:
    rep = recurrence.degree_law_check(args.max)
    data = {"nmax": rep.nmax, "passed": rep.passed, "first_violation": rep.first_violation}
    if args.format == "json":
        _emit(args, json.dumps(data) + "\n")
    else:
        _emit(args, f"degree law for n<={rep.nmax}: " + ("pass" if rep.passed else f"fails at n={rep.first_violation}") + "\n")
    return EXIT_OK if rep.passed else EXIT_FAIL


def _km_report_safe(m: int) -> dict:
    try:
        return kernelspaces.km_report(m)
    except ArithmeticError as exc:
        return {"m": m, "dim": None, "gdegrees": [], "squared_kernels": False, "pr1": False, "error": str(exc)}


def cmd_kernel_verify(args) -> int:
    reports = checks._map(_km_report_safe, range(args.max_m + 1), args.jobs)
    ok = all(r["dim"] == r["m"] + 1 and r["gdegrees"] == list(range(0, 4 * r["m"] + 1, 4))
             and r["squared_kernels"] and r["pr1"] for r in reports)
    if args.format == "json":
        body = _lines(json.dumps(r, separators=(",", ":")) for r in reports)
    elif args.format == "csv":
        body = "m,dim,squared_kernels,pr1\n" + _lines(
            f"{r['m']},{r['dim']},{int(r['squared_kernels'])},{int(r['pr1'])}" for r in reports)
    else:
        head = f"dim K_m = m+1 for all m<={args.max_m}" if ok else "FAILED"
        body = head + "\n" + _lines(
            f"m={r['m']} dim={r['dim']} squared_kernels={r['squared_kernels']} pr1={r['pr1']}" for r in reports)
    _emit(args, body)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_kernel_basis(args) -> int:
    basis = kernelspaces.km_basis(args.m)
    if args.format == "json":
        body = json.dumps({"m": args.m, "g_hex": [to_hex(e.g) for e in basis.elements]}) + "\n"
    else:
        body = _lines(f"g_{j} = {to_text(e.g)}" for j, e in enumerate(basis.elements))
    _emit(args, body)
    return EXIT_OK


def cmd_kernel_squared_kernels(args) -> int:
    res = checks.check_squared_kernels(args.max_m, args.jobs)
    _emit(args, json.dumps({"passed": res.passed, "detail": res.detail}) + "\n"
          if args.format == "json" else res.line() + "\n")
    return EXIT_OK if res.passed else EXIT_FAIL


def cmd_series_check_u3(args) -> int:
    if args.precision // 3 <= 2 * args.max:
        raise UsageError("--precision must satisfy precision // 3 > 2 * max")
    res = checks.check_u3(args.max, args.precision)
    _emit(args, res.line() + "\n")
    return EXIT_OK if res.passed else EXIT_FAIL


def cmd_series_check_f(args) -> int:
    res = checks.check_series_cross(args.precision)
    _emit(args, res.line() + "\n")
    return EXIT_OK if res.passed else EXIT_FAIL


def cmd_adapted_build(args) -> int:
    grid = adapted.build_adapted(args.grade, args.m)
    try:
        transcript = grid.verify_exact()
        ok = True
    except AssertionError as exc:
        transcript, ok = [f"FAILED: {exc}"], False
    if args.format == "json":
        body = grid.manifest_json() + "\n"
    else:
        body = _lines([f"grade {args.grade} grid inside K_{grid.model.m}"]
                      + [f"m[{i},{j}]: g = {to_text(grid.element(i, j).g)}" for i, j in grid.keys()]
                      + transcript)
    _emit(args, body)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_adapted_tp_series(args) -> int:
    if not qseries.is_prime(args.p) or args.p <= 3:
        raise UsageError(f"--p must be a prime > 3, got {args.p}")
    grid = adapted.build_adapted(args.grade)
    try:
        u = adapted.tp_as_xy_series(args.p, args.grade, grid)
    except adapted.NoConsistentSeries as exc:
        _emit(args, f"FAILED: {exc}\n")
        return EXIT_FAIL
    if args.format == "json":
        body = adapted.series_json(args.p, args.grade, u) + "\n"
    else:
        terms = " + ".join(f"X^{a} Y^{b}" for a, b in sorted(u)) or "0"
        body = f"T_{args.p} = {terms} + O(grade {args.grade + 1})\n"
    _emit(args, body)
    return EXIT_OK


def cmd_adapted_stabilize(args) -> int:
    rep = adapted.stabilization_checks(tuple(args.primes), args.precision)
    if args.format == "json":
        body = json.dumps({"N": rep.N, "results": rep.results}) + "\n"
    else:
        body = _lines(f"{'PASS' if v else 'FAIL'}  {k}" for k, v in rep.results.items())
    _emit(args, body)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_verify_all(args) -> int:
    results = checks.run_all(args.level, args.jobs)
    if args.format == "json":
        body = json.dumps([r.__dict__ for r in results]) + "\n"
    else:
        body = _lines(r.line() for r in results)
    _emit(args, body)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


COMMANDS = {
    ("cn", "gen"): cmd_cn_gen,
    ("cn", "express"): cmd_cn_express,
    ("cn", "degree-law"): cmd_cn_degree_law,
    ("kernel", "verify"): cmd_kernel_verify,
    ("kernel", "basis"): cmd_kernel_basis,
    ("kernel", "lemma211"): cmd_kernel_squared_kernels,
    ("series", "check-u3"): cmd_series_check_u3,
    ("series", "check-f"): cmd_series_check_f,
    ("adapted", "build"): cmd_adapted_build,
    ("adapted", "tp-series"): cmd_adapted_tp_series,
    ("adapted", "stabilize"): cmd_adapted_stabilize,
    ("verify", "all"): cmd_verify_all,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.group, args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
