"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import cp_curve, dynatomic, galois
from .exact_arith import QuadraticElement, format_rational, parse_rational
from .multipoly import MultiPoly

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_IO = 0, 1, 2, 3
MAX_PERIOD = 8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class ScanConfig:
    period: int
    height_bound: int
    output_path: Path | None = None
    format: str = "json-lines"
    worker_count: int = 1
    quadratic_only: bool = False

    def __post_init__(self):
        if not 1 <= self.period <= MAX_PERIOD:
            raise UsageError(f"period must be in 1..{MAX_PERIOD}")
        if self.height_bound < 1:
            raise UsageError("height must be at least 1")
        if self.worker_count < 1:
            raise UsageError("workers must be at least 1")
        if self.format not in ("text", "json-lines"):
            raise UsageError(f"unknown format {self.format!r}")


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))


def _cycle_line(rec: dict) -> str:
    cls = rec["classification"]
    tag = cls["case"] + (f"(m={cls['m']})" if cls["m"] is not None else "")
    disc = "Q" if rec["disc"] is None else f"Q(sqrt({rec['disc']}))"
    return (
        f"c={rec['c']} N={rec['N']} field={disc} {tag} trace={rec['trace']} "
        f"points=[{', '.join(rec['points'])}]"
    )


def _load_or_write_cache(path: Path, n: int) -> None:
    store = {}
    if path.exists():
        store = json.loads(path.read_text())
        if str(n) in store:
            poly = MultiPoly.from_json(store[str(n)])
            dynatomic.seed_cache(dynatomic.DynatomicPoly(n, poly))
            return
    store[str(n)] = dynatomic.dynatomic_poly(n).poly.to_json()
    path.write_text(json.dumps(store, sort_keys=True))


def cmd_dynatomic(args, out) -> int:
    n = args.period
    if not 1 <= n <= MAX_PERIOD:
        raise UsageError(f"period must be in 1..{MAX_PERIOD}")
    if args.cache_dynatomic:
        _load_or_write_cache(Path(args.cache_dynatomic), n)
    dp = dynatomic.dynatomic_poly(n)
    if args.format == "json":
        print(_dumps({"N": n, "degree_z": dp.degree, "poly": dp.poly.to_json()}), file=out)
    else:
        print(dp.poly, file=out)
        print(
            f"# N = {n}: degree {dp.degree} in z, degree {dp.poly.degree('c')} in c, "
            f"{len(dp.poly.terms)} terms",
            file=out,
        )
    return EXIT_OK


def cmd_scan(cfg: ScanConfig, out, cache: str | None = None) -> int:
    if cache:
        _load_or_write_cache(Path(cache), cfg.period)
    report = galois.conjecture_scan(
        cfg.period, cfg.height_bound, workers=cfg.worker_count, quadratic_only=cfg.quadratic_only
    )
    buf = io.StringIO()
    for rec in report.records:
        print(_dumps(rec) if cfg.format == "json-lines" else _cycle_line(rec), file=buf)
    summary = report.summary()
    if cfg.format == "json-lines":
        print(_dumps(summary), file=buf)
    else:
        print(
            "# summary: "
            + ", ".join(f"{k}={v}" for k, v in summary.items() if k != "summary"),
            file=buf,
        )
    if cfg.output_path is not None:
        cfg.output_path.write_text(buf.getvalue())
    else:
        out.write(buf.getvalue())
    return EXIT_OK


SIX_CYCLE_C = Fraction(-71, 48)


def six_cycle_points() -> list[QuadraticElement]:
    z0 = QuadraticElement.of(-1, Fraction(1, 12), 33)
    z1 = QuadraticElement.of(Fraction(-1, 4), Fraction(-1, 6), 33)
    z2 = QuadraticElement.of(Fraction(-1, 2), Fraction(1, 12), 33)
    return [z0, z1, z2, z0.conjugate(), z1.conjugate(), z2.conjugate()]


def cmd_verify_6cycle(args, out) -> int:
    c = parse_rational(args.c) if args.c else SIX_CYCLE_C
    pts = six_cycle_points()
    for i in args.flip or []:
        pts[i] = pts[i].conjugate()
    cycle = dynatomic.OrbitCycle(c, tuple(pts), pts[0].disc)
    checks: list[tuple[str, bool, str]] = []
    try:
        cycle.check()
        checks.append(("orbit closure", True, ""))
    except dynatomic.PreconditionError as exc:
        checks.append(("orbit closure", False, str(exc)))
    period = dynatomic.exact_period(c, pts[0], 6)
    checks.append(("exact period 6", period == 6, f"period {period}"))
    if all(ok for _, ok, _ in checks):
        cls = galois.classify(cycle)
        ok = cls.case == "CaseI" and cls.m == 1 and pts[3] == pts[0].conjugate()
        checks.append(("CaseI with z3 = conj(z0)", ok, f"{cls.case} m={cls.m}"))
        tr = galois.cycle_trace_rationality(cycle)
        checks.append(("rational trace", tr.rational, f"trace = {dynatomic.format_point(tr.trace)}"))
    for name, ok, detail in checks:
        print(f"{'PASS' if ok else 'FAIL'} {name}" + (f" ({detail})" if detail else ""), file=out)
    return EXIT_OK if all(ok for _, ok, _ in checks) else EXIT_VERIFY


def cmd_cp(args, out) -> int:
    sub = args.cp_command
    if sub == "lambdas":
        lam = cp_curve.build_lambdas()
        if args.format == "json":
            print(_dumps({"lambda1": lam.lambda1.to_json(), "lambda0": lam.lambda0.to_json()}), file=out)
        else:
            print(f"lambda1 = {lam.lambda1}", file=out)
            print(f"lambda0 = {lam.lambda0}", file=out)
        return EXIT_OK
    if sub == "identity":
        rep = cp_curve.identity_check()
        print(f"{'PASS' if rep.passed else 'FAIL'} g*h - 2*(P0^2 - P1^2*f) = {rep.difference}", file=out)
        return EXIT_OK if rep.passed else EXIT_VERIFY
    if sub == "resultant":
        try:
            cp = cp_curve.build_cp()
        except cp_curve.VerificationError as exc:
            print(f"FAIL {exc}", file=out)
            return EXIT_VERIFY
        if args.format == "json":
            print(_dumps({"content": cp.content, "primitive": cp.primitive.to_json()}), file=out)
        else:
            print(f"content = {cp.content}", file=out)
            print(f"P = {cp.primitive}", file=out)
            print(
                f"# degree {cp.primitive.degree('a')} in a, {cp.primitive.degree('b')} in b",
                file=out,
            )
        return EXIT_OK
    if sub == "cases":
        print(cp_curve.case_analysis().text(), file=out)
        return EXIT_OK
    if sub == "search":
        pts = cp_curve.search_points(args.height, workers=args.workers)
        for p in pts:
            if args.format == "text":
                print(f"({format_rational(p.a)}, {format_rational(p.b)})", file=out)
            else:
                print(_dumps(p.as_json()), file=out)
        return EXIT_OK
    if sub == "e2e":
        if args.point:
            a, b = (parse_rational(s) for s in args.point.split(","))
            pts = [cp_curve.CPRationalPoint(a, b)]
        else:
            pts = cp_curve.search_points(args.height, workers=args.workers)
        genuine = False
        for p in pts:
            rep = cp_curve.end_to_end_5cycle_check(p)
            genuine |= rep.genuine
            print(f"point ({format_rational(p.a)}, {format_rational(p.b)}):", file=out)
            for line in rep.checks:
                print(f"  {line}", file=out)
            print(f"  quadratic 5-cycle: {'YES' if rep.genuine else 'no'}", file=out)
        return EXIT_VERIFY if genuine else EXIT_OK
    raise UsageError(f"unknown cp subcommand {sub!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="quadcycles", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sp = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sp.add_parser("dynatomic", help="print the dynatomic polynomial Phi_N(z, c)")
    d.add_argument("period", type=int)
    d.add_argument("--format", choices=["text", "json"], default="text")
    d.add_argument("--cache-dynatomic", metavar="PATH")

    s = sp.add_parser("scan", help="enumerate and classify exact N-cycles for c of bounded height")
    s.add_argument("--period", type=int, required=True)
    s.add_argument("--height", type=int, required=True)
    s.add_argument("--format", choices=["text", "json-lines"], default="json-lines")
    s.add_argument("--output", metavar="PATH")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--cache-dynatomic", metavar="PATH")
    s.add_argument("--quadratic-only", action="store_true")

    v = sp.add_parser("verify-6cycle", help="check the quadratic 6-cycle at c = -71/48")
    v.add_argument("--c", help="override c (negative control)")
    v.add_argument("--flip", type=int, action="append", help="conjugate point INDEX (negative control)")

    cp = sp.add_parser("cp", help="period-5 curve pipeline")
    csp = cp.add_subparsers(dest="cp_command", required=True, parser_class=_Parser)
    for name in ("lambdas", "resultant"):
        x = csp.add_parser(name)
        x.add_argument("--format", choices=["text", "json"], default="text")
    csp.add_parser("identity")
    csp.add_parser("cases")
    for name in ("search", "e2e"):
        x = csp.add_parser(name)
        x.add_argument("--height", type=int, default=10)
        x.add_argument("--workers", type=int, default=1)
        if name == "search":
            x.add_argument("--format", choices=["text", "json-lines"], default="json-lines")
        else:
            x.add_argument("--point", help="a,b (e.g. 4,1/3)")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        if args.command == "dynatomic":
            return cmd_dynatomic(args, out)
        if args.command == "scan":
            cfg = ScanConfig(
                period=args.period,
                height_bound=args.height,
                output_path=Path(args.output) if args.output else None,
                format=args.format,
                worker_count=args.workers,
                quadratic_only=args.quadratic_only,
            )
            return cmd_scan(cfg, out, args.cache_dynatomic)
        if args.command == "verify-6cycle":
            return cmd_verify_6cycle(args, out)
        if args.command == "cp":
            if getattr(args, "height", 1) < 1:
                raise UsageError("height must be at least 1")
            return cmd_cp(args, out)
    except UsageError as exc:
        print(f"quadcycles: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"quadcycles: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
