"""Command-line driver.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain error.
Only the machine-readable payload goes to stdout; progress goes to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from .census import (
    CensusReport,
    FamilyKind,
    expected_total,
    family_sum,
    gamma3_exact,
    pencil_ngon_count,
    triangle_prediction,
)
from .conics import ALL_TYPES, IntersectionType
from .errors import InvalidInput, PonceletError, UnsupportedCharacteristic
from .field import is_prime
from .pencils import census_fraction, pencil_census, transversal_pencil_total
from .verify import SUITES

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _prime_arg(value: str) -> int:
    try:
        q = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}")
    if q <= 3 or not is_prime(q):
        raise argparse.ArgumentTypeError(f"{q} is not a prime greater than 3")
    return q


def _type_arg(value: str) -> IntersectionType:
    try:
        return IntersectionType.parse(value)
    except InvalidInput as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _family_arg(value: str) -> FamilyKind:
    try:
        return FamilyKind.parse(value)
    except InvalidInput as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--shards", type=int, default=1, help="split outer loops round-robin into k shards")
    common.add_argument("--out", help="write the payload to this file instead of stdout")
    common.add_argument("--quiet", action="store_true", help="suppress progress on stderr")

    parser = argparse.ArgumentParser(prog="poncelet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pencil-census", parents=[common], help="number of pencils of each intersection type")
    p.add_argument("--q", "--p", dest="q", type=_prime_arg, required=True)

    p = sub.add_parser("triangles", parents=[common], help="exhaustive triangle counts per canonical pencil")
    p.add_argument("--q", "--p", dest="q", type=_prime_arg, required=True)
    p.add_argument("--type", type=_type_arg)

    p = sub.add_parser("ngon", parents=[common], help="Cayley n-gon counts per canonical pencil")
    p.add_argument("--q", "--p", dest="q", type=_prime_arg, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--type", type=_type_arg)

    p = sub.add_parser("legendre-sum", parents=[common], help="sum of torsion roots over a curve family")
    p.add_argument("--p", "--q", dest="p", type=_prime_arg, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", type=_family_arg, default=FamilyKind.LEGENDRE)
    p.add_argument("--breakdown", metavar="PATH", help="also write per-lambda0 counts (lambda0,r) to PATH")
    p.add_argument("--timing", action="store_true", help="fill elapsed_ms (makes output run-dependent)")

    p = sub.add_parser("verify", parents=[common], help="run a self-check suite")
    p.add_argument("suite", choices=sorted(SUITES))
    return parser


def _table(rows: list[dict]) -> str:
    if not rows:
        return ""
    keys = list(rows[0])
    cells = [[str(k) for k in keys]] + [["" if r[k] is None else str(r[k]) for k in keys] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(keys))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells) + "\n"


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: "" if v is None else v for k, v in r.items()})
    return buf.getvalue()


def _render(rows: list[dict], fmt: str, extra: dict | None = None) -> str:
    if fmt == "json":
        payload = dict(extra or {})
        payload["rows"] = rows
        return json.dumps(payload, indent=2) + "\n"
    text = _csv(rows) if fmt == "csv" else _table(rows)
    if extra and fmt == "table":
        text += "".join(f"{k}: {v}\n" for k, v in extra.items())
    return text


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _progress(quiet: bool, label: str):
    if quiet:
        return None
    state = {"last": -1}

    def report(done: int, total: int) -> None:
        pct = 100 * done // max(total, 1)
        if pct // 10 != state["last"] // 10 or done == total:
            state["last"] = pct
            print(f"{label}: {done}/{total}", file=sys.stderr, flush=True)

    return report


def cmd_pencil_census(args) -> int:
    q = args.q
    rows = [
        {"type": t.label, "count": pencil_census(t, q), "fraction": str(census_fraction(t))}
        for t in ALL_TYPES
    ]
    total = sum(r["count"] for r in rows)
    assert total == transversal_pencil_total(q)
    _emit(_render(rows, args.format, {"q": q, "total": total}), args.out)
    return EXIT_OK


def cmd_triangles(args) -> int:
    q = args.q
    types = [args.type] if args.type else list(ALL_TYPES)
    rows = []
    ok = True
    for t in types:
        got = pencil_ngon_count(t, q, 3, shards=args.shards)
        want = triangle_prediction(t, q)
        ok &= got == want
        rows.append({"type": t.label, "count": got, "expected": want, "match": got == want})
    count, density = gamma3_exact(q)
    extra = {"q": q, "global_count": count, "global_density": str(density)}
    _emit(_render(rows, args.format, extra), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_ngon(args) -> int:
    q, n = args.q, args.n
    if n < 3:
        raise UsageError("--n must be at least 3")
    if math.gcd(n, q) != 1:
        raise UnsupportedCharacteristic(f"gcd(n, q) = gcd({n}, {q}) != 1")
    types = [args.type] if args.type else list(ALL_TYPES)
    rows = []
    for t in types:
        got = pencil_ngon_count(t, q, n, shards=args.shards)
        rows.append({"type": t.label, "count": got, "expected": expected_total(n, q, t)})
    _emit(_render(rows, args.format, {"q": q, "n": n}), args.out)
    return EXIT_OK


def cmd_legendre_sum(args) -> int:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    if math.gcd(args.n, args.p) != 1:
        raise UnsupportedCharacteristic(f"gcd(n, p) = gcd({args.n}, {args.p}) != 1")
    rep = family_sum(
        args.family,
        args.p,
        args.n,
        shards=args.shards,
        breakdown=bool(args.breakdown),
        timing=args.timing,
        progress=_progress(args.quiet, f"{args.family.value} p={args.p} n={args.n}"),
    )
    if args.format == "json":
        text = rep.to_json() + "\n"
    elif args.format == "csv":
        text = CensusReport.csv_header() + "\n" + rep.to_csv_row() + "\n"
    else:
        text = _table([rep.as_dict()])
    _emit(text, args.out)
    if args.breakdown:
        with open(args.breakdown, "w", encoding="utf-8", newline="") as fh:
            fh.write(rep.breakdown_csv())
    return EXIT_OK


def cmd_verify(args) -> int:
    fn = SUITES[args.suite]
    if args.suite == "identities":
        checks = fn(seed=args.seed)
    elif args.suite == "tables":
        checks = fn(progress=_progress(args.quiet, "tables"))
    else:
        checks = fn()
    if args.format == "table":
        text = "".join(c.line() + "\n" for c in checks)
    else:
        rows = [{"check": c.name, "ok": c.ok, "detail": c.detail} for c in checks]
        text = _render(rows, args.format, {"suite": args.suite})
    _emit(text, args.out)
    return EXIT_OK if all(c.ok for c in checks) else EXIT_FAIL


COMMANDS = {
    "pencil-census": cmd_pencil_census,
    "triangles": cmd_triangles,
    "ngon": cmd_ngon,
    "legendre-sum": cmd_legendre_sum,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if getattr(args, "shards", 1) < 1:
        print("poncelet: error: --shards must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"poncelet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnsupportedCharacteristic, PonceletError) as exc:
        print(f"poncelet: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
