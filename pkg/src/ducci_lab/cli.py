"""Command-line surface.

    ducci-lab period M N [--method ...] [--json] [--cache PATH]
    ducci-lab table --m-max M --n-max N [--format csv|json] [--out PATH]
    ducci-lab verify --campaign NAME [limit flags]
    ducci-lab orbits M N [--guard G]
    ducci-lab cycle-check M N C0,C1,...
    ducci-lab wieferich-scan --limit L

Exit codes: 0 success, 1 usage error, 2 resource or guard error,
3 verification mismatch.  DUCCI_STEP_BUDGET overrides the step budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .cache import PeriodCache
from .cycles import in_cycle, orbit_census
from .errors import CacheError, CrosscheckMismatch, DucciError, ResourceError
from .numtheory import wieferich_primes_below
from .periods import period
from .residues import ResidueTuple, format_tuple
from .verification import CAMPAIGNS, period_table, run_campaign

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RESOURCE = 2
EXIT_MISMATCH = 3

CSV_HEADER = ["m", "n", "period", "pre_period", "method"]


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage by default; the contract here is 1
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit2(f"{self.prog}: error: {message}")


class SystemExit2(Exception):
    """Usage error carrying its message; mapped to exit code 1."""


def build_parser() -> _Parser:
    parser = _Parser(prog="ducci-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("period", help="period of Z_m^n")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument(
        "--method",
        choices=("auto", "brute", "structural", "crosscheck"),
        default="auto",
    )
    p.add_argument("--json", action="store_true")
    p.add_argument("--cache", metavar="PATH")
    p.add_argument("--step-budget", type=int)

    p = sub.add_parser("table", help="period table over a grid")
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--method", choices=("auto", "brute", "structural"), default="auto")
    p.add_argument("--jobs", type=int)
    p.add_argument("--cache", metavar="PATH")
    p.add_argument("--step-budget", type=int)

    p = sub.add_parser("verify", help="run a verification campaign")
    p.add_argument(
        "--campaign",
        required=True,
        metavar="NAME",
        help=f"one of: {', '.join(sorted(CAMPAIGNS))}",
    )
    p.add_argument("--json", action="store_true")
    p.add_argument("--m-max", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--k-max", type=int)
    p.add_argument("--p-max", type=int)
    p.add_argument("--primes", metavar="P1,P2,...")
    p.add_argument("--space-limit", type=int)
    p.add_argument("--jobs", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--step-budget", type=int)

    p = sub.add_parser("orbits", help="orbit-size census of the cycle set")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--guard", type=int, default=10**6)

    p = sub.add_parser("cycle-check", help="cycle membership of one tuple")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("components", metavar="C0,C1,...")
    p.add_argument("--json", action="store_true")
    p.add_argument("--step-budget", type=int)

    p = sub.add_parser("wieferich-scan", help="Wieferich primes below a limit")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--json", action="store_true")

    return parser


def _env_step_budget() -> int | None:
    raw = os.environ.get("DUCCI_STEP_BUDGET")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise SystemExit2(f"DUCCI_STEP_BUDGET must be an integer, got {raw!r}")


def _budget(args) -> int | None:
    explicit = getattr(args, "step_budget", None)
    return explicit if explicit is not None else _env_step_budget()


def _format_record(rec) -> str:
    flags = f" flags={','.join(rec.flags)}" if rec.flags else ""
    pre = "-" if rec.pre_period is None else rec.pre_period
    return (
        f"m={rec.m} n={rec.n} period={rec.period} pre_period={pre} "
        f"method={rec.method} elapsed={rec.elapsed * 1e3:.2f}ms{flags}"
    )


def cmd_period(args, out) -> int:
    cache = None
    if args.cache:
        cache = PeriodCache.load(args.cache) if os.path.exists(args.cache) else PeriodCache()
    rec = None
    if cache is not None and args.method in ("auto", "structural"):
        rec = cache.get(args.m, args.n)
    if rec is None:
        rec = period(args.m, args.n, args.method, step_budget=_budget(args), cache=cache)
        if cache is not None:
            cache.put(rec)
            cache.store(args.cache)
    print(json.dumps(rec.to_json_dict()) if args.json else _format_record(rec), file=out)
    return EXIT_OK


def _table_rows(records):
    for rec in records:
        pre = "" if rec.pre_period is None else rec.pre_period
        yield [rec.m, rec.n, rec.period, pre, rec.method]


def cmd_table(args, out) -> int:
    if args.m_max < 2 or args.n_max < 1:
        records = []
    else:
        cache = None
        if args.cache:
            cache = (
                PeriodCache.load(args.cache) if os.path.exists(args.cache) else PeriodCache()
            )
        records = period_table(
            args.m_max,
            args.n_max,
            method=args.method,
            step_budget=_budget(args),
            jobs=args.jobs,
            cache=cache,
        )
        if cache is not None:
            cache.store(args.cache)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(CSV_HEADER)
        writer.writerows(_table_rows(records))
        text = buf.getvalue()
    else:
        text = json.dumps([rec.to_json_dict() for rec in records], indent=1) + "\n"
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise SystemExit2(f"cannot write {args.out}: {exc}")
    else:
        out.write(text)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    options = {
        "m_max": args.m_max,
        "n_max": args.n_max,
        "k_max": args.k_max,
        "p_max": args.p_max,
        "space_limit": args.space_limit,
        "jobs": args.jobs,
        "seed": args.seed,
        "step_budget": _budget(args),
    }
    if args.primes:
        try:
            options["primes"] = tuple(int(p) for p in args.primes.split(","))
        except ValueError:
            raise SystemExit2(f"--primes expects a comma list of integers, got {args.primes!r}")
    try:
        report = run_campaign(args.campaign, **options)
    except ValueError as exc:
        raise SystemExit2(str(exc))
    print(json.dumps(report.to_json_dict(), indent=1) if args.json else report.format_text(), file=out)
    if args.campaign == "n3-formula":
        return EXIT_OK
    return EXIT_OK if report.all_passed else EXIT_MISMATCH


def cmd_orbits(args, out) -> int:
    census = orbit_census(args.m, args.n, guard=args.guard)
    print(json.dumps(census.to_json_dict()), file=out)
    return EXIT_OK


def cmd_cycle_check(args, out) -> int:
    try:
        comps = tuple(int(c) for c in args.components.split(","))
        a = ResidueTuple(comps, args.m)
        if a.n != args.n:
            raise ValueError(f"declared length {args.n} but {a.n} components")
    except ValueError as exc:
        raise SystemExit2(str(exc))
    verdict = in_cycle(a, step_budget=_budget(args))
    if args.json:
        payload = verdict.to_json_dict()
        payload["tuple"] = format_tuple(a)
        print(json.dumps(payload), file=out)
    else:
        extra = f" witness={verdict.witness}" if verdict.witness else ""
        print(
            f"tuple={format_tuple(a)} in_cycle={verdict.in_cycle} rule={verdict.rule}{extra}",
            file=out,
        )
    return EXIT_OK


def cmd_wieferich_scan(args, out) -> int:
    primes = wieferich_primes_below(args.limit)
    if args.json:
        print(json.dumps(primes), file=out)
    else:
        for p in primes:
            print(p, file=out)
    return EXIT_OK


_COMMANDS = {
    "period": cmd_period,
    "table": cmd_table,
    "verify": cmd_verify,
    "orbits": cmd_orbits,
    "cycle-check": cmd_cycle_check,
    "wieferich-scan": cmd_wieferich_scan,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        return _COMMANDS[args.command](args, out)
    except SystemExit2 as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except CrosscheckMismatch as exc:
        print(f"ducci-lab: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (ResourceError, CacheError) as exc:
        print(f"ducci-lab: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except DucciError as exc:
        print(f"ducci-lab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"ducci-lab: {exc}", file=sys.stderr)
        return EXIT_USAGE


def console_main() -> None:
    sys.exit(main())
