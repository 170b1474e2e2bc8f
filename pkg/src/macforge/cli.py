"""Command-line verification harness.

Subcommands: verify-formulas, aut, oddp, oracle, report.
Exit codes: 0 all checks pass, 1 at least one check failed, 2 usage or
resource error.  MACFORGE_MAX_COSETS overrides the enumeration cap.
Composition of automorphisms is left to right everywhere: (x)(fg) = ((x)f)g.
"""

from __future__ import annotations

import argparse
import sys

from .autenum import (
    ClosureLimitExceeded,
    closure,
    expected_aut_order,
    filtration,
    inner_closure,
    standard_generators,
    verify_structure,
)
from .coset import (
    CosetLimitExceeded,
    builtin_presentation,
    todd_coxeter,
    Presentation,
)
from .crosscheck import oddp_report
from .groups import family
from .params import OddPrimeParams
from .report import Report
from .verify import formula_report

USAGE_ERROR = 2
CHECK_FAILURE = 1


def _emit(rep: Report, args) -> int:
    text = rep.to_json() if args.json else rep.to_text()
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if rep.passed else CHECK_FAILURE


def _add_output_flags(p: argparse.ArgumentParser):
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--text", action="store_true", help="emit the text table (default)")
    p.add_argument("--out", help="write the report to a file instead of stdout")


def _family_args(p: argparse.ArgumentParser, m_default=2):
    p.add_argument("--family", required=True, choices=["J", "H", "K"])
    p.add_argument("--m", type=int, default=m_default)
    p.add_argument("--ell", type=int, default=1)


def cmd_verify_formulas(args) -> int:
    fam = family(args.family, args.m, args.ell)
    mode = "exhaustive" if args.exhaustive else "sampled"
    rep = formula_report(fam, mode=mode, samples=args.samples, seed=args.seed)
    return _emit(rep, args)


def cmd_aut(args) -> int:
    fam = family(args.family, args.m, args.ell)
    heavy = args.family == "J" and args.m >= 3
    if heavy and not args.full:
        print(
            f"Aut(J) at m={args.m} enumerates 2^{8 * args.m} automorphisms; "
            "rerun with --full to confirm.",
            file=sys.stderr,
        )
        return USAGE_ERROR
    if heavy:
        n_elems = fam.order
        est_mb = (2 ** (8 * args.m) * 60 + len(standard_generators(fam)) * n_elems * 8) // 2**20
        print(f"# full run: estimated peak memory ~{est_mb} MB", file=sys.stderr)
    rep = Report(params={
        "family": args.family, "m": args.m, "ell": args.ell,
        "filtration": bool(args.filtration), "full": bool(args.full),
    })
    if args.m == 2 or (args.m == 3 and args.family in ("K", "H")) or args.full or (
        args.family == "J" and args.m == 1
    ):
        if args.m in (2, 3) and args.family in ("J", "H", "K") and args.m >= 2:
            sub = verify_structure(fam, "quick" if args.m == 2 else "full")
            rep.extend(sub)
        else:
            gens = standard_generators(fam)
            aut = closure(gens)
            rep.add("aut_order", expected_aut_order(fam), aut.order)
        if args.filtration and args.m >= 2:
            aut = closure(standard_generators(fam))
            filt = filtration(aut, inner_closure(fam))
            for row in filt.rows:
                rep.add(f"filtration_level_{row.level}", row.expected, row.count,
                        passed=row.passed)
            for lvl, cnt, exp, okf in filt.inn_products:
                rep.add(f"filtration_inn_aut_{lvl}", exp, cnt, passed=okf)
    else:
        print("unsupported (family, m) combination for aut", file=sys.stderr)
        return USAGE_ERROR
    return _emit(rep, args)


def cmd_oddp(args) -> int:
    try:
        params = OddPrimeParams(args.p, args.m, args.ell)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    rep = oddp_report(params, rng=args.range)
    return _emit(rep, args)


def cmd_oracle(args) -> int:
    if args.group:
        pres = builtin_presentation(args.group)
    elif args.file:
        with open(args.file) as fh:
            pres = Presentation.from_text(fh.read(), gens=None, name=args.file)
    else:
        print("oracle needs --group NAME or --file PATH", file=sys.stderr)
        return USAGE_ERROR
    table = todd_coxeter(pres, args.max_cosets)
    rep = Report(params={"presentation": pres.name or str(pres)})
    rep.add("coset_count", None, table.n)
    rep.add("cosets_defined", None, table.stats["defined"])
    rep.add("presentation_faithful", True, table.verify_relators())
    return _emit(rep, args)


def cmd_report(args) -> int:
    with open(getattr(args, "from")) as fh:
        rep = Report.from_json(fh.read())
    return _emit(rep, args)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="macforge",
        description="Exact arithmetic and automorphism verification for the "
                    "Macdonald 2-groups J, H, K.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-formulas", help="arithmetic invariants + oracle cross-check")
    _family_args(p)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--exhaustive", action="store_true")
    _add_output_flags(p)
    p.set_defaults(func=cmd_verify_formulas)

    p = sub.add_parser("aut", help="automorphism group closure and filtration")
    _family_args(p)
    p.add_argument("--filtration", action="store_true")
    p.add_argument("--full", action="store_true", help="allow the heavy J m>=3 run")
    _add_output_flags(p)
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("oddp", help="odd-prime commutator identities vs oracle")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--range", type=int, default=20)
    _add_output_flags(p)
    p.set_defaults(func=cmd_oddp)

    p = sub.add_parser("oracle", help="coset enumeration of a presentation")
    p.add_argument("--group", help='builtin name, e.g. "J[2,1]", "Q16", "Jp[3,1,1]"')
    p.add_argument("--file", help="presentation file, one relator per line")
    p.add_argument("--max-cosets", type=int, default=None)
    _add_output_flags(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("report", help="re-render a saved JSON report")
    p.add_argument("--from", required=True, help="path to a JSON report")
    _add_output_flags(p)
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (CosetLimitExceeded, ClosureLimitExceeded) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
