"""Command line front end: ``weyl-e8 <subcommand> [flags]``.

Exit codes: 0 success, 1 a verification failed, 2 usage error.  JSON output
is deterministic for a given seed; timings go to stderr only.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .sampling import DEFAULT_SEED

FLAG_TABLE = """flags:
  --weight <int>        weight k (basis)
  --index <int>         index m (basis)
  --max-index <int>     largest index (lb-table, default 12)
  --json <path>         write the JSON report to a file instead of stdout
  --csv <path>          write CSV to a file instead of stdout (table2, lb-table)
  --seed <u64>          seed for randomized checks (verify)
  --suite <name>        identities | semiinvariance | roberts | equivariance | numeric | normalizations | all
  --form <name>         A1..A5, B2, B3, B4, B6, E4, E6, Delta, P165, a0..b6, c0..d6 (eval)
  --tau <re,im>         modular variable (eval, verify numeric)
  --z <8 csv complex>   elliptic variables, e.g. 0.1,0.07j,0,0,0,0,0,0
  --order <int>         q-truncation order
  --tol <float>         numeric tolerance
"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _timing(label: str, t0: float) -> None:
    _seconds(label, time.perf_counter() - t0)


def _seconds(label: str, secs: float) -> None:
    print(f"{label}: {secs:.2f} s", file=sys.stderr)


def _tau(text: str):
    parts = text.split(",")
    try:
        re_, im_ = (float(x) for x in parts)
    except ValueError:
        raise UsageError("--tau expects RE,IM") from None
    return complex(re_, im_)


def _z(text: str) -> tuple[str, ...]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 8:
        raise UsageError("--z expects 8 comma separated complex numbers")
    for p in parts:
        try:
            complex(p)
        except ValueError:
            raise UsageError(f"--z: cannot read {p!r} as a complex number") from None
    return tuple(parts)


def _context(args):
    from .analytic_eval import NumericContext

    kw = {}
    if args.tau is not None:
        kw["tau"] = _tau(args.tau)
    if args.z is not None:
        kw["z"] = _z(args.z)
    if args.order is not None:
        kw["order"] = args.order
    if args.tol is not None:
        kw["tol"] = args.tol
    try:
        return NumericContext(**kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="weyl-e8", description="W(E8)-invariant Jacobi forms and binary invariants.",
                epilog=FLAG_TABLE, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generators", help="list the 194 generators with their a/b polynomials")
    g.add_argument("--json")

    t = sub.add_parser("table2", help="generator counts by index and order as CSV")
    t.add_argument("--csv")

    b = sub.add_parser("basis", help="basis of weak Jacobi forms of given weight and index")
    b.add_argument("--weight", type=int, required=True)
    b.add_argument("--index", type=int, required=True)
    b.add_argument("--json")

    lb = sub.add_parser("lb-table", help="generator counts of the weight -4m subring")
    lb.add_argument("--max-index", type=int, default=12)
    lb.add_argument("--csv")
    lb.add_argument("--json")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", default="all",
                   choices=("identities", "semiinvariance", "roberts", "equivariance", "numeric",
                            "normalizations", "all"))
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--json")
    for flag in ("--tau", "--z"):
        v.add_argument(flag)
    v.add_argument("--order", type=int)
    v.add_argument("--tol", type=float)

    e = sub.add_parser("eval", help="evaluate a form numerically")
    e.add_argument("--form", required=True)
    for flag in ("--tau", "--z"):
        e.add_argument(flag)
    e.add_argument("--order", type=int)
    e.add_argument("--tol", type=float)
    e.add_argument("--json")
    return p


def _cmd_generators(args) -> int:
    from .generator_catalog import build_generator, generator_as_jacobi, recipes

    out = []
    for rec in recipes():
        lab = rec.label
        cov = build_generator(lab)
        out.append({"label": lab.key, "name": str(lab), "recipe": rec.text, "m": lab.m,
                    "omega": cov.order, "weight": lab.weight,
                    "jacobi": str(generator_as_jacobi(lab).poly)})
    _emit(_dump(out), args.json)
    return 0


def _cmd_table2(args) -> int:
    from .generator_catalog import catalog_table, label_table

    t0 = time.perf_counter()
    table = catalog_table()
    _timing("table2", t0)
    _emit(table.to_csv(), args.csv)
    return 0 if table == label_table() else 1


def _cmd_basis(args) -> int:
    from .basis_algorithm import jacobi_basis, verify_basis

    if args.index < 0:
        raise UsageError("--index must be non-negative")
    res = jacobi_basis(args.weight, args.index)
    _seconds("basis", res.seconds)
    report = {"weight": res.k, "index": res.m, "dimension": res.dimension,
              "ansatz_size": res.ansatz_size,
              "basis": [str(b.poly) for b in res.basis],
              "basis_json": [b.poly.to_json_obj() for b in res.basis]}
    _emit(_dump(report), args.json)
    return 0 if verify_basis(res) else 1


def _cmd_lb_table(args) -> int:
    from .basis_algorithm import lb_generator_counts

    if args.max_index < 0:
        raise UsageError("--max-index must be non-negative")
    t0 = time.perf_counter()
    tab = lb_generator_counts(args.max_index)
    _timing("lb-table", t0)
    if args.json:
        _emit(_dump({"max_index": args.max_index, "rows": tab.as_rows()}), args.json)
    lines = ["m," + ",".join(str(m) for m in range(args.max_index + 1)),
             "d_lb," + ",".join(str(c) for c in tab.counts)]
    if args.csv or not args.json:
        _emit("\n".join(lines) + "\n", args.csv)
    return 0


def _cmd_verify(args) -> int:
    from .suites import SUITES, run_suite

    ctx = _context(args) if any(x is not None for x in (args.tau, args.z, args.order, args.tol)) else None
    names = SUITES if args.suite == "all" else (args.suite,)
    reports = []
    for name in names:
        t0 = time.perf_counter()
        reports.append(run_suite(name, args.seed, ctx))
        _timing(name, t0)
    ok = all(r["pass"] for r in reports)
    out = reports[0] if len(reports) == 1 else {"seed": args.seed, "suites": reports, "pass": ok}
    _emit(_dump(out), args.json)
    return 0 if ok else 1


def _cmd_eval(args) -> int:
    from .analytic_eval import NumericError, eval_form

    ctx = _context(args)
    try:
        val = eval_form(args.form, ctx)
    except ValueError as exc:
        if isinstance(exc, NumericError):
            print(f"error: {exc}", file=sys.stderr)
            return 1
        raise UsageError(str(exc))
    report = {"form": args.form, "tau": [float(ctx.tau.real), float(ctx.tau.imag)],
              "z": [str(complex(v)) for v in ctx.z], "order": ctx.order,
              "value": [float(val.real), float(val.imag)]}
    _emit(_dump(report), args.json)
    return 0


COMMANDS = {
    "generators": _cmd_generators,
    "table2": _cmd_table2,
    "basis": _cmd_basis,
    "lb-table": _cmd_lb_table,
    "verify": _cmd_verify,
    "eval": _cmd_eval,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_help(sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
