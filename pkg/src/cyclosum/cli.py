"""Command-line front end: ``cyclosum <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .bench import format_reports, run_bench
from .classes import class_size_census, partition
from .cyclonum import compute_all, compute_minimal
from .errors import AgreementFailure, CyclosumError
from .field import FieldSpec, IndexTable, build_index_table, field_for_q, make_field, q_bound
from .jacobi import (
    jacobi_from_full_matrix,
    jacobi_minimal,
    jacobi_oracle,
    jacobi_theorem,
)
from .params import OrderSpec, Parity, Variant, check_l, enumerate_valid_q, make_order_spec
from .suite import run_suite

METHODS = {"oracle": "ORACLE", "full": "FULL_MATRIX", "minimal": "MINIMAL", "theorem": "THEOREM"}


class UsageError(Exception):
    pass


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _table(header: list[str], rows) -> str:
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    fmt = "  ".join(f"{{:>{w}}}" for w in widths)
    return "\n".join([fmt.format(*header)] + [fmt.format(*r) for r in rows]) + "\n"


def _emit(text: str, args) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _field(args) -> FieldSpec:
    if args.q is None and args.p is None:
        raise UsageError("give --q or --p/--r")
    if args.p is not None:
        f = make_field(args.p, args.r, bound=args.qmax)
        if args.q is not None and args.q != f.q:
            raise UsageError(f"--q {args.q} disagrees with --p {args.p} --r {args.r}")
        return f
    return field_for_q(args.q, bound=args.qmax)


def _setup(args) -> tuple[FieldSpec, IndexTable, OrderSpec]:
    f = _field(args)
    spec = make_order_spec(args.l, args.variant, f)
    return f, build_index_table(f), spec


def _metadata(spec: OrderSpec, table: IndexTable | None, **extra) -> dict:
    meta = {"tool": "cyclosum", "version": __version__, **spec.to_dict()}
    if table is not None:
        meta.update(table.field.to_dict())
        meta["generator"] = list(table.generator.coeffs)
    meta.update(extra)
    return meta


def cmd_params(args) -> int:
    rows = enumerate_valid_q(args.l, args.variant, args.bound)
    header = ["p", "r", "q", "k", "parity_case"]
    data = [[p, r, q, k, par.value] for p, r, q, k, par in rows]
    if args.format == "json":
        out = _dump_json(
            {"l": args.l, "variant": Variant(args.variant).value, "bound": args.bound,
             "fields": [dict(zip(header, d)) for d in data]}
        )
    elif args.format == "csv":
        out = _csv(header, data)
    else:
        out = _table(header, data)
    _emit(out, args)
    return 0


def _partition_spec(args) -> tuple[OrderSpec, IndexTable | None]:
    if args.q is not None or args.p is not None:
        _, table, spec = _setup(args)
        return spec, table
    variant = Variant(args.variant)
    parity = Parity.EVEN_OR_CHAR2 if args.parity == "even" else Parity.ODD
    if variant is Variant.L2 and parity is Parity.ODD:
        raise UsageError("order l^2 only has the even/char-2 case")
    check_l(args.l)
    e = variant.order(args.l)
    return OrderSpec(args.l, variant, e, 0, 0, parity), None


def cmd_classes(args) -> int:
    spec, _ = _partition_spec(args)
    part = partition(spec)
    header = ["a", "b", "rep_a", "rep_b", "class_size"]
    rows = sorted(
        [a, b, c.rep[0], c.rep[1], c.size] for c in part.classes for a, b in c.members
    )
    if args.format == "json":
        meta = {"l": spec.l, "variant": spec.variant.value, "e": spec.e,
                "parity_case": spec.parity_case.value, "tool": "cyclosum", "version": __version__}
        out = _dump_json({
            "metadata": meta,
            "class_count": len(part),
            "census": {str(k): v for k, v in class_size_census(part).items()},
            "classes": [{"rep": list(c.rep), "size": c.size,
                         "members": [list(m) for m in c.members]} for c in part.classes],
        })
    elif args.format == "csv":
        out = _csv(header, rows)
    else:
        out = _table(header, rows)
    _emit(out, args)
    return 0


def cmd_cyclo(args) -> int:
    _, table, spec = _setup(args)
    if args.minimal:
        part = partition(spec)
        mins = compute_minimal(spec, table, part)
        meta = _metadata(spec, table, kind="minimal", class_count=len(part))
        header = ["rep_a", "rep_b", "count"]
        rows = [[a, b, mins.by_rep[(a, b)]] for a, b in part.reps]
    else:
        m = compute_all(spec, table, workers=args.workers)
        meta = _metadata(spec, table, kind="full")
        header = ["a", "b", "count"]
        rows = [[a, b, int(m.values[a, b])] for a in range(spec.e) for b in range(spec.e)]
    if args.format == "json":
        out = _dump_json({"metadata": meta, "values": [dict(zip(header, r)) for r in rows]})
    elif args.format == "csv":
        out = "# " + json.dumps(meta, sort_keys=True) + "\n" + _csv(header, rows)
    else:
        out = _table(header, rows)
    _emit(out, args)
    return 0


def cmd_jacobi(args) -> int:
    _, table, spec = _setup(args)
    method = METHODS[args.method]
    e = spec.e
    if args.i is not None or args.j is not None:
        if args.i is None or args.j is None:
            raise UsageError("--i and --j go together")
        if method not in ("ORACLE", "FULL_MATRIX"):
            raise UsageError("general (i, j) needs --method oracle or full")
        pairs = [(args.i, args.j)]
    elif args.n is not None:
        pairs = [(1, args.n)]
    else:
        pairs = [(1, n) for n in range(e)]

    results = []
    if method == "ORACLE":
        results = [jacobi_oracle(i, j, spec, table) for i, j in pairs]
    elif method == "FULL_MATRIX":
        m = compute_all(spec, table, workers=args.workers)
        results = [jacobi_from_full_matrix(i, j, m) for i, j in pairs]
    else:
        part = partition(spec)
        mins = compute_minimal(spec, table, part, workers=args.workers)
        fn = jacobi_minimal if method == "MINIMAL" else jacobi_theorem
        results = [fn(j, spec, mins, part) for _, j in pairs]

    out = _dump_json({
        "metadata": _metadata(spec, table, method=method),
        "results": [r.to_json() for r in results],
    })
    _emit(out, args)
    return 0


def cmd_verify(args) -> int:
    _, table, spec = _setup(args)
    report = run_suite(spec, table)
    _emit(_dump_json({"metadata": _metadata(spec, table), **report.to_dict()}), args)
    return 0 if report.ok else 1


def cmd_bench(args) -> int:
    reports = []
    for l in args.l:
        ns = argparse.Namespace(**{**vars(args), "l": l})
        if args.q is None and args.p is None:
            bound = min(args.bound, args.qmax or q_bound())
            found = enumerate_valid_q(l, args.variant, bound)
            if not found:
                raise UsageError(f"no valid q <= {bound} for l={l}")
            ns.q = found[0][2]
        _, table, spec = _setup(ns)
        reports.append(run_bench(spec, table, repetitions=args.repetitions, workers=args.workers))
    if args.format == "json":
        out = _dump_json([r.to_dict() for r in reports])
    else:
        out = format_reports(reports, "csv" if args.format == "csv" else "markdown")
    _emit(out, args)
    return 0


def _add_common(sp: argparse.ArgumentParser, field_required: bool = True) -> None:
    sp.add_argument("--variant", choices=[v.value for v in Variant], default="l2")
    sp.add_argument("--q", type=int, help="field order (a prime power)")
    sp.add_argument("--p", type=int, help="field characteristic")
    sp.add_argument("--r", type=int, default=1, help="extension degree (with --p)")
    sp.add_argument("--qmax", type=int, default=None, help="override the q bound")
    sp.add_argument("--output", "-o", help="write to this file instead of stdout")
    sp.add_argument("--workers", type=int, default=1, help="worker threads for enumeration")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclosum",
        description="Cyclotomic numbers and Jacobi sums of orders l^2 and 2l^2 over F_q.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("params", help="list field orders q admitting the order")
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--variant", choices=[v.value for v in Variant], default="l2")
    sp.add_argument("--bound", type=int, default=1000)
    sp.add_argument("--format", choices=["json", "csv", "table"], default="table")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_params)

    sp = sub.add_parser("classes", help="partition of index pairs into symmetry classes")
    sp.add_argument("--l", type=int, required=True)
    _add_common(sp)
    sp.add_argument("--parity", choices=["even", "odd"], default="even",
                    help="parity case when no field is given")
    sp.add_argument("--format", choices=["json", "csv", "table"], default="csv")
    sp.set_defaults(func=cmd_classes)

    sp = sub.add_parser("cyclo", help="cyclotomic numbers by enumeration")
    sp.add_argument("--l", type=int, required=True)
    _add_common(sp)
    sp.add_argument("--minimal", action="store_true", help="one value per class")
    sp.add_argument("--format", choices=["json", "csv", "table"], default="csv")
    sp.set_defaults(func=cmd_cyclo)

    sp = sub.add_parser("jacobi", help="Jacobi sums J(1, n) or J(i, j)")
    sp.add_argument("--l", type=int, required=True)
    _add_common(sp)
    sp.add_argument("--n", type=int)
    sp.add_argument("--i", type=int)
    sp.add_argument("--j", type=int)
    sp.add_argument("--method", choices=list(METHODS), default="minimal")
    sp.set_defaults(func=cmd_jacobi)

    sp = sub.add_parser("verify", help="run the identity and agreement suite")
    sp.add_argument("--l", type=int, required=True)
    _add_common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="naive vs minimal evaluation counts and timings")
    sp.add_argument("--l", type=int, nargs="+", required=True)
    _add_common(sp)
    sp.add_argument("--bound", type=int, default=2**20, help="search bound for q when not given")
    sp.add_argument("--repetitions", type=int, default=3)
    sp.add_argument("--format", choices=["markdown", "csv", "json"], default="markdown")
    sp.set_defaults(func=cmd_bench)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AgreementFailure as exc:
        print(f"cyclosum {args.command}: verification failed: {exc}", file=sys.stderr)
        return 1
    except (UsageError, CyclosumError) as exc:
        parser.print_usage(sys.stderr)
        print(f"cyclosum {args.command}: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
