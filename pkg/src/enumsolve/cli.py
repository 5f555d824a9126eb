"""Command-line front end.

Exit codes: 0 success, 2 input or parse error, 3 budget exceeded,
4 unknown case, 5 a case finished but missed an expected value.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .algebra.fields import QQ, FieldDesc, mpq
from .algebra.parsing import ParseError, format_ideal_file, parse_ideal_text, parse_poly, read_ideal_file
from .algebra.poly import RingContext
from .algebra.unipoly import UniPoly
from .budget import Budget, BudgetExceeded
from .cases import UnknownCase, case_names, run_case
from .groebner import DegreeUndefined, Ideal, degree, dim, saturate
from .realroots import count_real_roots, isolate_intervals, is_squarefree
from .zerodim import QuotientAlgebra, ScanBudgetExceeded, ShapeFailure, eliminant, num_real_trace, separating_form, solve_mod_p, triangular_form

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_UNKNOWN_CASE = 4
EXIT_GOLDEN = 5

DEFAULT_BUDGET_MS = 600_000


class InputError(Exception):
    pass


def parse_field(text: str) -> FieldDesc:
    """``qq`` or ``fp:P`` (case-insensitive)."""
    t = text.strip().lower()
    if t == "qq":
        return QQ
    m = re.fullmatch(r"fp:(\d+)", t)
    if not m:
        raise argparse.ArgumentTypeError(f"field must be qq or fp:P, got {text!r}")
    try:
        return FieldDesc(int(m.group(1)))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def parse_width(text: str) -> mpq:
    try:
        w = mpq(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad width {text!r}") from None
    if w <= 0:
        raise argparse.ArgumentTypeError("width must be positive")
    return w


def _interval_json(iv) -> list[str]:
    return [str(iv[0]), str(iv[1])]


def _emit(obj: dict, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(obj, sort_keys=False) + "\n")
        return
    for k, v in obj.items():
        if isinstance(v, (list, dict)):
            v = json.dumps(v)
        out.write(f"{k}: {v}\n")


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------


def cmd_solve(args, budget: Budget) -> int:
    src = read_ideal_file(args.file, order=args.order)
    ring = src.ring
    I = Ideal(ring, src.generators)
    if args.saturate:
        if args.saturate not in ring.vars:
            try:
                f = parse_poly(args.saturate, ring)
            except ParseError as exc:
                raise InputError(f"--saturate: {exc}") from None
        else:
            f = ring.var(args.saturate)
        if f.is_zero():
            raise InputError("--saturate by zero")
        I = saturate(I, f, budget)
    report: dict = {"ring": str(ring), "generators": len(I.generators)}
    d = dim(I, budget)
    report["dim"] = d
    try:
        if not I.generators:
            raise DegreeUndefined("no generators: the zero ideal is not a system to count solutions of")
        report["degree"] = degree(I, budget)
    except DegreeUndefined as exc:
        report["degree"] = None
        report["note"] = str(exc)
    if d != 0:
        _emit(report, args.json)
        return EXIT_OK
    A = QuotientAlgebra(I, budget)
    if args.eliminant:
        try:
            form = parse_poly(args.eliminant, ring)
        except ParseError as exc:
            raise InputError(f"--eliminant: {exc}") from None
        g = eliminant(form, A)
    else:
        form, g = separating_form(A)
    report["eliminant_form"] = form.render()
    report["eliminant"] = g.render("Z")
    report["separating"] = g.degree == A.d
    if ring.field.p is None:
        report["real_roots"] = num_real_trace(A)
        report["real_roots_sturm"] = count_real_roots(g, "all")
        if args.intervals is not None:
            report["intervals"] = [_interval_json(iv) for iv in isolate_intervals(g, args.intervals)]
    else:
        report["real_roots"] = None
        shape = None
        for v in reversed(ring.order.precedence):
            shape = triangular_form(A, ring.vars[v])
            if not isinstance(shape, ShapeFailure):
                break
        if shape is not None and not isinstance(shape, ShapeFailure):
            report["triangular_pivot"] = shape.pivot
            report["triangular"] = [p.render() for p in shape.lex_basis()]
            try:
                report["vars"] = list(ring.vars)
                report["points"] = [list(pt) for pt in solve_mod_p(shape)]
            except ScanBudgetExceeded as exc:
                report["points_note"] = str(exc)
    _emit(report, args.json)
    return EXIT_OK


# ---------------------------------------------------------------------------
# gb
# ---------------------------------------------------------------------------


def cmd_gb(args, budget: Budget) -> int:
    src = read_ideal_file(args.file, order=args.order)
    I = Ideal(src.ring, src.generators)
    gb = I.groebner(budget=budget)
    if args.dump_gb:
        sys.stdout.write(format_ideal_file(gb.ring, list(gb.elements), comment=f"reduced Groebner basis, order {gb.order.name}, {len(gb)} elements"))
        return EXIT_OK
    report = {"ring": str(gb.ring), "order": gb.order.name, "size": len(gb), "basis": [g.render() for g in gb]}
    _emit(report, args.json)
    return EXIT_OK


# ---------------------------------------------------------------------------
# realroots
# ---------------------------------------------------------------------------


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _univariate_from_text(text: str) -> tuple[str, UniPoly]:
    body = [(no, s) for no, s in enumerate(text.splitlines(), 1) if s.strip() and not s.lstrip().startswith("#")]
    if not body:
        raise ParseError("empty input", 1, 1)
    if body[0][1].lstrip().startswith("ring"):
        src = parse_ideal_text(text)
        ring, gens = src.ring, src.generators
        if ring.nvars != 1 or len(gens) != 1:
            raise InputError("realroots needs exactly one univariate polynomial")
        f = gens[0]
    else:
        if len(body) != 1:
            raise InputError("realroots needs exactly one polynomial line")
        no, line = body[0]
        names = sorted(set(re.findall(r"[A-Za-z_][A-Za-z0-9_]*", line)))
        if len(names) > 1:
            raise InputError(f"expected a univariate polynomial, found variables {names}")
        ring = RingContext.make(names or ["Z"], QQ)
        f = parse_poly(line, ring, line=no)
    if f.ring.field.p is not None:
        raise InputError("real roots need rational coefficients")
    if f.is_zero():
        raise InputError("the zero polynomial has no finite root count")
    var = f.ring.vars[0]
    return var, UniPoly([f.coeffs.get((k,), 0) for k in range(int(f.total_degree()) + 1)], QQ)


def cmd_realroots(args, budget: Budget) -> int:
    var, u = _univariate_from_text(_read_text(args.file))
    report = {
        "variable": var,
        "degree": int(u.degree),
        "real": count_real_roots(u, "all"),
        "positive": count_real_roots(u, "positive"),
        "negative": count_real_roots(u, "negative"),
        "squarefree": is_squarefree(u),
    }
    if args.intervals is not None:
        report["intervals"] = [_interval_json(iv) for iv in isolate_intervals(u, args.intervals)]
    _emit(report, True)
    return EXIT_OK


# ---------------------------------------------------------------------------
# case
# ---------------------------------------------------------------------------


def _run_case_json(name: str, seed: int, field: FieldDesc | None, dataset: int | None, budget_ms: int | None) -> tuple[str, dict | None, bool, tuple[int, str] | None]:
    try:
        rep = run_case(name, seed, field, dataset, Budget(budget_ms))
    except BudgetExceeded as exc:
        return name, None, False, (EXIT_BUDGET, f"budget exceeded: {exc}")
    except ValueError as exc:
        return name, None, False, (EXIT_INPUT, f"input error: {exc}")
    return name, rep.to_json(), rep.ok, None


def _print_case_human(obj: dict) -> None:
    extras = dict(obj["extras"])
    checks = extras.pop("checks", [])
    ok = extras.pop("ok", None)
    print(f"case: {obj['case']}  seed: {obj['seed']}  field: {obj['field']}")
    print(f"dim: {obj['dim']}  degree: {obj['degree']}  real: {obj['real'] if obj['real'] is not None else '-'}")
    for k, v in extras.items():
        print(f"  {k}: {json.dumps(v)}")
    for c in checks:
        flag = "ok  " if c["ok"] else "FAIL"
        print(f"  [{flag}] {c['name']}: expected {c['expected']!r}, got {c['actual']!r}")
    print(f"status: {'ok' if ok else 'MISMATCH'}  ({obj['ms']} ms)")


def cmd_case(args, budget: Budget) -> int:
    names = list(args.name)
    if names == ["all"]:
        names = case_names()
    unknown = [n for n in names if n not in case_names()]
    if unknown:
        sys.stderr.write(f"unknown case(s): {', '.join(unknown)}; known: {', '.join(case_names())}\n")
        return EXIT_UNKNOWN_CASE
    jobs = max(1, args.jobs)
    arglist = [(n, args.seed, args.field, args.dataset, budget.ms) for n in names]
    if jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_case_json, *zip(*arglist)))
    else:
        results = [_run_case_json(*a) for a in arglist]
    code = EXIT_OK
    for name, obj, ok, err in results:
        if err is not None:
            sys.stderr.write(f"{name}: {err[1]}\n")
            code = code or err[0]
            continue
        if args.json:
            print(json.dumps(obj))
        else:
            _print_case_human(obj)
        if not ok:
            code = code or EXIT_GOLDEN
    return code


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="enumsolve", description="Exact solver for zero-dimensional polynomial systems and enumerative cases.")
    p.add_argument("--budget-ms", type=int, default=DEFAULT_BUDGET_MS, help="soft wall-clock budget per command (default 600000)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="dimension, degree, eliminant and real roots of an ideal file")
    s.add_argument("file", help="ideal file, or - for stdin")
    s.add_argument("--order", choices=["lex", "grevlex"])
    s.add_argument("--saturate", metavar="VAR")
    s.add_argument("--eliminant", metavar="FORM")
    s.add_argument("--intervals", metavar="WIDTH", type=parse_width)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("case", help="run named reproducible cases")
    c.add_argument("name", nargs="+", help="case name(s), or 'all'")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--field", type=parse_field)
    c.add_argument("--dataset", type=int)
    c.add_argument("--json", action="store_true")
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(func=cmd_case)

    g = sub.add_parser("gb", help="reduced Groebner basis of an ideal file")
    g.add_argument("file")
    g.add_argument("--order", choices=["lex", "grevlex"])
    g.add_argument("--dump-gb", action="store_true")
    g.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_gb)

    r = sub.add_parser("realroots", help="Sturm root counts of a univariate polynomial")
    r.add_argument("file")
    r.add_argument("--intervals", metavar="WIDTH", type=parse_width)
    r.set_defaults(func=cmd_realroots)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    budget = Budget(args.budget_ms if args.budget_ms and args.budget_ms > 0 else None)
    try:
        return args.func(args, budget)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_INPUT
    except (InputError, OSError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except (BudgetExceeded, ScanBudgetExceeded) as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except UnknownCase as exc:
        sys.stderr.write(f"unknown case {exc}\n")
        return EXIT_UNKNOWN_CASE


if __name__ == "__main__":
    sys.exit(main())
