"""Command-line front end.

Exit codes: 0 success / analytic, 1 checked and failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .algebra import (
    SUPPORTED_DIMENSIONS,
    AlgebraError,
    AlgebraSpec,
    figure_rule_table,
    structure_identities,
    structure_tensor,
    verify_algebra_identities,
)
from .cayley_dickson import double, find_isomorphism
from .cr.forms import FORMS
from .cr.operators import CR_DIMENSIONS, VARIANTS, dirac_matrix, factorization_check, lemma2_identity_check
from .cr.residuals import check_function, decimal_string
from .expr import ParseError, load_function
from .matrix_rep import homomorphism_check

FORMATS = ("plain", "json", "csv")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# structure files


def structure_to_json(alg: AlgebraSpec) -> dict:
    return {"N": alg.dimension, "c": [[[_num(v) for v in row] for row in plane] for plane in alg.structure]}


def _num(v):
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else str(v)


def _int_or_fraction(v):
    f = Fraction(v)
    return f.numerator if f.denominator == 1 else f


def load_structure(path: str) -> AlgebraSpec:
    """Read ``{"N": n, "c": c}`` with ``c[sigma][mu][nu]`` the coefficient of ``e_sigma`` in ``e_mu e_nu``."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc
    try:
        n = int(data["N"])
        c = tuple(tuple(tuple(_int_or_fraction(v) for v in row) for row in plane) for plane in data["c"])
        eps = tuple(
            (i, j, k, c[k][i][j]) for i in range(1, n) for j in range(i + 1, n) for k in range(j + 1, n) if c[k][i][j]
        )
        return AlgebraSpec(n, c, eps, convention=f"file:{path}")
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: not a structure tensor file ({exc})") from exc


# ---------------------------------------------------------------------------
# output helpers


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _basis_name(i: int) -> str:
    return f"e{i}"


def _product_text(alg: AlgebraSpec, mu: int, nu: int) -> str:
    terms = alg.products[(mu, nu)]
    if not terms:
        return "0"
    parts = []
    for sg, c in terms:
        c = Fraction(c)
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else f"{abs(c)}*"
        parts.append(f"{sign}{mag}{_basis_name(sg)}")
    text = "".join(parts)
    return text[1:] if text.startswith("+") else text


def _dimension(n: int, allowed, what: str) -> int:
    if n not in allowed:
        raise UsageError(f"{what}: unsupported dimension N={n}; expected one of {', '.join(map(str, allowed))}")
    return n


# ---------------------------------------------------------------------------
# subcommands


def cmd_table(args) -> tuple[int, str]:
    n = _dimension(args.n, SUPPORTED_DIMENSIONS, "table")
    if args.source == "standard":
        alg = structure_tensor(n)
    elif args.source == "doubled":
        if n == 1:
            raise UsageError("table: the doubled source needs N in 2, 4, 8")
        alg = double(structure_tensor(n // 2), -1)
    else:
        if n != 8:
            raise UsageError("table: the figure source exists only for N=8")
        alg = figure_rule_table()
    r = range(n)
    triples = [(i, j, k) if s > 0 else (i, k, j) for i, j, k, s in alg.epsilon]
    if args.format == "json":
        data = structure_to_json(alg)
        data["table"] = [[_product_text(alg, mu, nu) for nu in r] for mu in r]
        data["epsilon"] = [list(t) for t in triples]
        return 0, json.dumps(data, indent=2) + "\n"
    if args.format == "csv":
        rows = [["*"] + [_basis_name(nu) for nu in r]]
        rows += [[_basis_name(mu)] + [_product_text(alg, mu, nu) for nu in r] for mu in r]
        return 0, _csv(rows)
    lines = [f"{_basis_name(mu)}*{_basis_name(nu)} = {_product_text(alg, mu, nu)}" for mu in r for nu in r]
    lines.append("epsilon triples: " + (" ".join(f"({i},{j},{k})" for i, j, k in triples) or "none"))
    return 0, "\n".join(lines) + "\n"


def cmd_verify(args) -> tuple[int, str]:
    if args.samples < 1:
        raise UsageError("verify: --samples must be positive")
    if args.structure_file:
        alg = load_structure(args.structure_file)
    else:
        alg = structure_tensor(_dimension(args.n, SUPPORTED_DIMENSIONS, "verify"))
    n = alg.dimension
    results = []  # (name, passed, detail)
    report = verify_algebra_identities(alg, args.samples, args.seed)
    for res in report.results:
        detail = f"{res.checked} checks" if res.passed else f"counterexample {res.counterexample}"
        results.append((res.name, res.passed, detail))
    for name, ok in structure_identities(alg).items():
        results.append((f"tensor-{name}", ok, "exact"))
    if n in CR_DIMENSIONS:
        results.append(("factorization", factorization_check(n), "symbolic"))
        results.append(("lemma2-identity", lemma2_identity_check(n, alg), "symbolic"))
    hom = homomorphism_check(args.samples, args.seed)
    results.append((hom.name, hom.passed, f"{hom.checked} checks"))
    ok = all(p for _, p, _ in results)
    if args.format == "json":
        out = json.dumps(
            {"N": n, "passed": ok, "checks": [{"name": a, "passed": b, "detail": c} for a, b, c in results]},
            indent=2,
        ) + "\n"
    elif args.format == "csv":
        out = _csv([["check", "status", "detail"]] + [[a, "PASS" if b else "FAIL", c] for a, b, c in results])
    else:
        out = "".join(f"{'PASS' if b else 'FAIL'} {a}: {c}\n" for a, b, c in results)
        out += f"{'all checks passed' if ok else 'FAILED: ' + ', '.join(a for a, b, _ in results if not b)}\n"
    return (0 if ok else 1), out


def _read_function(args, n: int):
    if (args.expr is None) == (args.file is None):
        raise UsageError("check: give exactly one of --expr or --file")
    if args.file is not None:
        try:
            with open(args.file, encoding="utf-8") as fh:
                source = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror}") from exc
    else:
        source = args.expr
    return load_function(source, n)


def _fraction(text: str, flag: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{flag}: cannot read {text!r} as a rational number") from exc


def cmd_check(args) -> tuple[int, str]:
    n = _dimension(args.n, CR_DIMENSIONS, "check")
    if args.form in ("quat",) and n != 8:
        raise UsageError("check: the quaternionic block form needs N=8")
    if args.form in ("complex", "vector") and n not in (4, 8):
        raise UsageError(f"check: the {args.form} form needs N=4 or N=8")
    if args.form == "kappa" and args.kappa is None:
        raise UsageError("check: --form kappa needs --kappa p/q")
    if args.samples < 1:
        raise UsageError("check: --samples must be positive")
    kappa = _fraction(args.kappa, "--kappa") if args.kappa is not None else None
    tol = _fraction(args.tol, "--tol")
    if tol < 0:
        raise UsageError("--tol must be non-negative")
    u = _read_function(args, n)
    report = check_function(u, args.form, kappa, args.variant, args.samples, args.seed, tol)
    code = 0 if report.analytic else 1
    if args.format == "json":
        return code, report.dumps() + "\n"
    if args.format == "csv":
        rows = [["index", "point", "max_residual", "l2_residual"]]
        for i, (p, m, l2) in enumerate(zip(report.points, report.point_max, report.point_l2)):
            rows.append([i, " ".join(map(str, p)), str(m), repr(l2)])
        rows.append(["summary", report.verdict, decimal_string(report.max_residual), ""])
        return code, _csv(rows)
    lines = [
        f"form: {report.form}",
        f"variant: {report.variant}",
        f"kappa: {'-' if report.kappa is None else report.kappa}",
        f"N: {n}",
        f"seed: {report.seed}",
        f"points: {len(report.points)}",
        f"tolerance: {decimal_string(report.tolerance)}",
    ]
    for p, m in zip(report.points, report.point_max):
        lines.append(f"  ({', '.join(map(str, p))}) max|r| = {m}")
    lines.append(f"max_residual: {decimal_string(report.max_residual)}")
    lines.append(f"verdict: {report.verdict}")
    return code, "\n".join(lines) + "\n"


def cmd_emit_matrix(args) -> tuple[int, str]:
    n = _dimension(args.n, CR_DIMENSIONS, "emit-matrix")
    cells = dirac_matrix(n, args.variant).to_strings()
    if args.format == "json":
        return 0, json.dumps({"N": n, "variant": args.variant, "matrix": cells}) + "\n"
    if args.format == "csv":
        return 0, _csv(cells)
    width = max(len(c) for row in cells for c in row)
    return 0, "".join(" ".join(c.rjust(width) for c in row) + "\n" for row in cells)


def cmd_iso(args) -> tuple[int, str]:
    a = load_structure(args.spec_a)
    b = load_structure(args.spec_b)
    if a.dimension != b.dimension:
        raise UsageError(f"iso: dimension mismatch ({a.dimension} vs {b.dimension})")
    phi = find_isomorphism(a, b)
    if args.format == "json":
        return (0 if phi else 1), json.dumps({"N": a.dimension, "mapping": phi.to_dict() if phi else None}) + "\n"
    if phi is None:
        return 1, "none\n"
    if args.format == "csv":
        rows = [["source", "sign", "target"]]
        rows += [[f"e{i}", "+" if s > 0 else "-", f"e{p}"] for i, (p, s) in enumerate(zip(phi.perm, phi.signs))]
        return 0, _csv(rows)
    return 0, str(phi) + "\n"


# ---------------------------------------------------------------------------
# parser


def _common(p: argparse.ArgumentParser, n_default: int | None = 8):
    p.add_argument("--format", choices=FORMATS, default="plain")
    if n_default is not None:
        p.add_argument("--n", type=int, default=n_default, help="algebra dimension N")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cayleycr", description="Octonion tables and Cauchy-Riemann checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="print the basis multiplication table")
    _common(p)
    p.add_argument("--source", choices=("standard", "doubled", "figure"), default="standard",
                   help="normative table, Cayley-Dickson double of the half dimension, or the figure labeling")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="exact algebra and operator identity checks")
    _common(p)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--structure-file", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check", help="test a function against a C-R formulation")
    _common(p)
    p.add_argument("--form", choices=FORMS, default="real")
    p.add_argument("--kappa", help="rational kappa for --form kappa, e.g. 3/2")
    p.add_argument("--variant", choices=VARIANTS, default="analytic")
    p.add_argument("--expr", help="function in the expression language, e.g. 'x^2'")
    p.add_argument("--file", help="file holding an expression or component-polynomial JSON")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol", default="1e-9")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("emit-matrix", help="print the Dirac operator matrix")
    _common(p)
    p.add_argument("--variant", choices=VARIANTS, default="analytic")
    p.set_defaults(func=cmd_emit_matrix)

    p = sub.add_parser("iso", help="search a signed-permutation isomorphism between two tables")
    _common(p, None)
    p.add_argument("spec_a")
    p.add_argument("spec_b")
    p.set_defaults(func=cmd_iso)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        code, out = args.func(args)
    except (UsageError, ParseError, AlgebraError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
