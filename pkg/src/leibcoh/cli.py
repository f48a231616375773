"""Command-line front end: validate inputs, run computations, emit reports.

Input formats (UTF-8 JSON):

  algebra:  {"field": {"kind": "Q"} | {"kind": "Fp", "p": <prime>},
             "dim": n, "basis": [names],
             "products": [[left, right, [[name, scalar-string], ...]], ...]}
            omitted products are zero; scalars are decimal or "a/b" strings.

  module:   {"dim": m, "left": {name: matrix, ...}, "right": {name: matrix, ...}}
            row-major matrices of scalar strings; a matrix acts on coordinate
            columns.  "right" may be omitted together with --coeff modifiers.

Exit codes: 0 ok, 1 identity violation / golden mismatch, 2 parse error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import bimodule as bm
from . import cochain as cc
from . import spectral as sp
from .algebra import CATALOG_NAMES, LeibnizAlgebra, catalog, leibniz_violations
from .errors import AxiomError, LeibcohError, ParseError, ResourceLimitError
from .fields import field_to_json, parse_field
from .linalg import SparseMatrix
from .reproduce import CASES, run_case

EXIT_OK = 0
EXIT_IDENTITY = 1
EXIT_PARSE = 2
EXIT_RESOURCE = 3


# -- input parsing -----------------------------------------------------------


def load_algebra(doc) -> LeibnizAlgebra:
    if not isinstance(doc, dict):
        raise ParseError("algebra file must contain a JSON object")
    try:
        field = parse_field(doc["field"])
        dim = int(doc["dim"])
        basis = list(doc["basis"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed algebra header: {exc}") from exc
    if len(basis) != dim:
        raise ParseError("basis length does not match dim")
    products = {}
    for row in doc.get("products", []):
        try:
            left, right, combo = row
            products[(left, right)] = {name: val for name, val in combo}
        except (TypeError, ValueError) as exc:
            raise ParseError(f"malformed product row {row!r}") from exc
    violations = _violations_from(field, basis, products)
    if violations:
        raise AxiomError(
            f"left Leibniz identity fails at {len(violations)} triple(s)", violations=violations
        )
    return LeibnizAlgebra(field, basis, products)


def _violations_from(field, basis, products):
    index = {nm: i for i, nm in enumerate(basis)}
    table = [[{} for _ in basis] for _ in basis]
    for (a, b), combo in products.items():
        ia = index[a] if isinstance(a, str) else int(a)
        ib = index[b] if isinstance(b, str) else int(b)
        if not (0 <= ia < len(basis) and 0 <= ib < len(basis)):
            raise ParseError(f"unknown basis element in product ({a}, {b})")
        entry = {}
        for k, v in combo.items():
            ik = index[k] if isinstance(k, str) else int(k)
            entry[ik] = field.parse(v)
        table[ia][ib] = entry
    return leibniz_violations(field, len(basis), table)


def _parse_matrix(field, rows, dim):
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise ParseError(f"matrix must be {dim}x{dim}")
    return SparseMatrix.from_dense(field, [[field.parse(v) for v in r] for r in rows])


def load_module(doc, algebra) -> bm.Bimodule:
    if not isinstance(doc, dict):
        raise ParseError("module file must contain a JSON object")
    try:
        dim = int(doc["dim"])
        left_doc = doc["left"]
        right_doc = doc["right"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed module file: {exc}") from exc
    f = algebra.field
    zero = SparseMatrix.zero(f, dim, dim)

    def mats(block):
        out = []
        for nm in algebra.basis_names:
            out.append(_parse_matrix(f, block[nm], dim) if nm in block else zero)
        return out

    left, right = mats(left_doc), mats(right_doc)
    probe = bm.Bimodule(algebra, left, right, validate=False, name="input")
    violations = bm.check_bimodule(probe)
    if violations:
        raise AxiomError(f"module identities fail at {violations[:4]}", violations=violations)
    return bm.Bimodule(algebra, left, right, name="input")


# -- coefficient expressions ------------------------------------------------


def build_coefficient(expr: str, algebra, variant: str):
    """Parse a module-construction expression and type-check it.

    Grammar: TERM[,sym|,antisym] with
    TERM := trivial | F_lambda:<scalar> | dual | adjoint | adjoint_left
          | L:<n> | hom(TERM) | tensor(TERM,TERM)
    Bare left-module terms are symmetrized for the bimodule variants;
    "adjoint" is already a bimodule and admits no modifier.
    """
    expr = expr.strip()
    modifier = None
    if expr.endswith(",sym"):
        expr, modifier = expr[:-4], "sym"
    elif expr.endswith(",antisym"):
        expr, modifier = expr[:-8], "antisym"

    def term(s):
        s = s.strip()
        if s == "trivial":
            return bm.trivial_module(algebra)
        if s == "adjoint":
            return bm.adjoint_bimodule(algebra)
        if s == "adjoint_left":
            return bm.adjoint_left(algebra)
        if s == "dual":
            return bm.dual_module(algebra)
        if s.startswith("F_lambda:"):
            lam = algebra.field.parse(s.split(":", 1)[1])
            return bm.weight_module(algebra, {algebra.basis_names[0]: lam})
        if s.startswith("L:"):
            return bm.sl2_irreducible(algebra, int(s.split(":", 1)[1]))
        if s.startswith("hom(") and s.endswith(")"):
            return bm.hom_module(algebra, _as_left(term(s[4:-1])))
        if s.startswith("tensor(") and s.endswith(")"):
            inner = s[7:-1]
            depth = 0
            for i, ch in enumerate(inner):
                if ch == "(":
                    depth += 1
                elif ch == ")":
                    depth -= 1
                elif ch == "," and depth == 0:
                    return bm.tensor_modules(
                        _as_left(term(inner[:i])), _as_left(term(inner[i + 1 :]))
                    )
            raise ParseError(f"tensor needs two arguments: {s!r}")
        raise ParseError(f"unknown coefficient term {s!r}")

    def _as_left(mod):
        if isinstance(mod, bm.Bimodule):
            raise ParseError("a bimodule cannot be nested inside a module construction")
        return mod

    mod = term(expr)
    if isinstance(mod, bm.Bimodule):
        if modifier:
            raise ParseError("the adjoint bimodule admits no ,sym/,antisym modifier")
        if variant != "leibniz_bimodule":
            raise ParseError(f"variant {variant} needs a left module, got a bimodule")
        return mod
    if variant == "leibniz_bimodule":
        return bm.antisymmetrize(mod) if modifier == "antisym" else bm.symmetrize(mod)
    if modifier:
        raise ParseError(f"variant {variant} takes a plain left module, no modifier")
    return mod


# -- report emission ----------------------------------------------------------


def emit_report(report: dict, fmt: str, out=None):
    if out is None:
        out = sys.stdout
    if fmt == "json":
        json.dump(report, out, indent=2, sort_keys=True)
        out.write("\n")
        return
    tables = report.get("tables", {})
    if fmt == "csv":
        for name, tbl in tables.items():
            if isinstance(tbl, dict) and "dims" in tbl:
                out.write(f"table,{name}\n")
                out.write("n,dim\n")
                for n, v in enumerate(tbl["dims"]):
                    out.write(f"{n},{v}\n")
            elif isinstance(tbl, dict):
                out.write(f"table,{name}\n")
                for key, v in sorted(tbl.items()):
                    out.write(f"{key},{v}\n")
        return
    # aligned text
    for name, tbl in tables.items():
        out.write(f"{name}\n")
        if isinstance(tbl, dict) and "dims" in tbl:
            dims = tbl["dims"]
            head = "  n   " + " ".join(f"{n:>4}" for n in range(len(dims)))
            vals = "  dim " + " ".join(f"{v:>4}" for v in dims)
            out.write(head + "\n" + vals + "\n")
        else:
            for key, v in sorted(tbl.items()):
                out.write(f"  {key}: {v}\n")
    extra = {k: v for k, v in report.items() if k not in ("tables", "job")}
    for k, v in sorted(extra.items()):
        out.write(f"{k}: {v}\n")


def _base_report(args, field, extras=None):
    rep = {
        "job": {k: v for k, v in sorted(vars(args).items()) if k != "func" and v is not None},
        "field": field_to_json(field),
        "wall_time_ms": None,
        "tables": {},
    }
    if extras:
        rep.update(extras)
    return rep


def _resolve_algebra(args):
    if args.catalog:
        kwargs = {}
        if args.weight is not None:
            kwargs["n"] = args.weight
        return catalog(args.catalog, args.field, **kwargs)
    if args.input:
        with open(args.input, encoding="utf-8") as fp:
            return load_algebra(json.load(fp))
    raise ParseError("need --catalog or --input")


# -- commands -----------------------------------------------------------------


def cmd_check(args):
    try:
        with open(args.path, encoding="utf-8") as fp:
            doc = json.load(fp)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        if args.module:
            algebra = load_algebra(doc)
            with open(args.module, encoding="utf-8") as fp:
                load_module(json.load(fp), algebra)
            print("ok: algebra and module pass all identities")
        else:
            load_algebra(doc)
            print("ok: left Leibniz identity holds on all basis triples")
        return EXIT_OK
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (OSError, json.JSONDecodeError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except AxiomError as exc:
        print(f"identity violation: {exc}", file=sys.stderr)
        for v in exc.violations[:20]:
            print(f"  violated at {v}", file=sys.stderr)
        return EXIT_IDENTITY


def cmd_cohomology(args):
    t0 = time.monotonic()
    L = _resolve_algebra(args)
    M = build_coefficient(args.coeff, L, args.variant)
    table = cc.cohomology(L, M, args.max, variant=args.variant)
    rep = _base_report(args, L.field)
    rep["degrees"] = table.degrees
    rep["tables"]["cohomology"] = {
        "variant": table.variant,
        "algebra": L.name,
        "coefficients": args.coeff,
        "dims": table.dims,
    }
    if args.timing:
        rep["wall_time_ms"] = int((time.monotonic() - t0) * 1000)
    emit_report(rep, args.format)
    return EXIT_OK


def cmd_spectral(args):
    t0 = time.monotonic()
    L = _resolve_algebra(args)
    if args.case == "rel":
        M = build_coefficient(args.coeff, L, "chevalley_eilenberg")
        fc, target = sp.filtration_rel(L, M, args.max)
    elif args.case == "ideal":
        M = build_coefficient(args.coeff, L, "leibniz_bimodule")
        fc, target = sp.filtration_ideal(L, L.leibniz_kernel(), M, args.max)
    else:
        raise ParseError(f"unknown spectral case {args.case!r}")
    pages = sp.pages(fc, args.pages, args.max)
    conv = sp.convergence_check(pages, target.dims, args.max)
    rep = _base_report(args, L.field)
    rep["degrees"] = list(range(args.max + 1))
    for page in pages:
        rep["tables"][f"E_{page.r}"] = {
            f"({p},{q})": v for (p, q), v in sorted(page.entries.items()) if v
        }
        nonzero = {f"({p},{q})": v for (p, q), v in sorted(page.ranks.items()) if v}
        if nonzero:
            rep["tables"][f"d_{page.r}_ranks"] = nonzero
    rep["tables"]["convergence"] = {
        "target": {"dims": target.dims},
        "totals": {str(n): t for n, t, _ in conv.rows},
        "ok": conv.ok,
        "stabilized": conv.stabilized,
    }
    if args.timing:
        rep["wall_time_ms"] = int((time.monotonic() - t0) * 1000)
    emit_report(rep, args.format)
    return EXIT_OK


def cmd_reproduce(args):
    try:
        checks = run_case(args.case_id)
    except KeyError as exc:
        print(exc.args[0], file=sys.stderr)
        return EXIT_PARSE
    all_ok = True
    for chk in checks:
        status = "PASS" if chk.ok else "FAIL"
        all_ok = all_ok and chk.ok
        print(f"{status} [{chk.tag}] {chk.name}: expected {chk.expected}, got {chk.got}")
    print(f"{args.case_id}: {'PASS' if all_ok else 'FAIL'}")
    return EXIT_OK if all_ok else EXIT_IDENTITY


def cmd_catalog(args):
    if not args.list:
        print("use --list to print the inventory")
        return EXIT_OK
    rows = [
        ("abelian", "abelian Lie algebra of a given dimension (--weight n)"),
        ("a", "non-abelian two-dimensional Lie algebra, he = e = -eh"),
        ("heisenberg", "three-dimensional Heisenberg algebra, xy = z = -yx"),
        ("N", "two-dimensional nilpotent non-Lie algebra, ff = e"),
        ("A", "two-dimensional supersolvable non-Lie algebra, he = e"),
        ("sl2", "traceless 2x2 matrices; basis e, h, f with he = 2e, hf = -2f, ef = h"),
        ("borel_sl2", "span{h, e} inside sl2"),
        ("hemi_sl2_L", "hemi-semidirect product sl2 x| L(n) (--weight n, default 2)"),
    ]
    print("catalog algebras:")
    for nm, desc in rows:
        print(f"  {nm:12} {desc}")
    print("reproduction cases:")
    for nm in CASES:
        print(f"  {nm}")
    return EXIT_OK


def make_parser():
    ap = argparse.ArgumentParser(prog="leibcoh", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, coeff=True):
        p.add_argument("--catalog", choices=CATALOG_NAMES, help="built-in algebra")
        p.add_argument("--input", help="algebra JSON file")
        p.add_argument("--field", default="Q", help="Q or F<p> (default Q)")
        p.add_argument("--weight", type=int, default=None, help="catalog parameter n")
        if coeff:
            p.add_argument("--coeff", default="trivial", help="coefficient expression")
        p.add_argument("--max", type=int, default=4, help="maximum degree")
        p.add_argument("--csv", dest="format", action="store_const", const="csv")
        p.add_argument("--json", dest="format", action="store_const", const="json")
        p.add_argument("--timing", action="store_true", help="include wall time in reports")
        p.set_defaults(format="text")

    p = sub.add_parser("check", help="validate an algebra (and optional module) file")
    p.add_argument("path")
    p.add_argument("--module", help="module JSON file checked against the algebra")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("cohomology", help="cohomology dimension table")
    common(p)
    p.add_argument(
        "--variant",
        choices=("leibniz_bimodule", "leibniz_left", "chevalley_eilenberg"),
        default="leibniz_bimodule",
    )
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("spectral", help="filtered-complex page tables")
    common(p)
    p.add_argument("--case", choices=("rel", "ideal"), required=True)
    p.add_argument("--pages", type=int, default=3, help="last page to compute")
    p.set_defaults(func=cmd_spectral)

    p = sub.add_parser("reproduce", help="run a named golden reproduction case")
    p.add_argument("case_id")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("catalog", help="print the built-in inventory")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None):
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except AxiomError as exc:
        print(f"identity violation: {exc}", file=sys.stderr)
        return EXIT_IDENTITY
    except LeibcohError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IDENTITY


if __name__ == "__main__":
    sys.exit(main())
