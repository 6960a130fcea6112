"""Command line front end: ``nlbialg``.

Exit codes: 0 when every executed verdict holds, 1 when some verdict fails,
2 on input errors (nothing was checked).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__, catalog
from .bialgebra import (
    LIE_BIALGEBRA,
    HierarchyRefused,
    build_hierarchy,
    classify,
    deform_delta_tn,
    is_cocycle,
    is_lie_bialgebra,
)
from .catalog import Problem
from .document import build, from_problem, parse, serialize
from .errors import ParseError, SchemaError, UnknownName
from .exact import Multivector, Operator, fmt_multivector
from .lie import Cochain, format_bracket, jacobi_defect, transpose
from .nijenhuis import NEITHER, classify_operator, deformed_bracket, iterated_bracket
from .poisson import LinearPoisson, euler_top_field, kks, solve_hamiltonian
from .yang_baxter import RMatrix, r_bracket

OK, FAIL, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    """Raised for anything that prevents a check from running."""


# -- formatting --------------------------------------------------------------

def _dual_names(names: Sequence[str]) -> list[str]:
    return [f"X^{i + 1}" for i in range(len(names))]


def fmt_cobracket(delta: Cochain, names: Sequence[str]) -> str:
    parts = [f"d({names[i]}) = {fmt_multivector(delta.at(i), names)}"
             for i in range(delta.dim) if not delta.at(i).is_zero()]
    return "; ".join(parts) if parts else "0"


def fmt_operator(n: Operator, names: Sequence[str], images: Sequence[str] | None = None) -> str:
    images = images or names
    return "; ".join(f"{names[j]} -> {fmt_multivector(Multivector.from_vector(n.column(j)), images)}"
                     for j in range(n.dim))


def _witness(c: Cochain, label: str) -> str:
    hit = c.first_nonzero()
    if hit is None:
        return ""
    key, val = hit
    return f"{label} at basis {list(key)}: {fmt_multivector(val)}"


# -- reports -----------------------------------------------------------------

def _check(name: str, ok: bool, witness: str = "", detail: str = "", informational: bool = False) -> dict:
    out = {"name": name, "ok": bool(ok), "witness": witness}
    if detail:
        out["detail"] = detail
    if informational:
        out["informational"] = True
    return out


def _report(command: str, data: bytes | None, checks: list, **extra) -> dict:
    rep = {"tool": "nlbialg", "version": __version__, "command": command}
    if data is not None:
        rep["input_sha256"] = hashlib.sha256(data).hexdigest()
    rep["checks"] = checks
    rep.update(extra)
    return rep


def _render(rep: dict) -> str:
    lines = [f"nlbialg {rep['version']} {rep['command']}"]
    if "input_sha256" in rep:
        lines.append(f"input sha256 {rep['input_sha256']}")
    for c in rep["checks"]:
        tag = "PASS" if c["ok"] else ("NOTE" if c.get("informational") else "FAIL")
        line = f"{tag} {c['name']}"
        if c.get("detail"):
            line += f" ({c['detail']})"
        if c["witness"]:
            line += f": {c['witness']}"
        lines.append(line)
    if "classification" in rep:
        cl = rep["classification"]
        lines.append(f"classification: {cl['level']}")
        if cl["witness"]:
            lines.append(f"first failure: {cl['witness']}")
    if "grid" in rep:
        lines.append(f"hierarchy depth {rep['depth']} (level {rep['level']})")
        for cell in rep["grid"]:
            flags = " ".join(f"{k}={'yes' if cell[k] else 'no'}" for k in ("primal_lie", "dual_lie", "cocycle"))
            lines.append(f"  ({cell['i']},{cell['j']}) {'valid' if cell['valid'] else 'INVALID'}  {flags}")
        for a, b, ok in rep["compatibility"]:
            lines.append(f"  brackets n^{a} and n^{b}: {'compatible' if ok else 'NOT compatible'}")
    return "\n".join(lines) + "\n"


def _emit(rep: dict, args) -> None:
    if args.quiet:
        return
    if args.json:
        sys.stdout.write(json.dumps(rep, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(_render(rep))


def _exit_for(checks: list) -> int:
    return OK if all(c["ok"] for c in checks if not c.get("informational")) else FAIL


# -- loading -----------------------------------------------------------------

def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> tuple[bytes, Problem]:
    data = _read(path)
    try:
        doc = parse(data)
    except (ParseError, SchemaError) as exc:
        raise InputError(f"{path}: {exc}") from None
    return data, build(doc)


def _need(pb: Problem, *fields: str) -> None:
    for f in fields:
        if f == "cobracket":
            if pb.effective_cobracket() is None:
                raise InputError("document has neither cobracket nor r_matrix")
        elif getattr(pb, f) is None:
            raise InputError(f"document has no {f}")


# -- commands ----------------------------------------------------------------

def _jacobi_check(pb: Problem) -> dict:
    b = pb.algebra.bracket
    return _check("jacobi", b.is_lie, _witness(jacobi_defect(b), "Jacobi defect"))


def cmd_check(args) -> int:
    data, pb = _load(args.file)
    wanted = [k for k in ("jacobi", "cocycle", "nijenhuis", "cybe") if getattr(args, k)]
    if not wanted:
        wanted = ["jacobi"]
        wanted += ["cocycle"] if pb.effective_cobracket() is not None else []
        wanted += ["nijenhuis"] if pb.operator is not None else []
        wanted += ["cybe"] if pb.r_matrix is not None else []
    if "cocycle" in wanted:
        _need(pb, "cobracket")
    if "nijenhuis" in wanted:
        _need(pb, "operator")
    if "cybe" in wanted:
        _need(pb, "r_matrix")

    checks = []
    b = pb.algebra.bracket
    jac = _jacobi_check(pb)
    if "jacobi" in wanted or not jac["ok"]:
        checks.append(jac)
    if jac["ok"]:
        if "cocycle" in wanted:
            v = is_cocycle(b, pb.effective_cobracket())
            checks.append(_check("cocycle", v.ok, v.witness))
            bi = is_lie_bialgebra(b, pb.effective_cobracket())
            checks.append(_check("lie_bialgebra", bi.ok, bi.witness))
        if "nijenhuis" in wanted:
            cand = classify_operator(b, pb.operator)
            checks.append(_check("nijenhuis", cand.status != NEITHER,
                                 _witness(cand.torsion, "torsion") if cand.status != "nijenhuis" else "",
                                 cand.status))
            delta = pb.effective_cobracket()
            if delta is not None:
                dual = transpose(delta)
                if dual.is_lie:
                    dc = classify_operator(dual, pb.operator.T)
                    checks.append(_check("nijenhuis_transpose_on_dual", dc.status != NEITHER,
                                         _witness(dc.torsion, "torsion") if dc.status != "nijenhuis" else "",
                                         dc.status))
        if "cybe" in wanted:
            rm = RMatrix(b, pb.r_matrix)
            s = rm.schouten
            checks.append(_check("cybe", s.is_zero(), "" if s.is_zero() else f"[[r,r]] = {fmt_multivector(s)}"))
    rep = _report("check", data, checks)
    _emit(rep, args)
    return _exit_for(checks)


def cmd_classify(args) -> int:
    data, pb = _load(args.file)
    _need(pb, "cobracket", "operator")
    jac = _jacobi_check(pb)
    if not jac["ok"]:
        rep = _report("classify", data, [jac])
        _emit(rep, args)
        return FAIL
    cl = classify(pb.algebra.bracket, pb.effective_cobracket(), pb.operator)
    checks = [_check(v.name, v.ok, v.witness, informational=v.informational) for v in cl.checks]
    rep = _report("classify", data, checks, classification={"level": cl.level, "witness": cl.witness})
    _emit(rep, args)
    return OK if cl.at_least(LIE_BIALGEBRA) else FAIL


def cmd_hierarchy(args) -> int:
    data, pb = _load(args.file)
    _need(pb, "cobracket", "operator")
    if args.depth < 0:
        raise InputError("--depth must be non-negative")
    jac = _jacobi_check(pb)
    if not jac["ok"]:
        rep = _report("hierarchy", data, [jac])
        _emit(rep, args)
        return FAIL
    try:
        h = build_hierarchy(pb.algebra.bracket, pb.effective_cobracket(), pb.operator, args.depth, force=args.force)
    except HierarchyRefused as exc:
        msg = str(exc).replace("pass force=True", "use --force")
        rep = _report("hierarchy", data, [_check("classification_is_NL", False, msg)])
        _emit(rep, args)
        return FAIL
    grid = [{"i": c.i, "j": c.j, "primal_lie": c.primal_lie, "dual_lie": c.dual_lie,
             "cocycle": c.cocycle, "valid": c.valid} for c in h.cells]
    checks = [_check("hierarchy_cells", all(c.valid for c in h.cells),
                     ", ".join(f"({c.i},{c.j})" for c in h.cells if not c.valid)),
              _check("hierarchy_compatibility", all(ok for *_, ok in h.compatibility),
                     ", ".join(f"({a},{b})" for a, b, ok in h.compatibility if not ok))]
    rep = _report("hierarchy", data, checks, depth=h.depth, level=h.level, grid=grid,
                  compatibility=[list(t) for t in h.compatibility])
    _emit(rep, args)
    return _exit_for(checks)


def catalog_tables(pb: Problem) -> list[tuple[str, str]]:
    """Human-readable tables for a problem, in display order."""
    g = pb.algebra
    names = list(g.basis)
    dn = _dual_names(names)
    rows = [("bracket", format_bracket(g.bracket, names))]
    if pb.r_matrix is not None:
        rows.append(("r", fmt_multivector(pb.r_matrix, names)))
        rm = RMatrix(g.bracket, pb.r_matrix)
        rows.append(("[.,.]_r", format_bracket(r_bracket(rm), dn)))
    delta = pb.effective_cobracket()
    if delta is not None:
        rows.append(("delta", fmt_cobracket(delta, names)))
        rows.append(("dual bracket", format_bracket(transpose(delta), dn)))
    if pb.operator is not None:
        n = pb.operator
        rows.append(("n", fmt_operator(n, names)))
        rows.append(("tn", fmt_operator(n.T, dn)))
        if g.jacobi_certified:
            rows.append(("[.,.]_n", format_bracket(deformed_bracket(g.bracket, n), names)))
            rows.append(("[.,.]_n^2", format_bracket(iterated_bracket(g.bracket, n, 2), names)))
        if delta is not None:
            rows.append(("[.,.]^tn", format_bracket(deformed_bracket(transpose(delta), n.T), dn)))
            rows.append(("delta_tn", fmt_cobracket(deform_delta_tn(delta, n, 1), names)))
            rows.append(("tn^2", fmt_operator((n ** 2).T, dn)))
            rows.append(("[.,.]^tn^2", format_bracket(deformed_bracket(transpose(delta), (n ** 2).T), dn)))
            rows.append(("delta_tn^2", fmt_cobracket(deform_delta_tn(delta, n, 2), names)))
    return rows


def cmd_catalog(args) -> int:
    if args.action == "list":
        if not args.quiet:
            for name in catalog.names():
                pb = catalog.get(name)
                parts = [p for p, v in (("cobracket", pb.cobracket), ("operator", pb.operator),
                                        ("r_matrix", pb.r_matrix)) if v is not None]
                sys.stdout.write(f"{name}\tdim {pb.dim}\t{' '.join(parts)}\n")
        return OK
    if not args.name:
        raise InputError(f"catalog {args.action} needs a name")
    try:
        pb = catalog.get(args.name)
    except UnknownName as exc:
        raise InputError(exc.args[0]) from None
    if args.action == "export":
        text = serialize(from_problem(pb))
        if args.output:
            Path(args.output).write_text(text, encoding="utf-8")
        elif not args.quiet:
            sys.stdout.write(text)
        return OK
    tables = catalog_tables(pb)
    if args.quiet:
        return OK
    if args.json:
        sys.stdout.write(json.dumps({"name": pb.name, "tables": dict(tables)}, indent=2, sort_keys=True) + "\n")
    else:
        width = max(len(k) for k, _ in tables)
        sys.stdout.write(f"{pb.name} (dim {pb.dim})\n")
        for k, v in tables:
            sys.stdout.write(f"  {k.ljust(width)}  {v}\n")
    return OK


def _poisson_table(p: LinearPoisson) -> str:
    return "; ".join(f"{{x{i + 1},x{j + 1}}} = {c.as_expr()}" for i, j, c in p.table()) or "0"


def cmd_dynamics(args) -> int:
    pb = catalog.get("euler_top")
    n, delta = pb.operator, pb.cobracket
    first = kks(transpose(delta))
    second = kks(deformed_bracket(transpose(delta), n.T))
    x = euler_top_field()
    structures = [("dual bracket", first), ("dual bracket deformed by tn", second)]
    info = {"field": [str(c.as_expr()) for c in x.components],
            "poisson": {label: _poisson_table(p) for label, p in structures}}
    checks = [_check("sum_of_poisson_structures_is_poisson", (first + second).jacobi_holds())]
    if args.hamiltonians:
        sols = {}
        for label, p in structures:
            s = solve_hamiltonian(p, x)
            checks.append(_check(f"hamiltonian[{label}]", s is not None, "" if s else "inconsistent system"))
            if s is not None:
                sols[label] = {"particular": str(s.particular.as_expr()),
                               "casimirs": [str(c.as_expr()) for c in s.casimirs]}
        info["hamiltonians"] = sols
    rep = _report("dynamics euler-top", None, checks, **info)
    if not args.quiet:
        if args.json:
            sys.stdout.write(json.dumps(rep, indent=2, sort_keys=True) + "\n")
        else:
            out = [f"nlbialg {__version__} dynamics euler-top",
                   "field: " + ", ".join(f"x{i + 1}' = {c}" for i, c in enumerate(info["field"]))]
            for label, _ in structures:
                out.append(f"{label}: {info['poisson'][label]}")
            for label, s in info.get("hamiltonians", {}).items():
                extra = ", ".join(s["casimirs"])
                out.append(f"H for {label}: {s['particular']}  (+ span of {extra})")
            out += [f"{'PASS' if c['ok'] else 'FAIL'} {c['name']}" for c in checks]
            sys.stdout.write("\n".join(out) + "\n")
    return _exit_for(checks)


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="exit code only")

    p = argparse.ArgumentParser(prog="nlbialg", parents=[common],
                                description="Exact checks for Lie bialgebras, Nijenhuis operators and r-matrices.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="run individual checks on a document")
    c.add_argument("file", help="JSON document, or - for stdin")
    checks = {
        "jacobi": "Jacobi identity of the bracket",
        "cocycle": "cocycle condition of the cobracket",
        "nijenhuis": "vanishing torsion of the operator",
        "cybe": "Yang-Baxter equation for the r-matrix",
    }
    for flag, text in checks.items():
        c.add_argument(f"--{flag}", action="store_true", help=text)
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("classify", parents=[common], help="place (bracket, cobracket, operator) on the NL ladder")
    c.add_argument("file", help="JSON document, or - for stdin")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("hierarchy", parents=[common], help="verify the grid of deformed bialgebras")
    c.add_argument("file", help="JSON document, or - for stdin")
    c.add_argument("--depth", type=int, default=3, help="largest total order i + j (default 3)")
    c.add_argument("--force", action="store_true", help="build even when the input is not NL")
    c.set_defaults(func=cmd_hierarchy)

    c = sub.add_parser("catalog", parents=[common], help="built-in examples")
    c.add_argument("action", choices=["list", "show", "export"])
    c.add_argument("name", nargs="?")
    c.add_argument("-o", "--output", help="write export to a file")
    c.set_defaults(func=cmd_catalog)

    c = sub.add_parser("dynamics", parents=[common], help="Euler-top Poisson dynamics")
    c.add_argument("system", choices=["euler-top"])
    c.add_argument("--hamiltonians", action="store_true", help="solve for quadratic Hamiltonians")
    c.set_defaults(func=cmd_dynamics)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    args.json = getattr(args, "json", False)
    args.quiet = getattr(args, "quiet", False)
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"nlbialg: error: {exc}\n")
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
