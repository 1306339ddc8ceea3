"""Command-line front end.

Every subcommand builds one result dictionary; ``--json`` prints it verbatim
inside ``{subcommand, params, result, error}`` and the default output renders
the same dictionary as indented text.

Exit codes: 0 success, 1 bad input or unmet precondition, 2 internal
consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable, Sequence

from . import classifier, pell_descent, quad_ring
from .errors import ConsistencyError, FibgfError, PreconditionError
from .exact_arith import Poly, RatFn, coeff_strings, format_poly, format_ratfn, parse_poly, parse_rat, parse_ratfn
from .sequences import IdentityId, Kind, Params, check_identity, seq_poly


class CliError(PreconditionError):
    kind = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        raise CliError(message)


def _poly_obj(p: Poly) -> dict[str, Any]:
    return {"text": format_poly(p), "coeffs": coeff_strings(p)}


def _ratfn_obj(r: RatFn) -> dict[str, Any]:
    return {"text": format_ratfn(r), "num": coeff_strings(r.num), "den": coeff_strings(r.den)}


def _degree(d) -> int | str:
    return d if isinstance(d, int) else "-inf"


def _classify_obj(res: classifier.ClassifyResult) -> dict[str, Any]:
    out: dict[str, Any] = {"verdict": res.verdict, "index": res.index}
    if isinstance(res.value, Poly):
        out["value"] = _poly_obj(res.value)
    else:
        out["value"] = res.value
    if isinstance(res.witness, RatFn):
        out["witness"] = _ratfn_obj(res.witness)
    else:
        out["witness"] = None if res.witness is None else str(res.witness)
    return out


# -- subcommands ------------------------------------------------------------

def cmd_seq(params: Params, args) -> dict[str, Any]:
    poly = seq_poly(params, args.kind, args.n)
    out: dict[str, Any] = {"kind": args.kind, "n": args.n, "poly": _poly_obj(poly)}
    if args.at is not None:
        d = args.d or 1
        point = quad_ring.parse_quad(args.at, d)
        out.update(point=quad_ring.format_quad(point), d=d, value=quad_ring.format_quad(poly(point)))
    return out


def cmd_identities(params: Params, args) -> dict[str, Any]:
    checks = []
    for ident in IdentityId:
        failures = [n for n in range(ident.min_n, args.max_n + 1) if not check_identity(params, ident, n)]
        checks.append({"id": ident.value, "n_min": ident.min_n, "n_max": args.max_n, "failures": failures})
    return {"checks": checks, "all_passed": not any(c["failures"] for c in checks)}


def cmd_descend(params: Params, args) -> dict[str, Any]:
    res = pell_descent.descend(params, parse_poly(args.p), parse_poly(args.q))
    return {"n": res.n, "r0": res.r0, "trace": [[_degree(dp), _degree(dq)] for dp, dq in res.trace]}


def cmd_descend_int(params: Params, args) -> dict[str, Any]:
    return {"index": pell_descent.descend_int(params, args.p, args.q)}


def _cmd_classify(fn: Callable) -> Callable:
    def run(params: Params, args) -> dict[str, Any]:
        return _classify_obj(fn(params, parse_ratfn(args.q)))
    return run


def _cmd_solve(solve: Callable, classify: Callable) -> Callable:
    def run(params: Params, args) -> dict[str, Any]:
        k = parse_poly(args.k)
        roots = sorted(solve(params, k), key=format_ratfn)
        solutions = [{"q": _ratfn_obj(q), "family": classify(params, q).label} for q in roots]
        return {"k": _poly_obj(k), "solutions": solutions}
    return run


def _cmd_classify_rational(fn: Callable) -> Callable:
    def run(params: Params, args) -> dict[str, Any]:
        return _classify_obj(fn(params, parse_rat(args.q)))
    return run


def _cmd_scan(fn: Callable) -> Callable:
    def run(params: Params, args) -> dict[str, Any]:
        points = fn(params, args.max_den)
        return {"max_den": args.max_den, "points": [{"q": str(q), "value": v} for q, v in points]}
    return run


def cmd_quad_eval(params: Params, args) -> dict[str, Any]:
    t = quad_ring.parse_quad(args.t, args.d)
    evaluate = quad_ring.eval_f_quad if args.fn == "f" else quad_ring.eval_l_quad
    value = evaluate(params, args.d, t)
    return {
        "fn": args.fn,
        "d": args.d,
        "t": quad_ring.format_quad(t),
        "value": quad_ring.format_quad(value),
        "in_z_sqrt_d": quad_ring.in_z_sqrt_d(value),
        "within_radius": quad_ring.within_radius(quad_ring.RadiusSpec(params, args.d), t),
    }


def cmd_counterexamples(params: Params | None, args) -> dict[str, Any]:
    entries = [e.as_dict() for e in quad_ring.counterexample_report()]
    return {"entries": entries, "all_ok": all(e["ok"] for e in entries)}


# -- parser -----------------------------------------------------------------

def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON object")
    common.add_argument("--out", metavar="PATH", help="also write the output to PATH")

    ab = _Parser(add_help=False)
    ab.add_argument("--a", type=_positive_int, required=True)
    ab.add_argument("--b", type=_positive_int, required=True)

    parser = _Parser(prog="fibgf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def add(name: str, handler: Callable, help: str, needs_ab: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common] + ([ab] if needs_ab else []), help=help)
        sp.set_defaults(handler=handler)
        return sp

    sp = add("seq", cmd_seq, "print F_n or L_n, optionally evaluated at a point")
    sp.add_argument("--kind", choices=[k.value for k in Kind], required=True)
    sp.add_argument("--n", type=_nonneg_int, required=True)
    sp.add_argument("--at", metavar="POINT", help='e.g. "1/2" or "1 + 2*sqrt(3)"')
    sp.add_argument("--d", type=_positive_int)

    sp = add("identities", cmd_identities, "check the identity toolbox up to --max-n")
    sp.add_argument("--max-n", type=_positive_int, required=True)

    sp = add("descend", cmd_descend, "run the polynomial descent on (P, Q)")
    sp.add_argument("--p", required=True)
    sp.add_argument("--q", required=True)

    sp = add("descend-int", cmd_descend_int, "run the integer descent on (P, Q)")
    sp.add_argument("--p", type=_positive_int, required=True)
    sp.add_argument("--q", type=_positive_int, required=True)

    for name, fn in (("classify-f", classifier.classify_f), ("classify-l", classifier.classify_l)):
        add(name, _cmd_classify(fn), f"classify q(x) for {name[-1]}").add_argument("--q", required=True)

    for name, solve, classify in (
        ("solve-f", classifier.solve_f, classifier.classify_f),
        ("solve-l", classifier.solve_l, classifier.classify_l),
    ):
        add(name, _cmd_solve(solve, classify), f"all q(x) with {name[-1]}(x, q) = k").add_argument(
            "--k", required=True
        )

    for name, fn in (
        ("classify-rational-f", classifier.classify_f_rational),
        ("classify-rational-l", classifier.classify_l_rational),
    ):
        add(name, _cmd_classify_rational(fn), f"classify a rational q for {name[-1]} at x = 1").add_argument(
            "--q", required=True
        )

    for name, fn in (("scan-f", classifier.scan_f), ("scan-l", classifier.scan_l)):
        add(name, _cmd_scan(fn), "integral values inside the interval of convergence").add_argument(
            "--max-den", type=_positive_int, required=True
        )

    sp = add("quad-eval", cmd_quad_eval, "evaluate f or l at a point of Q(sqrt d)")
    sp.add_argument("--d", type=_positive_int, required=True)
    sp.add_argument("--t", required=True)
    sp.add_argument("--fn", choices=["f", "l"], required=True)

    add("counterexamples", cmd_counterexamples, "reproduce the two d = 2 counterexamples", needs_ab=False)
    return parser


# -- rendering --------------------------------------------------------------

def _render_value(v: Any) -> str:
    if isinstance(v, dict) and "text" in v:
        return v["text"]
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v):
        return "[" + ", ".join(_render_value(x) for x in v) + "]"
    if isinstance(v, list) and all(isinstance(x, list) for x in v):
        return " ".join("(" + ", ".join(_render_value(y) for y in x) + ")" for x in v)
    if isinstance(v, dict):
        return ", ".join(f"{k}={_render_value(x)}" for k, x in v.items())
    return str(v)


def _render_lines(obj: dict[str, Any], indent: str = "") -> list[str]:
    lines = []
    for key, v in obj.items():
        if isinstance(v, list) and v and all(isinstance(x, dict) and "text" not in x for x in v):
            lines.append(f"{indent}{key}:")
            for item in v:
                nested = any(isinstance(x, list) and x and isinstance(x[0], dict) for x in item.values())
                if nested:
                    block = _render_lines(item, indent + "    ")
                    lines.append(f"{indent}  - " + block[0].lstrip())
                    lines.extend(block[1:])
                else:
                    lines.append(f"{indent}  - " + _render_value(item))
        elif isinstance(v, dict) and "text" not in v:
            lines.append(f"{indent}{key}:")
            lines.extend(_render_lines(v, indent + "  "))
        else:
            lines.append(f"{indent}{key}: {_render_value(v)}")
    return lines


def render(doc: dict[str, Any], as_json: bool) -> str:
    if as_json:
        return json.dumps(doc, indent=2) + "\n"
    head = {"subcommand": doc["subcommand"]}
    if doc["params"] is not None:
        head["params"] = doc["params"]
    lines = _render_lines(head)
    if doc["error"] is not None:
        lines.append(f"error: {doc['error']['kind']}: {doc['error']['message']}")
    else:
        lines.extend(_render_lines(doc["result"]))
    return "\n".join(lines) + "\n"


def _failed(result: dict[str, Any]) -> bool:
    return result.get("all_passed") is False or result.get("all_ok") is False


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
    except CliError as exc:
        doc = {"subcommand": None, "params": None, "result": None, "error": {"kind": exc.kind, "message": str(exc)}}
        if as_json:
            stdout.write(render(doc, True))
        print(f"fibgf: {exc}", file=stderr)
        return 1

    params = None
    doc: dict[str, Any] = {"subcommand": args.subcommand, "params": None, "result": None, "error": None}
    code = 0
    try:
        if hasattr(args, "a"):
            params = Params(args.a, args.b)
            doc["params"] = {"a": params.a, "b": params.b, "b_divides_a": params.b_divides_a}
        doc["result"] = args.handler(params, args)
        if _failed(doc["result"]):
            code = 2
    except FibgfError as exc:
        doc["error"] = {"kind": exc.kind, "message": str(exc)}
        code = 2 if isinstance(exc, ConsistencyError) else 1
        print(f"fibgf: {exc.kind}: {exc}", file=stderr)
    except ZeroDivisionError as exc:
        doc["error"] = {"kind": PreconditionError.kind, "message": str(exc)}
        code = 1
        print(f"fibgf: {exc}", file=stderr)

    text = render(doc, args.json)
    stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
