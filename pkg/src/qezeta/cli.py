"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 input/domain error,
3 convergence failure.  Output is deterministic: identical invocations
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys

from . import characters as chars
from . import verify as verify_mod
from .errors import ConvergenceError, DomainError
from .qcore import EvalContext, SeriesResult
from .qeuler import euler_poly_chi_r, euler_poly_r, gen_fn, gen_fn_chi
from .qzeta import l_r, zeta_r

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_INPUT = 2
EXIT_CONVERGENCE = 3

_FLOAT_BODY = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(
    rf"^(?P<re>[+-]?{_FLOAT_BODY})(?:(?P<im>[+-]{_FLOAT_BODY})i)?$")


def parse_complex(text: str) -> complex:
    """Parse the complex literal grammar: "a", "a+bi", "a-bi"."""
    m = _COMPLEX_RE.match(text.strip())
    if not m:
        raise ValueError(
            f"bad complex literal {text!r}: expected forms like '0.5' or '-1.25+0.5i'")
    re_part = float(m.group("re"))
    im_part = float(m.group("im")) if m.group("im") else 0.0
    return complex(re_part, im_part)


def format_complex(z: complex) -> str:
    """Shortest round-tripping literal for z under the same grammar."""
    if z.imag == 0.0:
        return repr(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="qezeta",
        description="q-Euler polynomials, zeta- and l-type interpolating functions")
    sub = top.add_subparsers(dest="command", required=True)

    def add_common(p, with_chi=True):
        p.add_argument("--q", type=_complex_arg, required=True,
                       help="base q (complex literal, |q| < 1)")
        p.add_argument("--r", type=int, default=1, help="order (default 1)")
        p.add_argument("--tol", type=float, default=1e-10)
        p.add_argument("--max-terms", type=int, default=10000)
        p.add_argument("--format", choices=("json", "csv", "plain"),
                       default="json")
        if with_chi:
            p.add_argument("--chi-file", help="character JSON file")
            p.add_argument("--chi-modulus", type=int,
                           help="odd prime modulus for a generated character")
            p.add_argument("--chi-index", type=int,
                           help="character index for --chi-modulus")

    p = sub.add_parser("eval-zeta", help="evaluate the multiple q-Euler zeta")
    add_common(p, with_chi=False)
    p.add_argument("--s", type=_complex_arg, required=True)
    p.add_argument("--x", type=_complex_arg, required=True)

    p = sub.add_parser("eval-l", help="evaluate the Dirichlet-type l-function")
    add_common(p)
    p.add_argument("--s", type=_complex_arg, required=True)
    p.add_argument("--x", type=_complex_arg, required=True)

    p = sub.add_parser("eval-euler", help="evaluate a q-Euler polynomial value")
    add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=_complex_arg, required=True)

    p = sub.add_parser("eval-genfn", help="evaluate the generating function")
    add_common(p)
    p.add_argument("--t", type=_complex_arg, required=True)
    p.add_argument("--x", type=_complex_arg, required=True)

    p = sub.add_parser("characters", help="list, generate or validate characters")
    p.add_argument("--modulus", type=int)
    p.add_argument("--list", action="store_true",
                   help="enumerate all characters (odd prime modulus)")
    p.add_argument("--index", type=int, help="emit a single generated character")
    p.add_argument("--validate", metavar="FILE",
                   help="validate a character JSON file and echo it")

    p = sub.add_parser("verify", help="run the identity residual suites")
    p.add_argument("--grid", choices=("small", "full"), default="small")
    p.add_argument("--tol", type=float, default=1e-9)

    p = sub.add_parser("table", help="tabulate a function over a grid")
    p.add_argument("--fn", choices=("zeta", "l", "euler", "genfn"), required=True)
    p.add_argument("--q", required=True,
                   help="fixed complex literal or grid lo:hi:count")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--x", help="fixed complex literal or grid lo:hi:count")
    p.add_argument("--s-real", dest="s_real", help="fixed value or grid lo:hi:count")
    p.add_argument("--s-imag", dest="s_imag", help="fixed value or grid lo:hi:count")
    p.add_argument("--n", help="fixed index or integer range lo:hi (euler)")
    p.add_argument("--t", type=_complex_arg, help="fixed t (genfn)")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-terms", type=int, default=10000)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--chi-file")
    p.add_argument("--chi-modulus", type=int)
    p.add_argument("--chi-index", type=int)
    return top


def _load_chi(args) -> chars.DirichletCharacter | None:
    if getattr(args, "chi_file", None):
        with open(args.chi_file, "r", encoding="utf-8") as fh:
            return chars.new_character(json.load(fh))
    if getattr(args, "chi_modulus", None) is not None:
        if getattr(args, "chi_index", None) is None:
            raise DomainError("--chi-modulus requires --chi-index")
        return chars.from_generator(args.chi_modulus, args.chi_index)
    return None


def _chi_params(args) -> dict | None:
    if getattr(args, "chi_file", None):
        return {"file": args.chi_file}
    if getattr(args, "chi_modulus", None) is not None:
        return {"modulus": args.chi_modulus, "index": args.chi_index}
    return None


def _emit_result(out, fmt: str, result: SeriesResult, params: dict) -> None:
    if fmt == "json":
        doc = {
            "value": {"re": result.value.real, "im": result.value.imag},
            "err_estimate": result.err_estimate,
            "terms_used": result.terms_used,
            "params": params,
        }
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["value_re", "value_im", "err_estimate", "terms_used"])
        w.writerow([repr(result.value.real), repr(result.value.imag),
                    repr(result.err_estimate), result.terms_used])
    else:
        out.write(f"value: {format_complex(result.value)}\n")
        out.write(f"err_estimate: {result.err_estimate!r}\n")
        out.write(f"terms_used: {result.terms_used}\n")


def _run_eval(args, out) -> int:
    ctx = EvalContext(args.q, args.tol, args.max_terms)
    chi = _load_chi(args)
    params: dict = {
        "fn": args.command.removeprefix("eval-"),
        "q": format_complex(complex(args.q)),
        "r": args.r,
        "tol": args.tol,
        "max_terms": args.max_terms,
        "chi": _chi_params(args),
    }
    if args.command == "eval-zeta":
        params["s"] = format_complex(args.s)
        params["x"] = format_complex(args.x)
        result = zeta_r(args.s, args.r, args.x, ctx)
    elif args.command == "eval-l":
        if chi is None:
            raise DomainError("eval-l requires a character (--chi-file or --chi-modulus/--chi-index)")
        params["s"] = format_complex(args.s)
        params["x"] = format_complex(args.x)
        result = l_r(args.s, args.r, args.x, chi, ctx)
    elif args.command == "eval-euler":
        params["n"] = args.n
        params["x"] = format_complex(args.x)
        if chi is None:
            value = euler_poly_r(args.n, args.r, args.x, ctx)
        else:
            value = euler_poly_chi_r(args.n, args.r, args.x, chi, ctx)
        result = SeriesResult(value, 0.0, args.n + 1)
    else:  # eval-genfn
        params["t"] = format_complex(args.t)
        params["x"] = format_complex(args.x)
        if chi is None:
            result = gen_fn(args.t, args.r, args.x, ctx)
        else:
            result = gen_fn_chi(args.t, args.r, args.x, chi, ctx)
    _emit_result(out, args.format, result, params)
    return EXIT_OK


def _run_characters(args, out) -> int:
    if args.validate:
        with open(args.validate, "r", encoding="utf-8") as fh:
            spec = json.load(fh)
        chi = chars.new_character(spec)
        if "values" in spec:
            echo = {"modulus": spec["modulus"], "values": spec["values"]}
        else:
            echo = chars.to_spec(chi)
        out.write(json.dumps(echo, sort_keys=True) + "\n")
        return EXIT_OK
    if args.modulus is None:
        raise DomainError("characters requires --modulus (or --validate FILE)")
    if args.list:
        listed = chars.enumerate_prime_characters(args.modulus)
        out.write(json.dumps([chars.to_spec(c) for c in listed],
                             sort_keys=True) + "\n")
        return EXIT_OK
    if args.index is not None:
        chi = chars.from_generator(args.modulus, args.index)
        out.write(json.dumps(chars.to_spec(chi), sort_keys=True) + "\n")
        return EXIT_OK
    chi = chars.principal(args.modulus)
    out.write(json.dumps(chars.to_spec(chi), sort_keys=True) + "\n")
    return EXIT_OK


def _run_verify(args, out) -> int:
    reports = verify_mod.run_all(args.grid, args.tol)
    for rep in reports:
        status = "PASS" if rep.passed else "FAIL"
        out.write(f"{rep.name:<24} points={rep.points:<6} "
                  f"max_residual={rep.max_residual:.6e} tol={rep.tol:.1e} {status}\n")
    ok = all(r.passed for r in reports)
    out.write(f"verify: {'PASS' if ok else 'FAIL'} "
              f"({sum(r.passed for r in reports)}/{len(reports)} identity blocks)\n")
    return EXIT_OK if ok else EXIT_VERIFY_FAIL


_AXIS_ORDER = ("s_real", "s_imag", "x", "q", "n")


def _parse_axis(name: str, spec: str):
    """Grid 'lo:hi:count' (floats) or 'lo:hi' (ints, for n); otherwise fixed."""
    if ":" not in spec:
        return None
    parts = spec.split(":")
    try:
        if name == "n":
            if len(parts) != 2:
                raise ValueError
            lo, hi = int(parts[0]), int(parts[1])
            if hi < lo:
                raise ValueError
            return [lo + i for i in range(hi - lo + 1)]
        if len(parts) != 3:
            raise ValueError
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 1:
            raise ValueError
        if count == 1:
            return [lo]
        step = (hi - lo) / (count - 1)
        return [lo + i * step for i in range(count)]
    except ValueError:
        raise DomainError(f"malformed grid for --{name.replace('_', '-')}: {spec!r}") from None


def _run_table(args, out) -> int:
    chi = _load_chi(args)
    fixed: dict = {"r": args.r}
    axes: list[tuple[str, list]] = []
    for name in _AXIS_ORDER:
        spec = getattr(args, name, None)
        if spec is None:
            continue
        grid = _parse_axis(name, str(spec))
        if grid is None:
            fixed[name] = int(spec) if name == "n" else parse_complex(str(spec))
        else:
            axes.append((name, grid))
    if not 1 <= len(axes) <= 2:
        raise DomainError(
            f"table needs one or two grid axes, got {len(axes)}")
    if args.fn in ("zeta", "l") and not (
            "s_real" in fixed or any(a == "s_real" for a, _ in axes)):
        raise DomainError("table over zeta/l requires --s-real")
    if args.fn == "genfn" and args.t is None:
        raise DomainError("table over genfn requires --t")
    if args.fn == "l" and chi is None:
        raise DomainError("table over l requires a character")

    def cell(assign: dict):
        q = assign.get("q", fixed.get("q"))
        ctx = EvalContext(complex(q), args.tol, args.max_terms)
        x = complex(assign.get("x", fixed.get("x", 1.0)))
        if args.fn == "euler":
            n = int(assign.get("n", fixed.get("n", 0)))
            if chi is None:
                value = euler_poly_r(n, args.r, x, ctx)
            else:
                value = euler_poly_chi_r(n, args.r, x, chi, ctx)
            return SeriesResult(value, 0.0, n + 1)
        if args.fn == "genfn":
            if chi is None:
                return gen_fn(args.t, args.r, x, ctx)
            return gen_fn_chi(args.t, args.r, x, chi, ctx)
        s = complex(complex(assign.get("s_real", fixed.get("s_real", 0))).real,
                    complex(assign.get("s_imag", fixed.get("s_imag", 0))).real)
        if args.fn == "zeta":
            return zeta_r(s, args.r, x, ctx)
        return l_r(s, args.r, x, chi, ctx)

    axis_names = [a for a, _ in axes]
    rows = []
    grids = [g for _, g in axes]
    combos = [(v,) for v in grids[0]] if len(grids) == 1 else \
        [(u, v) for u in grids[0] for v in grids[1]]
    for combo in combos:
        assign = dict(zip(axis_names, combo))
        row: dict = {name: assign[name] for name in axis_names}
        try:
            res = cell(assign)
            row.update(value_re=res.value.real, value_im=res.value.imag,
                       err_estimate=res.err_estimate, terms_used=res.terms_used,
                       error="")
        except (DomainError, ConvergenceError) as exc:
            row.update(value_re="", value_im="", err_estimate="",
                       terms_used="", error=str(exc))
        rows.append(row)

    header = axis_names + ["value_re", "value_im", "err_estimate",
                           "terms_used", "error"]
    if args.format == "json":
        out.write(json.dumps({"header": header, "rows": rows},
                             sort_keys=True, default=repr) + "\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([repr(row[a]) if isinstance(row[a], float) else row[a]
                        for a in header])
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    try:
        if args.command.startswith("eval-"):
            return _run_eval(args, out)
        if args.command == "characters":
            return _run_characters(args, out)
        if args.command == "verify":
            return _run_verify(args, out)
        if args.command == "table":
            return _run_table(args, out)
        raise DomainError(f"unknown command {args.command!r}")
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    raise SystemExit(main())
