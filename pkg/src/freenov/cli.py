"""Command-line interface; every subcommand prints one JSON object.

Exit status: 0 on success, 2 on domain errors (a JSON error object is printed),
1 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .errors import MalformedInput, NovikovError
from .evaluation import (
    SearchConfig,
    eval_lambda,
    eval_s,
    find_nonvanishing_specialization,
    independence_rank,
    lemma1_fg,
    reconstruct,
)
from .freiheit import DEFAULT_ORDER, DifferentialPolynomial, find_regular_point, freiheitssatz_witness, residual, solve_ode
from .novikov import multilinearize, parse, parse_words, to_tableau_basis
from .poly import AffineForm, Polynomial, format_fraction
from .tableau import NovikovTableau, enumerate_tableaux, word, word_to_text

SCHEMA = 1
DEFAULT_MAX_DEGREE = 8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(text):
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise MalformedInput(f"expected comma-separated integers, got {text!r}") from None


def _fractions(text):
    try:
        return tuple(Fraction(v.strip()) for v in text.split(",") if v.strip())
    except (ValueError, ZeroDivisionError):
        raise MalformedInput(f"expected comma-separated rationals, got {text!r}") from None


def max_degree():
    raw = os.environ.get("NOVIKOV_MAX_DEGREE", str(DEFAULT_MAX_DEGREE))
    try:
        return int(raw)
    except ValueError:
        raise MalformedInput(f"NOVIKOV_MAX_DEGREE must be an integer, got {raw!r}") from None


def _cap(degree):
    cap = max_degree()
    if degree > cap:
        raise MalformedInput(f"degree {degree} exceeds NOVIKOV_MAX_DEGREE={cap}")


def _multidegree(args):
    if args.multidegree:
        md = _ints(args.multidegree)
    elif args.n is not None:
        md = (1,) * args.n
    else:
        raise UsageError("give --multidegree or --n")
    if any(d < 0 for d in md) or sum(md) < 1:
        raise MalformedInput(f"bad multidegree {md}")
    _cap(sum(md))
    return md


def _tableau_json(t):
    out = t.to_json()
    out["word"] = word_to_text(word(t))
    return out


def _expr(args, flag="expr"):
    text = getattr(args, flag)
    if text is None:
        raise UsageError(f"--{flag} is required")
    return text


# -- subcommands --------------------------------------------------------------------

def cmd_basis(args):
    md = _multidegree(args)
    tabs = enumerate_tableaux(md)
    return {"multidegree": list(md), "dimension": len(tabs), "tableaux": [_tableau_json(t) for t in tabs]}


def cmd_dim(args):
    md = _multidegree(args)
    dim = len(enumerate_tableaux(md))
    if args.multidegree:
        return {"multidegree": list(md), "dimension": dim}
    return {"n": args.n, "dimension": dim}


def cmd_expand(args):
    e = parse(_expr(args))
    return {"element": e.to_json(), "text": str(e)}


def cmd_nf(args):
    e = parse(_expr(args))
    comps = []
    for md, part in e.components().items():
        _cap(sum(md))
        tabs = enumerate_tableaux(md)
        coords = to_tableau_basis(part, md)
        comps.append({
            "multidegree": list(md),
            "terms": [
                {"tableau": t.to_json(), "word": word_to_text(word(t)), "coefficient": format_fraction(c)}
                for t, c in zip(tabs, coords) if c
            ],
        })
    return {"components": comps}


def _config(args):
    return SearchConfig(max_grid=args.max_grid, seed=args.seed)


def cmd_identity_check(args):
    e = parse(_expr(args))
    if args.n is not None and e.max_generator() > args.n:
        raise MalformedInput(f"expression uses x{e.max_generator()} but --n is {args.n}")
    for md, part in e.components().items():
        (ml,), mapping = multilinearize(part)
        _cap(sum(md))
        hit = find_nonvanishing_specialization(ml, args.min_exponent, _config(args))
        return {
            "identity": False,
            "counterexample": {
                "multidegree": list(md),
                "multilinear": str(ml),
                "fresh_variables": {f"x{i}": [f"x{j}" for j in js] for i, js in mapping.items()},
                **hit.to_json(),
            },
        }
    return {"identity": True}


def cmd_lemma1(args):
    if args.tableau is None:
        raise UsageError("--tableau is required")
    return lemma1_fg(NovikovTableau.from_json(args.tableau)).to_json()


def cmd_reconstruct(args):
    if args.f is None or args.g is None:
        raise UsageError("--f and --g are required")
    t = reconstruct(Polynomial.parse(args.f), AffineForm.parse(args.g))
    return {"tableau": t.to_json(), "word": word_to_text(word(t))}


def cmd_independence(args):
    if args.n is None:
        raise UsageError("--n is required")
    _cap(args.n)
    rank, size = independence_rank(args.n)
    return {"n": args.n, "rank": rank, "size": size}


def cmd_eval(args):
    combo = parse_words(_expr(args))
    if args.s:
        s = _ints(args.s)
        return {"s": list(s), "image": str(eval_s(combo, s))}
    img = eval_lambda(combo)
    return {"lambda_image": img.to_json()}


def cmd_solve_ode(args):
    if args.f is None:
        raise UsageError("--f (the differential polynomial h) is required")
    h = DifferentialPolynomial.parse(args.f)
    if args.point:
        point = _fractions(args.point)
        reg = None
        target = h
    else:
        reg = find_regular_point(h, args.max_grid)
        point = reg
        target = reg.reduced
    overrides = {}
    for item in args.override or []:
        j, _, v = item.partition("=")
        overrides[int(j)] = Fraction(v)
    series = solve_ode(target, point, args.order, overrides=overrides)
    res = residual(h, series)
    return {
        "h": str(h),
        "solved": str(target),
        "regular_point": reg.to_json() if reg else [format_fraction(v) for v in point],
        "series": series.to_json(),
        "residual_zero": res.is_zero(),
        "residual_order": res.order,
    }


def cmd_witness(args):
    if args.f is None or args.g is None:
        raise UsageError("--f and --g are required")
    f, g = parse(args.f), parse(args.g)
    report = freiheitssatz_witness(
        f, g, order=args.order, min_exponent=args.min_exponent, max_grid=args.max_grid,
        config=SearchConfig(max_grid=max(8, args.max_grid), seed=args.seed),
    )
    return report.to_json()


COMMANDS = {
    "basis": cmd_basis,
    "dim": cmd_dim,
    "expand": cmd_expand,
    "nf": cmd_nf,
    "identity-check": cmd_identity_check,
    "lemma1": cmd_lemma1,
    "reconstruct": cmd_reconstruct,
    "independence": cmd_independence,
    "eval": cmd_eval,
    "solve-ode": cmd_solve_ode,
    "witness": cmd_witness,
}


def build_parser():
    p = _Parser(prog="freenov", description="Free Novikov algebra toolkit")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--n", type=int)
        s.add_argument("--multilinear", action="store_true")
        s.add_argument("--multidegree")
        s.add_argument("--expr")
        s.add_argument("--tableau")
        s.add_argument("--f")
        s.add_argument("--g")
        s.add_argument("--s", help="specialisation exponents, e.g. 2,3")
        s.add_argument("--point", help="regular point c,c_a1,...,c_ar for solve-ode")
        s.add_argument("--override", action="append", help="j=value for a free low-order coefficient")
        s.add_argument("--order", type=int, default=DEFAULT_ORDER)
        s.add_argument("--max-grid", type=int, default=None)
        s.add_argument("--min-exponent", type=int, default=None)
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--format", choices=["json", "text"], default="json")
    return p


def _text(obj, indent=""):
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)):
                lines.append(f"{indent}{k}:")
                lines.extend(_text(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{indent}-")
                lines.extend(_text(v, indent + "  "))
            else:
                lines.append(f"{indent}- {v}")
    else:
        lines.append(f"{indent}{obj}")
    return lines


def emit(obj, fmt="json", stream=None):
    stream = stream or sys.stdout
    if fmt == "text":
        stream.write("\n".join(_text(obj)) + "\n")
    else:
        stream.write(json.dumps(obj, separators=(",", ":")) + "\n")


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required: " + ", ".join(COMMANDS))
        if args.max_grid is None:
            args.max_grid = 8 if args.command == "identity-check" else 4
        if args.min_exponent is None:
            args.min_exponent = 2 if args.command == "witness" else 0
        result = COMMANDS[args.command](args)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return 1
    except NovikovError as exc:
        emit({"error": exc.to_json(), "schema": SCHEMA}, "json", stdout)
        return 2
    result["schema"] = SCHEMA
    emit(result, args.format, stdout)
    return 0


def main(argv=None):
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
