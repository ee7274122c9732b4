"""Command line front end.

Every subcommand prints one JSON document on stdout (or readable text with
``--pretty``).  Exit codes: 0 ok, 1 usage, 2 parse or arity error, 3 ring or
form error, 4 selftest failure.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import sys
from fractions import Fraction

from .dsl import parse_word
from .errors import ArityMismatch, DSLSyntaxError, InvalidBlock, NotALink, RingError
from .forms import forms_equivalent, solve_blocks
from .links import link_corpus, relation_suite
from .matrix import Matrix
from .rep import evaluate_functor, form_from_json, form_to_json, make_representation, rank_n_form
from .ring import Gaussian, LaurentPoly, QuadraticNumber, format_value, parse_point
from .skein import SYMBOLIC, SkeinContext, bracket, expand_to_tl, framing_normalized, kink_unit, statesum_oracle
from .tangle import writhe
from .unitary import is_unitary, norm_bound_report

EXIT_USAGE, EXIT_PARSE, EXIT_RING, EXIT_SELFTEST = 1, 2, 3, 4


class UsageError(Exception):
    pass


class FormFileError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# ------------------------------------------------------------------ helpers


def _context(at):
    if at is None:
        return SYMBOLIC
    point = parse_point(at)
    if isinstance(point, LaurentPoly):
        return SYMBOLIC
    return SkeinContext(point)


def _point(at):
    return parse_point(at) if at is not None else parse_point("A")


def load_form(path):
    """Read a form file ``{"ring": ..., "matrix": [[...], ...]}``."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise FormFileError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise FormFileError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise FormFileError(f"{path}: expected an object with 'ring' and 'matrix'")
    try:
        return form_from_json(data)
    except (ValueError, TypeError) as exc:
        raise FormFileError(f"{path}: {exc}") from None


def _parse_theta(text):
    """``0.3``, ``pi/5``, ``2pi/5``, ``0.25pi``."""
    t = text.replace(" ", "").replace("*", "")
    if "pi" not in t:
        return float(t)
    head, _, tail = t.partition("pi")
    scale = Fraction(head) if head not in ("", "+", "-") else Fraction(f"{head}1")
    if tail:
        if not tail.startswith("/"):
            raise ValueError(f"cannot read angle {text!r}")
        scale /= Fraction(tail[1:])
    return float(scale) * math.pi


def _jsonable(x):
    if isinstance(x, LaurentPoly):
        return x.to_json()
    if isinstance(x, Matrix):
        return [[_scalar_text(v) for v in row] for row in x.rows()]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (Fraction, Gaussian, QuadraticNumber, complex)):
        return _scalar_text(x)
    return x


def _scalar_text(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return str(v.numerator)
    return format_value(v)


def _pretty(x, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(x, dict):
        for k, v in x.items():
            if isinstance(v, (dict, list, Matrix)) and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(x, Matrix):
        rows = [[_scalar_text(v) for v in row] for row in x.rows()]
        width = max((len(s) for r in rows for s in r), default=0)
        lines += [pad + "[ " + "  ".join(s.rjust(width) for s in r) + " ]" for r in rows]
    elif isinstance(x, list):
        for v in x:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(pad + _inline(x))
    return "\n".join(lines)


def _flat(v):
    if isinstance(v, Matrix):
        return False
    if isinstance(v, dict):
        return not v
    if isinstance(v, list):
        return all(not isinstance(i, (dict, list, Matrix)) for i in v)
    return True


def _inline(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return ", ".join(_inline(i) for i in v) or "(none)"
    if v is None:
        return "-"
    if isinstance(v, (Fraction, complex, Gaussian, QuadraticNumber)):
        return _scalar_text(v)
    return str(v)


def _emit(result, pretty):
    if pretty:
        print(_pretty(result))
    else:
        print(json.dumps(_jsonable(result)))


# -------------------------------------------------------------- subcommands


def cmd_bracket(args):
    ctx = _context(args.at)
    w = parse_word(args.expr)
    if not w.is_link():
        raise NotALink(f"expression is {w.source} -> {w.target}, not 0 -> 0")
    value = bracket(w, ctx)
    out = {"bracket": value}
    if args.oracle:
        oracle = statesum_oracle(w)
        if ctx.is_symbolic:
            agree = oracle == value
        else:
            agree = ctx.ring.eq(ctx.scalar(oracle), value)
        out["oracle"] = oracle if ctx.is_symbolic else ctx.scalar(oracle)
        out["agree"] = agree
    if args.normalize_framing:
        out["writhe"] = writhe(w)
        out["kink_unit"] = kink_unit(ctx)
        out["normalized"] = framing_normalized(w, ctx)
    return out, 0


def cmd_normalize(args):
    ctx = _context(args.at)
    w = parse_word(args.expr)
    tl = expand_to_tl(w, ctx)
    terms = [{"matching": str(mt), "coefficient": c} for mt, c in tl.items()]
    return {"source": tl.source, "target": tl.target, "terms": terms}, 0


def cmd_eval(args):
    form = load_form(args.form)
    rep = make_representation(form, _point(args.at))
    w = parse_word(args.expr)
    m = evaluate_functor(rep, w)
    return {"rank": rep.rank, "shape": list(m.shape), "matrix": m}, 0


def cmd_forms_solve(args):
    try:
        delta = Fraction(args.delta)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--delta must be rational, got {args.delta!r}") from None
    sols = solve_blocks(args.rank, delta, args.max_blocks)
    return {"rank": args.rank, "delta": delta,
            "solutions": [s.to_json() for s in sols]}, 0


def cmd_forms_equiv(args):
    left, right = load_form(args.left), load_form(args.right)
    return {"equivalent": forms_equivalent(left, right)}, 0


def cmd_unitary_check(args):
    form = load_form(args.form)
    point = _point(args.at)
    rep = make_representation(form, point)
    unitary = is_unitary(rep)
    out = {"n": rep.rank, "A": point, "unitary": unitary}
    z = complex(point)
    if abs(abs(z) - 1) < 1e-9 and rep.rank >= 2:
        report = norm_bound_report(rep.rank, cmath.phase(z))
        out["bound"] = {"lhs": report["lhs"], "rhs": report["rhs"]}
    else:
        out["bound"] = None
    return out, 0


def cmd_unitary_bound(args):
    try:
        theta = _parse_theta(args.theta)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot read angle {args.theta!r}") from None
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    return norm_bound_report(args.n, theta), 0


def cmd_repgen(args):
    if args.rank < 2:
        raise UsageError("--rank must be at least 2")
    return form_to_json(rank_n_form(args.rank)), 0


def cmd_selftest(args):
    checks = [{"name": name, "ok": ok} for name, ok in relation_suite()]
    corpus = link_corpus(args.corpus, seed=args.seed)
    agree = sum(bracket(w) == statesum_oracle(w) for w in corpus)
    checks.append({"name": f"oracle agreement on {len(corpus)} links", "ok": agree == len(corpus)})
    passed = sum(c["ok"] for c in checks)
    failed = len(checks) - passed
    return {"passed": passed, "failed": failed, "checks": checks}, EXIT_SELFTEST if failed else 0


# ------------------------------------------------------------------- parser


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                        help="human readable output instead of JSON")

    p = _Parser(prog="skeintl", description="Kauffman bracket and Temperley-Lieb engine")
    p.add_argument("--pretty", action="store_true", help="human readable output instead of JSON")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)

    b = sub.add_parser("bracket", parents=[common], help="bracket polynomial of a link")
    b.add_argument("-e", "--expr", required=True)
    b.add_argument("--at", help="evaluation point: A, 3, 2/5, 1/2+3/4i, e^0.2pi")
    b.add_argument("--oracle", action="store_true", help="also run the state sum and compare")
    b.add_argument("--normalize-framing", action="store_true",
                   help="divide by u^writhe, u the positive kink unit")
    b.set_defaults(func=cmd_bracket)

    n = sub.add_parser("normalize", parents=[common], help="Temperley-Lieb normal form")
    n.add_argument("-e", "--expr", required=True)
    n.add_argument("--at")
    n.set_defaults(func=cmd_normalize)

    ev = sub.add_parser("eval", parents=[common], help="matrix of a tangle under a form")
    ev.add_argument("-e", "--expr", required=True)
    ev.add_argument("--form", required=True)
    ev.add_argument("--at")
    ev.set_defaults(func=cmd_eval)

    f = sub.add_parser("forms", parents=[common], help="canonical blocks and equivalence")
    fsub = f.add_subparsers(dest="forms_command", parser_class=_Parser, required=True)
    fs = fsub.add_parser("solve", parents=[common])
    fs.add_argument("--rank", type=int, required=True)
    fs.add_argument("--delta", required=True)
    fs.add_argument("--max-blocks", type=int, default=8)
    fs.set_defaults(func=cmd_forms_solve)
    fe = fsub.add_parser("equiv", parents=[common])
    fe.add_argument("--left", required=True)
    fe.add_argument("--right", required=True)
    fe.set_defaults(func=cmd_forms_equiv)

    u = sub.add_parser("unitary", parents=[common], help="unitary crossing checks")
    usub = u.add_subparsers(dest="unitary_command", parser_class=_Parser, required=True)
    uc = usub.add_parser("check", parents=[common])
    uc.add_argument("--form", required=True)
    uc.add_argument("--at", required=True)
    uc.set_defaults(func=cmd_unitary_check)
    ub = usub.add_parser("bound", parents=[common])
    ub.add_argument("--n", type=int, required=True)
    ub.add_argument("--theta", required=True)
    ub.set_defaults(func=cmd_unitary_bound)

    r = sub.add_parser("repgen", parents=[common], help="emit the rank n form file")
    r.add_argument("--rank", type=int, required=True)
    r.set_defaults(func=cmd_repgen)

    s = sub.add_parser("selftest", parents=[common], help="relation suite and oracle corpus")
    s.add_argument("--corpus", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_selftest)
    return p


def _fail(code, message):
    print(f"error: {message}", file=sys.stderr)
    return code


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        result, code = args.func(args)
    except UsageError as exc:
        return _fail(EXIT_USAGE, exc)
    except (DSLSyntaxError, ArityMismatch, NotALink) as exc:
        return _fail(EXIT_PARSE, exc)
    except (RingError, InvalidBlock, FormFileError) as exc:
        return _fail(EXIT_RING, exc)
    except ValueError as exc:
        # malformed --at values and similar
        return _fail(EXIT_USAGE, exc)
    _emit(result, args.pretty)
    return code


if __name__ == "__main__":
    sys.exit(main())
