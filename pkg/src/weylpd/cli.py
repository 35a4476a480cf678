"""Command-line front end: ``weylpd <command> [options]``.

Exit codes: 0 success, 2 parse error, 3 precondition violation,
4 inconclusive or not found, 5 verification failure.
"""
import argparse
import json
import sys

from . import correspondence as corr
from . import oracle
from . import subspace as ss
from .correspondence import Caps
from .errors import ParseError, PreconditionError, VerificationError
from .poly import RatFunc
from .syntax import parse_ideal, parse_poly, parse_ratfunc, parse_subspace, parse_weyl, render
from .weyl import apply, build_f, commutator, sigma

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_UNDECIDED, EXIT_VERIFY = 0, 2, 3, 4, 5
STATUS = {EXIT_OK: "ok", EXIT_PARSE: "parse-error", EXIT_PRECONDITION: "precondition",
          EXIT_UNDECIDED: "undecided", EXIT_VERIFY: "verification-failure"}


class Context:
    def __init__(self, args):
        self.args = args
        self.caps = parse_caps(args.caps, args.slack)
        self.unicode = args.unicode
        self._file_lines = None

    def text(self, name):
        """The raw text of an input option, falling back to the next --file line."""
        value = getattr(self.args, name, None)
        if value is not None:
            return value
        if self.args.file:
            if self._file_lines is None:
                with open(self.args.file, encoding="utf-8") as fh:
                    self._file_lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
            if self._file_lines:
                return self._file_lines.pop(0)
        raise PreconditionError(f"missing input --{name.replace('_', '-')}")

    def texts(self, name, count):
        values = list(getattr(self.args, name, None) or [])
        while len(values) < count:
            values.append(self._next_file_line(name))
        return values

    def _next_file_line(self, name):
        saved = getattr(self.args, name, None)
        setattr(self.args, name, None)
        try:
            return self.text(name)
        finally:
            setattr(self.args, name, saved)

    def show(self, value):
        return render(value, unicode=self.unicode)


def parse_caps(text, slack=None):
    kwargs = {}
    if text:
        stripped = text.strip()
        if stripped.startswith("{"):
            try:
                kwargs = json.loads(stripped)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad caps JSON: {exc.msg}", text, exc.pos) from None
        else:
            for item in filter(None, (s.strip() for s in stripped.split(","))):
                key, sep, value = item.partition("=")
                if not sep or not value.strip().isdigit():
                    raise ParseError("caps must look like key=int,key=int", text, text.find(item),
                                     ("p_max", "t_max", "window", "r_max", "slack"))
                kwargs[key.strip()] = int(value)
    if slack is not None:
        kwargs["slack"] = slack
    try:
        return Caps(**kwargs)
    except TypeError:
        unknown = sorted(set(kwargs) - set(Caps.__dataclass_fields__))
        raise ParseError(f"unknown caps field {', '.join(unknown) or '?'}", text or "", 0,
                         tuple(Caps.__dataclass_fields__)) from None


# ---------------------------------------------------------------------------
# commands: each returns (exit_code, text, json_result)


def _subspace_result(ctx, V):
    V = ss.canonicalize(V)
    return EXIT_OK, ctx.show(V), {"kind": "subspace", **V.to_dict(), "text": ctx.show(V)}


def _weyl_result(ctx, d):
    return EXIT_OK, ctx.show(d), {"kind": "weyl", "text": ctx.show(d)}


def _poly_result(ctx, p):
    return EXIT_OK, str(p), {"kind": "poly", "text": str(p)}


def _bool_result(value, what):
    return EXIT_OK, "true" if value else "false", {"kind": "bool", "value": bool(value), "what": what}


def cmd_normalize(ctx):
    return _weyl_result(ctx, parse_weyl(ctx.text("expr")))


def cmd_apply(ctx):
    d = parse_weyl(ctx.text("op"))
    return _poly_result(ctx, apply(d, parse_poly(ctx.text("poly"))))


def cmd_mul(ctx):
    a, b = ctx.texts("operand", 2)
    return _weyl_result(ctx, parse_weyl(a) * parse_weyl(b))


def cmd_commutator(ctx):
    a, b = ctx.texts("operand", 2)
    return _weyl_result(ctx, commutator(parse_weyl(a), parse_weyl(b)))


def cmd_sigma(ctx):
    h = parse_poly(ctx.text("h"))
    return _weyl_result(ctx, sigma(h, parse_weyl(ctx.text("op"))))


def cmd_build_f(ctx):
    return _weyl_result(ctx, build_f(parse_poly(ctx.text("b"))))


def cmd_conductor(ctx):
    return _poly_result(ctx, ss.conductor(parse_subspace(ctx.text("space"))))


def cmd_stabilizer(ctx):
    rep = ss.stabilizer(parse_subspace(ctx.text("space")))
    A = ss.canonicalize(rep.algebra)
    text = f"{ctx.show(A)}\nunital algebra: {'yes' if rep.is_unital_algebra else 'no'}"
    return EXIT_OK, text, {"kind": "stabilizer", "algebra": A.to_dict(),
                           "is_unital_algebra": rep.is_unital_algebra, "text": ctx.show(A)}


def _fold(ctx, op):
    spaces = [parse_subspace(s) for s in ctx.texts("space", 2)]
    V = spaces[0]
    for W in spaces[1:]:
        V = op(V, W)
    return _subspace_result(ctx, V)


def cmd_sum(ctx):
    return _fold(ctx, ss.sum_)


def cmd_intersect(ctx):
    return _fold(ctx, ss.intersect)


def cmd_scale(ctx):
    V = parse_subspace(ctx.text("space"))
    s = parse_ratfunc(ctx.text("by"))
    return _subspace_result(ctx, ss.scale(V, s if isinstance(s, RatFunc) else RatFunc(s)))


def cmd_member(ctx):
    V = parse_subspace(ctx.text("space"))
    return _bool_result(ss.membership(V, parse_poly(ctx.text("poly"))), "member")


def cmd_equal(ctx):
    a, b = ctx.texts("space", 2)
    return _bool_result(ss.equal(parse_subspace(a), parse_subspace(b)), "equal")


def _verdict_text(v):
    if isinstance(v, corr.PD):
        extra = ""
        if v.realizers:
            extra = "; realizers " + ", ".join(str(f) for f in v.realizers)
        return f"primary-decomposable (r={v.r}, witness b={v.b}, route {v.route}{extra})"
    if isinstance(v, corr.NotPD):
        compact = str(v.q).replace(" ", "")
        return f"not-primary-decomposable ({v.rule}: q={compact} irreducible, deg {v.q.degree})"
    return (f"inconclusive within caps (p_max={v.caps.p_max}; last span of d(1) = {v.last_star1}; "
            f"stabilized={'yes' if v.stabilized else 'no'})")


def cmd_pd_test(ctx):
    V = parse_subspace(ctx.text("space"))
    v = corr.pd_decide(V, ctx.caps, route=ctx.args.route)
    code = EXIT_UNDECIDED if isinstance(v, corr.Inconclusive) else EXIT_OK
    return code, _verdict_text(v), {"kind": "verdict", **v.to_dict()}


def cmd_gamma(ctx):
    V = parse_subspace(ctx.text("space"))
    I, rep = corr.gamma(V, ctx.caps)
    text = (f"{ctx.show(I)}\ntruncation-verified for deg_D <= {ctx.caps.p_max}; "
            f"witness b={rep.witness}; enlarged: {'yes' if rep.enlarged else 'no'}")
    return EXIT_OK, text, {"kind": "gamma", "ideal": ctx.show(I), "report": rep.to_dict(),
                           "poly_member": str(I.poly_member)}


def _ideal_with_member(ctx):
    I = parse_ideal(ctx.text("ideal"))
    if I.poly_member is None:
        q = corr.find_poly_in_ideal(I, ctx.caps)
        if q is None:
            return None
        I = I.with_member(q)
    return I


_NOT_FOUND = "no polynomial member found within caps"


def cmd_gamma_inv(ctx):
    I = _ideal_with_member(ctx)
    if I is None:
        return EXIT_UNDECIDED, _NOT_FOUND, {"kind": "not-found", "caps": ctx.caps.to_dict()}
    return _subspace_result(ctx, corr.star1(I, ctx.caps))


def cmd_find_poly(ctx):
    I = parse_ideal(ctx.text("ideal"))
    q = corr.find_poly_in_ideal(I, ctx.caps)
    if q is None:
        return EXIT_UNDECIDED, _NOT_FOUND, {"kind": "not-found", "caps": ctx.caps.to_dict()}
    return _poly_result(ctx, q)


def cmd_roundtrip(ctx):
    if ctx.args.space is not None or ctx.args.ideal is None:
        V = parse_subspace(ctx.text("space"))
        rep = corr.roundtrip_gamma_inv_gamma(V, ctx.caps)
        ok = rep["ok"]
        text = f"star1(gamma(V)) = V: {'yes' if ok else 'no'} ({ctx.show(rep['star1'])})"
        payload = {"kind": "roundtrip", "direction": "space", "ok": ok,
                   "star1": ss.canonicalize(rep["star1"]).to_dict()}
    else:
        I = _ideal_with_member(ctx)
        if I is None:
            return EXIT_UNDECIDED, _NOT_FOUND, {"kind": "not-found", "caps": ctx.caps.to_dict()}
        rep = corr.roundtrip_gamma_gamma_inv(I, ctx.caps)
        ok = rep["ok"]
        dims = ", ".join(f"p={r['p']}: {r['ideal_dim']}/{r['drv_dim']}" for r in rep["truncations"])
        text = (f"generators in D(R, I*1): {'yes' if rep['generators_in_DRV'] else 'no'}\n"
                f"truncation dims (ideal/D(R,V)): {dims}\n"
                f"agree for deg_D <= {ctx.caps.p_max}: {'yes' if rep['truncations_agree'] else 'no'}")
        payload = {"kind": "roundtrip", "direction": "ideal", "ok": ok,
                   "generators_in_DRV": rep["generators_in_DRV"], "truncations": rep["truncations"],
                   "star1": ss.canonicalize(rep["star1"]).to_dict()}
    return (EXIT_OK if ok else EXIT_VERIFY), text, payload


def cmd_verify(ctx):
    a = ctx.args
    reports = oracle.run_suite(a.suite, seed=a.seed, caps=ctx.caps, count=a.count, jobs=a.jobs)
    return reports


def cmd_oracle(ctx):
    a = ctx.args
    if a.demo == "zero-conductor":
        rep = oracle.oracle_zero_conductor_demo(a.degree)
        text = f"{'PASS' if rep.passed else 'FAIL'} {rep.description}"
        return (EXIT_OK if rep.passed else EXIT_VERIFY), text, {"kind": "case", **rep.to_dict()}
    d = parse_weyl(ctx.text("op"))
    V = parse_subspace(ctx.text("space"))
    slow = oracle.oracle_in_DRV(d, V, a.multiplier)
    fast = corr.in_DRV(d, V, ctx.caps.slack)
    agree = slow == fast
    text = f"oracle: {str(slow).lower()}; finite criterion: {str(fast).lower()}; agree: {'yes' if agree else 'no'}"
    return (EXIT_OK if agree else EXIT_VERIFY), text, {"kind": "oracle-in-drv", "agree": agree,
                                                       "fast": fast, "oracle": slow}


COMMANDS = {
    "normalize": (cmd_normalize, "print an operator in t-before-D normal form"),
    "apply": (cmd_apply, "apply an operator to a polynomial"),
    "mul": (cmd_mul, "multiply two operators"),
    "commutator": (cmd_commutator, "commutator [a, b] = ab - ba"),
    "sigma": (cmd_sigma, "apply the automorphism D -> D - h"),
    "build-f": (cmd_build_f, "the operator D^-1 b D^(m+1) for a polynomial b"),
    "conductor": (cmd_conductor, "monic generator of the largest ideal inside a subspace"),
    "stabilizer": (cmd_stabilizer, "the subspace {s : sV in V}"),
    "sum": (cmd_sum, "sum of subspaces"),
    "intersect": (cmd_intersect, "intersection of subspaces"),
    "scale": (cmd_scale, "multiply a subspace by a polynomial or rational function"),
    "member": (cmd_member, "test polynomial membership in a subspace"),
    "equal": (cmd_equal, "test equality of subspaces"),
    "pd-test": (cmd_pd_test, "decide primary decomposability (three-valued)"),
    "gamma": (cmd_gamma, "generators of the right ideal D(R, V)"),
    "gamma-inv": (cmd_gamma_inv, "the subspace I*1 of a right ideal"),
    "find-poly": (cmd_find_poly, "search for a nonzero polynomial in a right ideal"),
    "roundtrip": (cmd_roundtrip, "check the round trips between subspaces and ideals"),
    "verify": (cmd_verify, "run a seeded verification suite"),
    "oracle": (cmd_oracle, "brute-force oracle demonstrations"),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global options")
    g.add_argument("--caps", default=argparse.SUPPRESS,
                   help="search caps, e.g. 'p_max=6,t_max=8,window=3,r_max=6' or a JSON object")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized suites")
    g.add_argument("--slack", type=int, default=argparse.SUPPRESS,
                   help="extra indices beyond the finite membership bound")
    g.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                   help="emit JSON records with sorted keys")
    g.add_argument("--unicode", action="store_true", default=argparse.SUPPRESS,
                   help="print the derivation as ∂")
    g.add_argument("--file", default=argparse.SUPPRESS,
                   help="read missing inputs from this file, one per non-empty line")

    epilog = "commands:\n" + "\n".join(f"  {name:<12} {doc}" for name, (_, doc) in COMMANDS.items())
    epilog += "\n\nexit codes: 0 ok, 2 parse error, 3 precondition, 4 inconclusive/not found, 5 verification failure"
    parser = argparse.ArgumentParser(prog="weylpd", parents=[common], epilog=epilog,
                                     formatter_class=argparse.RawDescriptionHelpFormatter,
                                     description="Exact computations in the first Weyl algebra over Q.")
    sub = parser.add_subparsers(dest="command", metavar="command", required=True)

    def add(name, *opts):
        p = sub.add_parser(name, parents=[common], help=COMMANDS[name][1], description=COMMANDS[name][1])
        for args, kw in opts:
            p.add_argument(*args, **kw)
        return p

    op = (("--op",), {"help": "operator, e.g. 't*D - 1'"})
    space = (("--space",), {"help": "subspace, e.g. 'span{1} + ideal(t^2+1)'"})
    spaces = (("--space",), {"action": "append", "help": "subspace (repeat for each operand)"})
    ideal = (("--ideal",), {"help": "right ideal, e.g. 'ideal[t*D - 1; t^3]'"})
    add("normalize", (("expr",), {"nargs": "?", "help": "operator expression"}))
    add("apply", op, (("--poly",), {"help": "polynomial in t"}))
    add("mul", (("operand",), {"nargs": "*", "help": "two operators"}))
    add("commutator", (("operand",), {"nargs": "*", "help": "two operators"}))
    add("sigma", (("--h",), {"help": "polynomial h"}), op)
    add("build-f", (("--b",), {"help": "nonzero polynomial b"}))
    add("conductor", space)
    add("stabilizer", space)
    add("sum", spaces)
    add("intersect", spaces)
    add("scale", space, (("--by",), {"help": "polynomial or quotient num/den"}))
    add("member", space, (("--poly",), {"help": "polynomial in t"}))
    add("equal", spaces)
    add("pd-test", space, (("--route",), {"choices": ("auto", "theorem8"), "default": "auto",
                                          "help": "auto tries the witness search first"}))
    add("gamma", space)
    add("gamma-inv", ideal)
    add("find-poly", ideal)
    add("roundtrip", space, ideal)
    add("verify", (("suite",), {"choices": oracle.SUITES}),
        (("--count",), {"type": int, "help": "number of cases (suite default otherwise)"}),
        (("--jobs",), {"type": int, "default": 1, "help": "worker processes"}))
    add("oracle", (("demo",), {"choices": ("zero-conductor", "in-drv")}),
        (("--degree",), {"type": int, "default": 12, "help": "truncation degree for zero-conductor"}),
        (("--multiplier",), {"type": int, "default": 3, "help": "index multiplier for in-drv"}),
        op, space)
    return parser


_GLOBAL_DEFAULTS = {"caps": None, "seed": 0, "slack": None, "json": False, "unicode": False, "file": None}


def _emit(out, args, command, code, text, payload):
    if args.json:
        record = {"command": command, "exit_code": code, "status": STATUS[code], "result": payload}
        out.write(json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        out.write(text + "\n")


def _run_verify(ctx, out):
    reports = cmd_verify(ctx)
    failed = [r for r in reports if not r.passed]
    for r in reports:
        code = EXIT_OK if r.passed else EXIT_VERIFY
        if ctx.args.json:
            _emit(out, ctx.args, "verify", code, "", {"kind": "case", **r.to_dict()})
        else:
            line = f"{'PASS' if r.passed else 'FAIL'} {r.suite}#{r.index} {r.description}"
            if not r.passed:
                line += " " + json.dumps(r.payload, sort_keys=True, default=str)
            out.write(line + "\n")
    code = EXIT_VERIFY if failed else EXIT_OK
    summary = {"kind": "summary", "suite": ctx.args.suite, "seed": ctx.args.seed, "total": len(reports),
               "passed": len(reports) - len(failed), "failed": [r.index for r in failed]}
    _emit(out, ctx.args, "verify", code,
          f"{ctx.args.suite}: {summary['passed']}/{summary['total']} passed (seed {ctx.args.seed})", summary)
    return code


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    for key, value in _GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    try:
        ctx = Context(args)
        if args.command == "verify":
            return _run_verify(ctx, out)
        code, text, payload = COMMANDS[args.command][0](ctx)
    except ParseError as exc:
        code, text, payload = EXIT_PARSE, f"parse error: {exc}", {
            "kind": "error", "message": str(exc), "line": exc.line, "column": exc.column,
            "expected": list(exc.expected)}
    except (PreconditionError, ZeroDivisionError, OSError) as exc:
        code, text, payload = EXIT_PRECONDITION, f"precondition violated: {exc}", {
            "kind": "error", "message": str(exc)}
    except VerificationError as exc:
        code, text, payload = EXIT_VERIFY, f"verification failed: {exc}", {
            "kind": "error", "message": str(exc), "payload": json.loads(json.dumps(exc.payload, default=str))}
    if code in (EXIT_PARSE, EXIT_PRECONDITION, EXIT_VERIFY) and not args.json:
        err.write(text + "\n")
    else:
        _emit(out, args, args.command, code, text, payload)
    return code


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
