"""Text surface for polynomials, operators, subspaces and right ideals.

Grammar (whitespace insensitive, ``D`` or ``∂`` for the derivation)::

    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*
    unary    := "-" unary | power
    power    := atom ("^" INT)?
    atom     := NUMBER | "t" | "D" | "(" expr ")"

    space    := sum ("&" sum)*
    sum      := sfactor ("+" sfactor)*
    sfactor  := "R" | "ideal" "(" expr ")" | "span" "{" expr ("," expr)* "}"
              | "O" "(" expr (";" expr)? ")" | "(" space ")" | scalar "*" sfactor
    scalar   := NUMBER | "t" | "(" expr ")"

    idealtxt := "ideal" "[" expr ((";" | ",") expr)* "]"

``+`` binds tighter than ``&`` so that ``span{1} + ideal(q1) & span{1} + ideal(q2)``
reads as an intersection of two subspaces. A bare ``span{...}`` is only
meaningful inside a sum that also contains a subspace with a nonzero conductor.
"""
import re
from dataclasses import dataclass
from fractions import Fraction

from . import subspace as ss
from ._backend import to_q
from .correspondence import IdealPresentation
from .errors import ParseError
from .poly import Poly, RatFunc
from .weyl import WeylOp

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<name>[A-Za-z_]+|∂)|(?P<sym>[-+*/^(){}\[\],;&]))")


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    pos: int


def tokenize(text):
    tokens, pos = [], 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos,
                             ("number", "identifier", "operator"))
        kind = m.lastgroup
        value = m.group(kind)
        if value == "∂":
            value = "D"
        tokens.append(Token(kind, value, m.start(kind)))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


class _SpanPart:
    """Generators written as span{...} awaiting a subspace to join."""

    def __init__(self, gens):
        self.gens = list(gens)


class Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    # -- token helpers -------------------------------------------------
    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, message, expected=()):
        tok = self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.value)
        raise ParseError(f"{message}, found {found}", self.text, tok.pos, expected)

    def at(self, *values):
        return self.tok.kind in ("sym", "name") and self.tok.value in values

    def take(self, value):
        if not self.at(value):
            self.error("unexpected token", (value,))
        self.i += 1

    def finish(self, expected):
        if self.tok.kind != "eof":
            self.error("trailing input", expected)

    # -- expressions ---------------------------------------------------
    def expr(self):
        value = self.term()
        while self.at("+", "-"):
            op = self.tok.value
            self.i += 1
            rhs = self.term()
            value = self._combine(value, rhs, op)
        return value

    def _combine(self, a, b, op):
        if isinstance(a, RatFunc) or isinstance(b, RatFunc):
            self.error("rational functions may only appear as scale factors")
        return a + b if op == "+" else a - b

    def term(self):
        value = self.unary()
        while self.at("*", "/"):
            op = self.tok.value
            pos = self.tok.pos
            self.i += 1
            rhs = self.unary()
            if isinstance(value, RatFunc) or isinstance(rhs, RatFunc):
                value = self._ratfunc_mul(value, rhs, op, pos)
            elif op == "*":
                value = value * rhs
            else:
                value = self._divide(value, rhs, pos)
        return value

    def _as_poly(self, x, pos):
        if isinstance(x, RatFunc):
            return x
        if not x.is_poly():
            raise ParseError("operator cannot be part of a quotient", self.text, pos)
        return RatFunc(x.as_poly())

    def _ratfunc_mul(self, a, b, op, pos):
        a, b = self._as_poly(a, pos), self._as_poly(b, pos)
        if op == "*":
            return RatFunc(a.num * b.num, a.den * b.den)
        if not b.num:
            raise ParseError("division by zero", self.text, pos)
        return RatFunc(a.num * b.den, a.den * b.num)

    def _divide(self, a, b, pos):
        if b.is_poly() and b.deg_t == 0:
            return a.scale(1 / b.terms[(0, 0)])
        if not b:
            raise ParseError("division by zero", self.text, pos)
        if a.is_poly() and b.is_poly():
            return RatFunc(a.as_poly(), b.as_poly())
        raise ParseError("division only by scalars or between polynomials", self.text, pos)

    def unary(self):
        if self.at("-"):
            self.i += 1
            x = self.unary()
            return RatFunc(-x.num, x.den) if isinstance(x, RatFunc) else -x
        if self.at("+"):
            self.i += 1
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^"):
            self.i += 1
            if self.tok.kind != "num" or "." in self.tok.value:
                self.error("exponent must be a non-negative integer", ("integer",))
            k = int(self.tok.value)
            self.i += 1
            if isinstance(base, RatFunc):
                return RatFunc(base.num ** k, base.den ** k)
            return base ** k
        return base

    def atom(self):
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return WeylOp.const(to_q(Fraction(tok.value)))
        if tok.kind == "name" and tok.value == "t":
            self.i += 1
            return WeylOp.t()
        if tok.kind == "name" and tok.value == "D":
            self.i += 1
            return WeylOp.D()
        if self.at("("):
            self.i += 1
            value = self.expr()
            self.take(")")
            return value
        self.error("expected an expression", ("number", "t", "D", "(", "-"))

    def weyl(self):
        x = self.expr()
        if isinstance(x, RatFunc):
            if not x.is_poly():
                self.error("expected an operator, got a rational function")
            x = WeylOp.from_poly(x.num * (1 / x.den.lc))
        return x

    def poly(self):
        pos = self.tok.pos
        x = self.weyl()
        if not x.is_poly():
            raise ParseError("expected a polynomial in t, found an operator involving D", self.text, pos)
        return x.as_poly()

    # -- subspaces -----------------------------------------------------
    def space(self):
        amp = self.tok.pos
        V = self.subspace_sum()
        while self.at("&"):
            amp = self.tok.pos
            self.i += 1
            W = self.subspace_sum()
            V = ss.intersect(self._complete(V, amp), self._complete(W, amp))
        return V

    def _complete(self, V, pos):
        if isinstance(V, _SpanPart):
            raise ParseError("a span needs a subspace with nonzero conductor, e.g. + ideal(q)",
                             self.text, pos)
        return V

    def subspace_sum(self):
        start = self.tok.pos
        parts = [self.sfactor()]
        while self.at("+"):
            self.i += 1
            parts.append(self.sfactor())
        spaces = [p for p in parts if isinstance(p, ss.Subspace)]
        gens = [g for p in parts if isinstance(p, _SpanPart) for g in p.gens]
        if not spaces:
            if len(parts) == 1:
                return parts[0]
            self._complete(parts[0], start)
        V = spaces[0]
        for W in spaces[1:]:
            V = ss.sum_(V, W)
        if gens:
            V = ss.make(V.modulus, list(V.basis) + gens)
        return V

    def sfactor(self):
        tok = self.tok
        if tok.kind == "name" and tok.value == "R":
            self.i += 1
            return ss.R()
        if tok.kind == "name" and tok.value == "ideal":
            self.i += 1
            self.take("(")
            q = self._nonzero(self.poly(), tok.pos)
            self.take(")")
            return ss.ideal(q)
        if tok.kind == "name" and tok.value == "span":
            self.i += 1
            self.take("{")
            gens = [self.poly()]
            while self.at(","):
                self.i += 1
                gens.append(self.poly())
            self.take("}")
            return _SpanPart(gens)
        if tok.kind == "name" and tok.value == "O":
            self.i += 1
            self.take("(")
            b = self._nonzero(self.poly(), tok.pos)
            if self.at(";"):
                self.i += 1
                h = self.poly()
                self.take(")")
                return ss.Oh_space(b, h)
            self.take(")")
            return ss.O_space(b)
        if self.at("("):
            saved = self.i
            self.i += 1
            try:
                V = self.space()
                self.take(")")
                if not self.at("*"):
                    return V
            except ParseError:
                pass
            self.i = saved
        if tok.kind in ("num", "name") or self.at("("):
            s = self._scalar()
            self.take("*")
            V = self.sfactor()
            if isinstance(V, _SpanPart):
                raise ParseError("scale a complete subspace, not a bare span", self.text, tok.pos)
            return ss.scale(V, s)
        self.error("expected a subspace", ("R", "ideal", "span", "O", "("))

    def _scalar(self):
        tok = self.tok
        if tok.kind == "num" or (tok.kind == "name" and tok.value == "t") or self.at("("):
            x = self.atom() if not self.at("(") else self._paren_ratfunc()
            if isinstance(x, WeylOp):
                if not x.is_poly():
                    raise ParseError("scale factor must not involve D", self.text, tok.pos)
                x = RatFunc(x.as_poly())
            return x
        self.error("expected a scale factor", ("number", "t", "("))

    def _paren_ratfunc(self):
        self.take("(")
        x = self.expr()
        self.take(")")
        return x

    def _nonzero(self, p, pos):
        if not p:
            raise ParseError("the zero polynomial is not allowed here", self.text, pos)
        return p

    # -- ideals ----------------------------------------------------------
    def ideal_presentation(self):
        tok = self.tok
        if not (tok.kind == "name" and tok.value == "ideal"):
            self.error("expected an ideal", ("ideal",))
        self.i += 1
        if self.at("("):
            self.i += 1
            g = self.weyl()
            self.take(")")
            gens = [g]
        else:
            self.take("[")
            gens = [self.weyl()]
            while self.at(";", ","):
                self.i += 1
                gens.append(self.weyl())
            self.take("]")
        gens = [g for g in gens if g]
        if not gens:
            raise ParseError("an ideal needs a nonzero generator", self.text, tok.pos)
        return IdealPresentation(tuple(gens))


def parse_weyl(text):
    p = Parser(text)
    x = p.weyl()
    p.finish(("+", "-", "*", "/", "^"))
    return x


def parse_poly(text):
    p = Parser(text)
    x = p.poly()
    p.finish(("+", "-", "*", "/", "^"))
    return x


def parse_ratfunc(text):
    p = Parser(text)
    x = p.expr()
    p.finish(("+", "-", "*", "/", "^"))
    if isinstance(x, WeylOp):
        if not x.is_poly():
            raise ParseError("expected a rational function of t", text, 0)
        x = RatFunc(x.as_poly())
    return x


def parse_subspace(text):
    p = Parser(text)
    V = p.space()
    p.finish(("+", "&"))
    if isinstance(V, _SpanPart):
        raise ParseError("a span needs a subspace with nonzero conductor, e.g. + ideal(q)", text, 0)
    return V


def parse_ideal(text):
    p = Parser(text)
    I = p.ideal_presentation()
    p.finish(())
    return I


def parse(text):
    """Parse any value: ideals, then subspaces, then operators/polynomials."""
    stripped = text.lstrip()
    if stripped.startswith("ideal["):
        return parse_ideal(text)
    if re.search(r"\b(R|ideal|span|O)\b", stripped) or "&" in text:
        return parse_subspace(text)
    try:
        return parse_weyl(text)
    except ParseError as first:
        try:
            return parse_subspace(text)
        except ParseError:
            raise first from None


def render(value, unicode=False):
    """Canonical text for any engine value."""
    if isinstance(value, WeylOp):
        return value.to_str(unicode=unicode)
    if isinstance(value, ss.Subspace):
        return str(ss.canonicalize(value))
    if isinstance(value, IdealPresentation):
        if unicode:
            return "ideal[" + "; ".join(g.to_str(unicode=True) for g in value.generators) + "]"
        return str(value)
    return str(value)
