"""Canonical text rendering and parsing of parameters and torus elements.

Grammar (whitespace is insignificant)::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor (['*'] factor)*
    factor  := INT | t[a]^{n} | t[a]^{n/2} | *PER(a0,P)[p1,...,pP]
             | Y[i,r]^e | X[k]^e | '(' expr ')'

A parenthesised group may only contain parameters.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .params import ExpSeq, ParamLaurent, ParamMonomial, fmt_half
from .torus import MONO_ONE, Backend, Monomial, TorusElement


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<per>\*?PER\(\s*(-?\d+)\s*,\s*(\d+)\s*\)\[([^\]]*)\])
  | (?P<t>t\[\s*(-?\d+)\s*\](?:\^\{\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?\}|\^(-?\d+))?)
  | (?P<y>Y\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\](?:\^\{\s*(-?\d+)\s*\}|\^(-?\d+))?)
  | (?P<x>X\[\s*(\d+)\s*\](?:\^\{\s*(-?\d+)\s*\}|\^(-?\d+))?)
  | (?P<num>\d+)
  | (?P<op>[-+*()])
""", re.VERBOSE)


def _half(num: str, den: str | None) -> int:
    f = Fraction(int(num), int(den) if den else 1) * 2
    if f.denominator != 1:
        raise ParseError(f"exponent {num}/{den} is not a half-integer")
    return int(f)


def _tokens(text: str):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected input at {pos}: {text[pos:pos + 12]!r}")
        pos = m.end()
        kind = m.lastgroup
        g = m.groups()
        if kind == "ws":
            continue
        if kind == "per":
            start, P, body = int(g[2]), int(g[3]), g[4]
            vals = []
            for part in body.split(","):
                part = part.strip()
                if not part:
                    raise ParseError("empty tail entry")
                n, _, d = part.partition("/")
                try:
                    vals.append(_half(n, d or None))
                except ValueError as e:
                    raise ParseError(str(e)) from None
            if len(vals) != P:
                raise ParseError(f"tail declares period {P} but lists {len(vals)} values")
            out.append(("param", ParamMonomial(ExpSeq.make({}, (start, tuple(vals))))))
        elif kind == "t":
            a = int(g[6])
            if g[7] is not None:
                v = _half(g[7], g[8])
            elif g[9] is not None:
                v = 2 * int(g[9])
            else:
                v = 2
            out.append(("param", ParamMonomial(ExpSeq.single(a, v))))
        elif kind == "y":
            e = g[13] if g[13] is not None else g[14]
            out.append(("var", ((int(g[11]), int(g[12])), int(e) if e is not None else 1)))
        elif kind == "x":
            e = g[17] if g[17] is not None else g[18]
            out.append(("var", (int(g[16]), int(e) if e is not None else 1)))
        elif kind == "num":
            out.append(("num", int(m.group("num"))))
        else:
            out.append(("op", m.group("op")))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expr(self, params_only: bool):
        terms = []
        sign = 1
        k, v = self.peek()
        if k == "op" and v in "+-":
            self.take()
            sign = -1 if v == "-" else 1
        terms.append(self.term(sign, params_only))
        while True:
            k, v = self.peek()
            if k == "op" and v in "+-":
                self.take()
                terms.append(self.term(-1 if v == "-" else 1, params_only))
            else:
                break
        return terms

    def term(self, sign: int, params_only: bool):
        coef = ParamLaurent.const(sign)
        mono: dict = {}
        got = False
        while True:
            k, v = self.peek()
            if k == "op" and v == "*":
                if not got:
                    raise ParseError("'*' without a left factor")
                self.take()
                k, v = self.peek()
                if k is None or (k == "op" and v in "+-)*"):
                    raise ParseError("dangling '*'")
                continue
            if k == "num":
                self.take()
                coef = coef * v
            elif k == "param":
                self.take()
                coef = coef * v
            elif k == "var":
                if params_only:
                    raise ParseError("variables are not allowed here")
                self.take()
                var, e = v
                mono[var] = mono.get(var, 0) + e
            elif k == "op" and v == "(":
                self.take()
                inner = self.expr(True)
                k2, v2 = self.take()
                if (k2, v2) != ("op", ")"):
                    raise ParseError("missing ')'")
                s = ParamLaurent()
                for c, _ in inner:
                    s = s + c
                coef = coef * s
            else:
                break
            got = True
        if not got:
            raise ParseError("empty term")
        return coef, mono

    def done(self):
        if self.i != len(self.toks):
            raise ParseError(f"trailing input near token {self.toks[self.i]!r}")


def parse_param_laurent(text: str) -> ParamLaurent:
    p = _Parser(text)
    terms = p.expr(True)
    p.done()
    out = ParamLaurent()
    for c, _ in terms:
        out = out + c
    return out


def parse_param_monomial(text: str) -> ParamMonomial:
    x = parse_param_laurent(text)
    u = x.unit()
    if u is None or u[0] != 1:
        raise ParseError(f"not a parameter monomial: {text!r}")
    return u[1]


def parse_element(text: str, backend: Backend) -> TorusElement:
    p = _Parser(text)
    terms = p.expr(False)
    p.done()
    out: dict = {}
    for c, mono in terms:
        for var in mono:
            if isinstance(var, tuple) != hasattr(backend, "cartan"):
                raise ParseError(f"variable kind does not match the backend: {var!r}")
        m = Monomial.make(mono)
        out[m] = out.get(m, ParamLaurent()) + c
    return TorusElement(backend, out)


def format_monomial(m: Monomial, backend: Backend) -> str:
    parts = []
    for v, e in m.items:
        s = backend.var_text(v)
        parts.append(s if e == 1 else f"{s}^{e}")
    return " ".join(parts) if parts else "1"


def format_element(x: TorusElement) -> str:
    if x.is_zero():
        return "0"
    out = []
    for idx, m in enumerate(sorted(x.terms, key=lambda m: m.sort_key())):
        c = x.terms[m]
        sign = "+"
        u = None
        if len(c.terms) == 1:
            (p, k), = c.terms.items()
            if k < 0:
                sign, k = "-", -k
            if p.is_one():
                ctext = str(k)
            elif k == 1:
                ctext = str(p)
            else:
                ctext = f"{k}*{p}"
            u = (k, p)
        else:
            ctext = f"({c})"
        if m.is_one():
            body = ctext
        elif u is not None and u[0] == 1 and u[1].is_one():
            body = format_monomial(m, x.backend)
        else:
            body = f"{ctext} * {format_monomial(m, x.backend)}"
        if idx == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


__all__ = [
    "ParseError", "parse_param_laurent", "parse_param_monomial", "parse_element",
    "format_element", "format_monomial", "fmt_half", "MONO_ONE",
]
