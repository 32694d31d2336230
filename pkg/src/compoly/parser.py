"""Recursive-descent parser for polynomial expressions.

Grammar (``^`` binds tighter than unary minus, ``*`` is mandatory)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" exponent)?
    atom   := INTEGER | NAME | "(" expr ")"

Names are the variables x, y, z, t plus the field generator: ``w`` is
zeta_N in cyclo:N and ``t`` is the generator of F_(p^e) when e > 1.
Division is only allowed by nonzero constants.
"""

from __future__ import annotations

import re

from .bipoly import BivariatePoly
from .errors import NonPolynomial, ParseError
from .fields import CyclotomicField, FiniteField
from .unipoly import UPoly

__all__ = ["parse", "parse_bivariate", "parse_univariate", "VARIABLES"]

VARIABLES = ("x", "y", "z", "t")

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


class _Tok:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col


def _tokenize(src: str) -> list:
    toks = []
    pos = 0
    while True:
        m = _TOKEN.match(src, pos)
        if not m:
            break
        start = m.start(m.lastindex)
        line = src.count("\n", 0, start) + 1
        col = start - (src.rfind("\n", 0, start) + 1) + 1
        kind = {1: "int", 2: "name", 3: "op"}[m.lastindex]
        toks.append(_Tok(kind, m.group(m.lastindex), line, col))
        pos = m.end()
    line = src.count("\n") + 1
    col = len(src) - (src.rfind("\n") + 1) + 1
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, src: str, field):
        if not src.strip():
            raise ParseError("empty expression", 1, 1)
        self.toks = _tokenize(src)
        self.i = 0
        self.F = field
        self.gen_name = None
        if isinstance(field, CyclotomicField):
            self.gen_name = "w"
        elif isinstance(field, FiniteField) and field.e > 1:
            self.gen_name = "t"
        self.vars = tuple(v for v in VARIABLES if v != self.gen_name)

    # -- polynomial helpers (dict: exponent tuple -> coeff) --

    def _const(self, c):
        return {(0,) * len(self.vars): self.F(c)} if self.F(c) != self.F.zero else {}

    def _add(self, a, b, sign=1):
        out = dict(a)
        for k, c in b.items():
            if sign < 0:
                c = -c
            v = out[k] + c if k in out else c
            if v == self.F.zero:
                out.pop(k, None)
            else:
                out[k] = v
        return out

    def _mul(self, a, b):
        out: dict = {}
        for k1, c1 in a.items():
            for k2, c2 in b.items():
                k = tuple(u + v for u, v in zip(k1, k2))
                out[k] = out[k] + c1 * c2 if k in out else c1 * c2
        return {k: c for k, c in out.items() if c != self.F.zero}

    # -- grammar --

    @property
    def tok(self):
        return self.toks[self.i]

    def _err(self, msg, tok=None, cls=ParseError):
        tok = tok or self.tok
        raise cls(msg, tok.line, tok.col)

    def _accept(self, op):
        if self.tok.kind == "op" and self.tok.text == op:
            self.i += 1
            return True
        return False

    def parse(self):
        val = self.expr()
        if self.tok.kind != "eof":
            if self.tok.kind in ("int", "name") or self.tok.text == "(":
                self._err("implicit multiplication is not allowed; use '*'")
            self._err(f"unexpected {self.tok.text!r}")
        return val

    def expr(self):
        val = self.term()
        while True:
            if self._accept("+"):
                val = self._add(val, self.term())
            elif self._accept("-"):
                val = self._add(val, self.term(), -1)
            else:
                return val

    def term(self):
        val = self.unary()
        while True:
            if self._accept("*"):
                val = self._mul(val, self.unary())
            elif self.tok.kind == "op" and self.tok.text == "/":
                tok = self.tok
                self.i += 1
                d = self.unary()
                zero_key = (0,) * len(self.vars)
                if any(k != zero_key for k in d):
                    self._err("division by a non-constant", tok, NonPolynomial)
                if not d:
                    self._err("division by zero", tok)
                inv = self.F.one / d[zero_key]
                val = {k: c * inv for k, c in val.items()}
            else:
                return val

    def unary(self):
        if self._accept("-"):
            return {k: -c for k, c in self.unary().items()}
        if self._accept("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if not self._accept("^"):
            return base
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            e = int(tok.text)
        elif tok.kind == "op" and tok.text in ("(", "-"):
            self._err("exponents must be nonnegative integer literals", tok, NonPolynomial)
        else:
            self._err("expected an exponent", tok)
        out = self._const(1)
        for _ in range(e):
            out = self._mul(out, base)
        return out

    def atom(self):
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return self._const(int(tok.text))
        if tok.kind == "name":
            self.i += 1
            if tok.text == self.gen_name:
                g = self.F.zeta(1) if isinstance(self.F, CyclotomicField) else self.F.gen()
                return {(0,) * len(self.vars): g}
            if tok.text in self.vars:
                k = self.vars.index(tok.text)
                return {tuple(1 if i == k else 0 for i in range(len(self.vars))): self.F.one}
            self._err(f"unknown symbol {tok.text!r}", tok)
        if self._accept("("):
            val = self.expr()
            if not self._accept(")"):
                self._err("expected ')'")
            return val
        if tok.kind == "eof":
            self._err("unexpected end of input")
        self._err(f"unexpected {tok.text!r}")


def parse(src: str, field) -> tuple:
    """(variables, {exponent tuple: coeff}) for an expression over ``field``."""
    p = _Parser(src, field)
    return p.vars, p.parse()


def parse_bivariate(src: str, field, normalize: bool = True) -> BivariatePoly:
    """Parse a polynomial in x, y (monic-normalised in y unless ``normalize`` is False)."""
    names, terms = parse(src, field)
    ix, iy = names.index("x"), names.index("y")
    out = {}
    for k, c in terms.items():
        bad = [names[i] for i, e in enumerate(k) if e and i not in (ix, iy)]
        if bad:
            raise ParseError(f"unexpected variable {bad[0]!r} in a polynomial in x, y", 1, 1)
        out[(k[ix], k[iy])] = c
    if normalize:
        return BivariatePoly(field, out)
    return BivariatePoly.raw(field, out)


def parse_univariate(src: str, field, var: str = "x") -> UPoly:
    """Parse a polynomial in a single variable (any of x, y, z, t); rendered in ``var``."""
    names, terms = parse(src, field)
    used = {i for k in terms for i, e in enumerate(k) if e}
    if len(used) > 1:
        raise ParseError("expected a polynomial in one variable", 1, 1)
    idx = used.pop() if used else 0
    deg = max((k[idx] for k in terms), default=-1)
    cs = [field.zero] * (deg + 1)
    for k, c in terms.items():
        cs[k[idx]] = c
    return UPoly(field, cs, var)
