"""Text and JSON serialization for every result type.

Text forms are canonical (stable term order, reduced coefficients) so that
parse -> render -> parse is a fixed point on polynomial outputs.  JSON is
emitted with sorted keys; identical inputs give byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .fields import CyclotomicElement, FiniteFieldElement


def _frac_text(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def coeff_text(c) -> str:
    """Standalone rendering of a field element."""
    if isinstance(c, (CyclotomicElement, FiniteFieldElement)):
        return c._render()
    return _frac_text(Fraction(c))


def _signed_parts(c):
    """(negative, magnitude text, needs_parens) for a coefficient in a sum."""
    if isinstance(c, CyclotomicElement):
        r = c.as_rational()
        if r is None:
            nz = [k for k, v in enumerate(c.num) if v]
            if len(nz) == 1 and c.num[nz[0]] < 0:
                return True, (-c)._render(), False
            return False, c._render(), len(nz) > 1
        c = r
    if isinstance(c, FiniteFieldElement):
        nz = [k for k, v in enumerate(c.coords) if v]
        return False, c._render(), len(nz) > 1
    c = Fraction(c)
    return c < 0, _frac_text(abs(c)), False


def format_sum(items) -> str:
    """Join (coefficient, monomial text) pairs into a signed sum; zero is "0"."""
    out = []
    for c, mono in items:
        neg, mag, paren = _signed_parts(c)
        if paren:
            mag = f"({mag})"
        if mono:
            body = mono if mag == "1" else f"{mag}*{mono}"
        else:
            body = mag
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out) if out else "0"


def power_text(var: str, e) -> str:
    """Monomial var^e; e may be an int, a Fraction, or a (num, den) pair kept unreduced."""
    if isinstance(e, tuple):
        num, den = e
        if den == 1:
            return power_text(var, num)
        return f"{var}^({num}/{den})"
    e = Fraction(e)
    if e == 0:
        return ""
    if e == 1:
        return var
    if e.denominator == 1 and e > 0:
        return f"{var}^{e.numerator}"
    return f"{var}^({_frac_text(e)})"


def join_monomial(*parts) -> str:
    return "*".join(p for p in parts if p)


def render_upoly(f) -> str:
    items = [(c, power_text(f.var, k)) for k, c in reversed(list(enumerate(f.coeffs))) if c != f.domain.zero]
    return format_sum(items)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def render_bipoly(f) -> str:
    items = [(c, join_monomial(power_text("x", i), power_text("y", j))) for (i, j), c in f.sorted_terms()]
    return format_sum(items)


def bipoly_json(f) -> dict:
    return {
        "terms": [
            {"xexp": i, "yexp": j, "coeff": coeff_text(c)} for (i, j), c in f.sorted_terms()
        ]
    }


def render_series(s) -> str:
    items = [(c, power_text("x", e)) for e, c in s.sorted_terms()]
    body = format_sum(items)
    if s.truncation is None:
        return body
    tail = f"O({power_text('x', s.truncation) or '1'})"
    return tail if body == "0" else f"{body} + {tail}"


def series_json(s) -> dict:
    n = s.ramification
    return {
        "ramification": n,
        "truncation": None if s.truncation is None else _frac_text(s.truncation),
        "terms": [
            {"num": int(e * n), "den": n, "coeff": coeff_text(c)} for e, c in s.sorted_terms()
        ],
    }


def render_seriespoly(sp) -> str:
    """sum_j c_j(x) y^j with y descending, x ascending, one O-term for the whole."""
    items = []
    for j in range(len(sp.coeffs) - 1, -1, -1):
        for e, c in sp.coeffs[j].sorted_terms():
            items.append((c, join_monomial(power_text("x", e), power_text("y", j))))
    body = format_sum(items)
    T = sp.truncation
    if T is None:
        return body
    tail = f"O({power_text('x', T) or '1'})"
    return tail if body == "0" else f"{body} + {tail}"


def seriespoly_json(sp) -> dict:
    T = sp.truncation
    return {
        "truncation": None if T is None else _frac_text(T),
        "coeffs": [series_json(c) for c in sp.coeffs],
    }


def upoly_json(f) -> dict:
    return {"var": f.var, "coeffs": [coeff_text(c) for c in f.coeffs]}
