"""Truncated Puiseux series sum c_e x^e with rational exponents e.

A series carries a ramification index n (every exponent lies in (1/n)Z;
n need not be minimal) and a truncation T: the series is known modulo x^T,
and no stored exponent is >= T.  ``T = None`` marks an exact (finite) series.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import BadRootOrder, CharDividesDenominator, NonpositiveValuation, ZeroElement

__all__ = [
    "PuiseuxSeries",
    "BranchSet",
    "SeriesPoly",
    "add",
    "mul",
    "pow_rational",
    "compose",
    "conjugate",
    "series_key",
]


def _tmin(*ts):
    """min over truncations where None means +infinity."""
    vals = [t for t in ts if t is not None]
    return min(vals) if vals else None


class PuiseuxSeries:
    __slots__ = ("field", "terms", "ramification", "truncation")

    def __init__(self, field, terms=None, ramification: int | None = None, truncation=None):
        trunc = None if truncation is None else Fraction(truncation)
        clean = {}
        zero = field.zero
        for e, c in (terms or {}).items():
            e = Fraction(e)
            c = field(c)
            if c == zero or (trunc is not None and e >= trunc):
                continue
            clean[e] = clean[e] + c if e in clean else c
            if clean[e] == zero:
                del clean[e]
        n = math.lcm(1, *(e.denominator for e in clean))
        if ramification is not None:
            if ramification < 1 or ramification % n:
                n = math.lcm(n, ramification)
            else:
                n = ramification
        p = field.characteristic
        if p and n % p == 0:
            raise CharDividesDenominator(f"ramification {n} divisible by the characteristic {p}")
        self.field = field
        self.terms = clean
        self.ramification = n
        self.truncation = trunc

    @classmethod
    def _make(cls, field, terms, n, trunc):
        """Internal fast constructor: terms already clean except for zero/truncation filtering."""
        obj = cls.__new__(cls)
        zero = field.zero
        obj.field = field
        obj.terms = {
            e: c for e, c in terms.items() if c != zero and (trunc is None or e < trunc)
        }
        obj.ramification = n
        obj.truncation = trunc
        return obj

    @classmethod
    def from_laurent(cls, field, coeffs: dict, truncation=None):
        """Exact (or truncated) series from an {int exponent: coeff} map."""
        return cls(field, {Fraction(i): c for i, c in coeffs.items()}, 1, truncation)

    @classmethod
    def monomial(cls, field, c, e, truncation=None):
        e = Fraction(e)
        return cls(field, {e: c}, e.denominator, truncation)

    @classmethod
    def zero(cls, field, truncation=None):
        return cls(field, {}, 1, truncation)

    @classmethod
    def one(cls, field):
        return cls(field, {Fraction(0): field.one}, 1, None)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_exact(self) -> bool:
        return self.truncation is None

    @property
    def valuation(self):
        """Lowest exponent; for a zero series its truncation (None if exactly zero)."""
        if self.terms:
            return min(self.terms)
        return self.truncation

    def leading(self):
        v = min(self.terms)
        return self.terms[v], v

    def sorted_terms(self):
        return sorted(self.terms.items())

    def by_numerator(self) -> dict:
        """{u: c} for the representation sum c_u x^(u/n)."""
        n = self.ramification
        return {int(e * n): c for e, c in self.terms.items()}

    def coeff(self, e):
        return self.terms.get(Fraction(e), self.field.zero)

    def truncate(self, T) -> "PuiseuxSeries":
        if T is None:
            return self
        T = Fraction(T)
        if self.truncation is not None and self.truncation <= T:
            return self
        return PuiseuxSeries._make(self.field, self.terms, self.ramification, T)

    def with_ramification(self, n: int) -> "PuiseuxSeries":
        return PuiseuxSeries(self.field, self.terms, math.lcm(n, self.ramification), self.truncation)

    def __eq__(self, other):
        if isinstance(other, PuiseuxSeries):
            return self.terms == other.terms and self.truncation == other.truncation
        return NotImplemented

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.truncation))

    def equal_mod(self, other: "PuiseuxSeries", T) -> bool:
        """True when both series are known to precision T and agree below x^T."""
        T = Fraction(T)
        for s in (self, other):
            if s.truncation is not None and s.truncation < T:
                return False
        a = {e: c for e, c in self.terms.items() if e < T}
        b = {e: c for e, c in other.terms.items() if e < T}
        return a == b

    def __repr__(self):
        return f"PuiseuxSeries({self})"

    def __str__(self):
        from .render import render_series

        return render_series(self)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        return add(self, _as_series(self.field, other))

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries._make(
            self.field, {e: -c for e, c in self.terms.items()}, self.ramification, self.truncation
        )

    def __sub__(self, other):
        return add(self, -_as_series(self.field, other))

    def __rsub__(self, other):
        return add(_as_series(self.field, other), -self)

    def __mul__(self, other):
        if isinstance(other, PuiseuxSeries):
            return mul(self, other)
        c = self.field(other)
        return PuiseuxSeries._make(
            self.field, {e: v * c for e, v in self.terms.items()}, self.ramification, self.truncation
        )

    __rmul__ = __mul__

    def __pow__(self, k):
        if isinstance(k, int) and k >= 0:
            return _pow_int(self, k)
        return pow_rational(self, Fraction(k))


def _as_series(field, v) -> PuiseuxSeries:
    if isinstance(v, PuiseuxSeries):
        return v
    return PuiseuxSeries(field, {Fraction(0): field(v)}, 1, None)


def series_key(s: PuiseuxSeries):
    """Deterministic order: valuation ascending, then lexicographic term list."""
    F = s.field
    if not s.terms:
        return (1, Fraction(0), ())
    return (0, min(s.terms), tuple((e, F.key(c)) for e, c in sorted(s.terms.items())))


# --------------------------------------------------------------------------
# core operations


def add(p: PuiseuxSeries, q: PuiseuxSeries) -> PuiseuxSeries:
    """Termwise sum on the common ramification; truncation min(T_p, T_q)."""
    T = _tmin(p.truncation, q.truncation)
    terms = dict(p.terms)
    for e, c in q.terms.items():
        terms[e] = terms[e] + c if e in terms else c
    return PuiseuxSeries._make(p.field, terms, math.lcm(p.ramification, q.ramification), T)


def _mul_trunc(p: PuiseuxSeries, q: PuiseuxSeries):
    vp, vq = p.valuation, q.valuation
    cands = []
    if q.truncation is not None:
        if vp is None:
            return None
        cands.append(vp + q.truncation)
    if p.truncation is not None:
        if vq is None:
            return None
        cands.append(vq + p.truncation)
    return min(cands) if cands else None


def mul(p: PuiseuxSeries, q: PuiseuxSeries, cap=None) -> PuiseuxSeries:
    """Cauchy product; truncation min(val(p) + T_q, val(q) + T_p) (optionally capped)."""
    T = _tmin(_mul_trunc(p, q), cap)
    terms: dict = {}
    qt = sorted(q.terms.items())
    for e1, c1 in p.terms.items():
        for e2, c2 in qt:
            e = e1 + e2
            if T is not None and e >= T:
                break
            terms[e] = terms[e] + c1 * c2 if e in terms else c1 * c2
    return PuiseuxSeries._make(p.field, terms, math.lcm(p.ramification, q.ramification), T)


def _pow_int(p: PuiseuxSeries, k: int, cap=None) -> PuiseuxSeries:
    result = PuiseuxSeries.one(p.field)
    base = p
    while k:
        if k & 1:
            result = mul(result, base, cap)
        k >>= 1
        if k:
            base = mul(base, base, cap)
    return result


def _binom(r: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out = out * (r - i) / (i + 1)
    return out


def pow_rational(p: PuiseuxSeries, r, trunc=None, root=None) -> PuiseuxSeries:
    """p^r = c^r x^(r v) (1 + u)^r through the binomial series.

    The leading factor c^r takes the canonical d-th root of c (d the
    denominator of r) unless ``root`` supplies another one.  The result is
    known to x^(r v + T - v); an exact input needs ``trunc`` unless r is a
    nonnegative integer.
    """
    r = Fraction(r)
    F = p.field
    if p.is_zero():
        raise ZeroElement("power of a zero series")
    if r.denominator == 1 and r >= 0 and p.truncation is None and root is None:
        return _pow_int(p, int(r), trunc)
    d = r.denominator
    char = F.characteristic
    if char and d % char == 0:
        raise CharDividesDenominator(f"root of order {d} in characteristic {char}")
    c, v = p.leading()
    rv = r * v
    if root is not None:
        root = F(root)
        if root**d != c:
            raise BadRootOrder(f"supplied root is not a {d}-th root of the leading coefficient")
        base = root
    else:
        base = F.nth_root(c, d) if d > 1 else c
    lead = base**r.numerator if r.numerator >= 0 else (F.one / base) ** (-r.numerator)
    if p.truncation is None and len(p.terms) == 1:
        return PuiseuxSeries._make(F, {rv: lead}, math.lcm(p.ramification, rv.denominator), None)
    if p.truncation is not None:
        T = rv + (p.truncation - v)
        if trunc is not None:
            T = min(T, Fraction(trunc))
    elif trunc is not None:
        T = Fraction(trunc)
    else:
        raise ValueError("exact series to a non-integral power needs an explicit truncation")
    B = T - rv
    n = math.lcm(p.ramification, rv.denominator)
    if B <= 0:
        return PuiseuxSeries._make(F, {}, n, T)
    inv_c = F.one / c
    u = PuiseuxSeries._make(
        F, {e - v: a * inv_c for e, a in p.terms.items() if e != v}, p.ramification, B
    )
    total = {Fraction(0): F.one}
    if u.terms:
        mu = min(u.terms)
        kmax = int(B / mu) + 1
        uk = PuiseuxSeries.one(F)
        for k in range(1, kmax + 1):
            uk = mul(uk, u, B)
            if not uk.terms:
                break
            b = F(_binom(r, k))
            for e, a in uk.terms.items():
                total[e] = total[e] + b * a if e in total else b * a
    out = {e + rv: lead * a for e, a in total.items()}
    return PuiseuxSeries._make(F, out, n, T)


def compose(p: PuiseuxSeries, q: PuiseuxSeries, trunc=None, root=None) -> PuiseuxSeries:
    """Substitute q for x in p: sum_e c_e q^e, with q^e built from q^(1/n_p).

    The result is known below min(val(q) * T_p, the truncation of each
    term c_e q^e); ``trunc`` additionally caps the work for exact inputs.
    ``root`` fixes the leading coefficient of q^(1/n_p) (default: canonical).
    """
    F = p.field
    vq = q.valuation
    if q.is_zero() or vq is None or vq <= 0:
        raise NonpositiveValuation("inner series must have positive valuation")
    target = _tmin(None if p.truncation is None else vq * p.truncation, trunc)
    if target is None and q.truncation is None and any(e.denominator > 1 for e in p.terms):
        raise ValueError("exact composition with fractional exponents needs a truncation")
    n_p = p.ramification
    by_u = p.by_numerator()
    if not by_u:
        return PuiseuxSeries._make(F, {}, 1, target)
    pos = [u for u in by_u if u > 0]
    sigma = vq / n_p
    s_trunc = None
    if target is not None and pos:
        s_trunc = target - (min(pos) - 1) * sigma
    s = q if n_p == 1 else pow_rational(q, Fraction(1, n_p), s_trunc, root)
    acc = PuiseuxSeries._make(F, {}, 1, target)
    cache = {0: PuiseuxSeries.one(F), 1: s}
    for u in sorted(by_u):
        if u >= 0:
            su = _cached_power(cache, s, u, target)
        else:
            # negative exponent: invert the matching power of s
            su = pow_rational(_cached_power(cache, s, -u, target), -1, target)
        acc = add(acc, su * by_u[u])
    return acc.truncate(target)


def _cached_power(cache, s, u, cap):
    if u in cache:
        return cache[u]
    below = max(k for k in cache if k < u)
    val = cache[below]
    for k in range(below + 1, u + 1):
        val = mul(val, s, cap)
        cache[k] = val
    return val


def conjugate(p: PuiseuxSeries, omega, i: int) -> PuiseuxSeries:
    """Replace x^(1/n) by omega^i x^(1/n): c_u -> c_u omega^(i u)."""
    n = p.ramification
    F = p.field
    omega = F(omega)
    if omega**n != F.one:
        raise BadRootOrder(f"omega is not an {n}-th root of unity")
    pw = [omega**k for k in range(n)]
    terms = {e: c * pw[(i * int(e * n)) % n] for e, c in p.terms.items()}
    return PuiseuxSeries._make(F, terms, n, p.truncation)


# --------------------------------------------------------------------------
# polynomials in y with series coefficients


class SeriesPoly:
    """sum_j coeffs[j] y^j with PuiseuxSeries coefficients (lowest first)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = list(coeffs)

    @classmethod
    def linear_factor(cls, s: PuiseuxSeries) -> "SeriesPoly":
        """y - s."""
        return cls(s.field, [-s, PuiseuxSeries.one(s.field)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "SeriesPoly") -> "SeriesPoly":
        F = self.field
        out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                t = mul(a, b)
                out[i + j] = t if out[i + j] is None else add(out[i + j], t)
        return SeriesPoly(F, [c if c is not None else PuiseuxSeries.zero(F) for c in out])

    @classmethod
    def product(cls, factors: list) -> "SeriesPoly":
        """Balanced-tree product in a fixed order (deterministic)."""
        if not factors:
            raise ValueError("empty product")
        layer = list(factors)
        while len(layer) > 1:
            nxt = [layer[k] * layer[k + 1] for k in range(0, len(layer) - 1, 2)]
            if len(layer) % 2:
                nxt.append(layer[-1])
            layer = nxt
        return layer[0]

    @property
    def truncation(self):
        return _tmin(*(c.truncation for c in self.coeffs))

    def to_bivariate(self, T=None):
        """Collapse to a BivariatePoly when all exponents below T are integral; else None."""
        from .bipoly import BivariatePoly

        terms = {}
        for j, c in enumerate(self.coeffs):
            for e, a in c.terms.items():
                if T is not None and e >= T:
                    continue
                if e.denominator != 1:
                    return None
                terms[(int(e), j)] = a
        return BivariatePoly.raw(self.field, terms)


class BranchSet:
    """Multiset of branches: list of (PuiseuxSeries, multiplicity)."""

    def __init__(self, branches):
        merged: list = []
        for s, m in branches:
            for k, (t, mm) in enumerate(merged):
                if t == s:
                    merged[k] = (t, mm + m)
                    break
            else:
                merged.append((s, m))
        merged.sort(key=lambda sm: series_key(sm[0]))
        self.branches = merged

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.branches)

    def __iter__(self):
        return iter(self.branches)

    def __len__(self):
        return len(self.branches)

    def expanded(self) -> list:
        """Flat list of series, each repeated by multiplicity."""
        out = []
        for s, m in self.branches:
            out.extend([s] * m)
        return out

    @property
    def truncation(self):
        return _tmin(*(s.truncation for s, _ in self.branches))

    def product(self) -> SeriesPoly:
        return SeriesPoly.product([SeriesPoly.linear_factor(s) for s in self.expanded()])

    def __eq__(self, other):
        return isinstance(other, BranchSet) and self.branches == other.branches

    def __repr__(self):
        return f"BranchSet({[(str(s), m) for s, m in self.branches]})"
