"""Exact coefficient fields: Q, cyclotomic fields Q(zeta_N) and finite fields F_{p^e}.

All three share one small capability interface (``zero``, ``one``, coercion by
calling the field, ``roots``, ``nth_root``, ``primitive_root_of_unity``,
``render`` ...).  Rationals are plain :class:`fractions.Fraction` values;
the other two domains have their own immutable element classes.

Field objects double as the ``FieldConfig`` of a computation: they are
hashable, compare by value, and render back to the CLI ``--field`` syntax.
"""

from __future__ import annotations

import functools
import itertools
import math
from fractions import Fraction

from sympy import factorint, integer_nthroot, isprime

from .errors import BadFieldMismatch, NoSuchRoot, ZeroElement

__all__ = [
    "Rational",
    "RationalField",
    "CyclotomicField",
    "CyclotomicElement",
    "FiniteField",
    "FiniteFieldElement",
    "QQ",
    "build_extension",
    "primitive_root_of_unity",
    "nth_root",
    "frobenius",
    "parse_field",
]

Rational = Fraction


# --------------------------------------------------------------------------
# small integer-polynomial helpers (lists, lowest degree first)


def _int_poly_divexact(a, b):
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1] // b[-1]
        q[k] = c
        for i, bi in enumerate(b):
            a[k + i] -= c * bi
    assert not any(a), "inexact division"
    return q


@functools.lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, lowest first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _int_poly_divexact(num, cyclotomic_poly(d))
    return tuple(num)


def _euler_phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


def _frac_xgcd_inverse(a: list[Fraction], m: list[Fraction]) -> list[Fraction]:
    """Inverse of a modulo m over Q (both lowest-first, m irreducible)."""

    def trim(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    def divmod_(u, v):
        u = list(u)
        q = [Fraction(0)] * max(len(u) - len(v) + 1, 0)
        inv = 1 / v[-1]
        for k in range(len(u) - len(v), -1, -1):
            c = u[k + len(v) - 1] * inv
            q[k] = c
            if c:
                for i, vi in enumerate(v):
                    u[k + i] -= c * vi
        return trim(q), trim(u[: len(v) - 1])

    def sub_mul(s0, q, s1):
        prod = [Fraction(0)] * (len(q) + len(s1))
        for i, qi in enumerate(q):
            for j, sj in enumerate(s1):
                prod[i + j] += qi * sj
        out = [Fraction(0)] * max(len(s0), len(prod))
        for i, c in enumerate(s0):
            out[i] += c
        for i, c in enumerate(prod):
            out[i] -= c
        return trim(out)

    r0, r1 = trim(list(m)), trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub_mul(s0, q, s1)
    if not r1:
        raise ZeroElement("element is not invertible")
    c = 1 / r1[0]
    return [c * s for s in s1]


# --------------------------------------------------------------------------
# rationals


class RationalField:
    """The field Q; elements are :class:`fractions.Fraction`."""

    characteristic = 0
    is_finite = False
    degree = 1
    gen_name = None

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __repr__(self):
        return "RationalField()"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    @property
    def spec(self) -> str:
        return "rational"

    def __call__(self, v) -> Fraction:
        if isinstance(v, CyclotomicElement):
            r = v.as_rational()
            if r is None:
                raise BadFieldMismatch(f"{v!r} is not rational")
            return r
        if isinstance(v, FiniteFieldElement):
            raise BadFieldMismatch("cannot coerce a finite-field element into Q")
        return Fraction(v)

    def contains(self, a) -> bool:
        return isinstance(a, (int, Fraction))

    def key(self, a):
        return (a,)

    def render(self, a) -> str:
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def primitive_root_of_unity(self, m: int) -> Fraction:
        if m == 1:
            return self.one
        if m == 2:
            return -self.one
        raise NoSuchRoot(f"Q has no primitive {m}-th root of unity")

    def roots_of_unity(self):
        return [self.one, -self.one]

    def nth_root(self, a, n: int) -> Fraction:
        a = Fraction(a)
        if n < 1:
            raise ValueError("n must be positive")
        if a == 0:
            raise ZeroElement("nth_root of zero")
        s = _rational_nth_root(abs(a), n)
        if s is None or (a < 0 and n % 2 == 0):
            raise NoSuchRoot(f"{a} has no rational {n}-th root")
        return s if a > 0 else -s

    def roots(self, coeffs):
        return _char0_roots(self, coeffs)


def _rational_nth_root(a: Fraction, n: int):
    """Positive rational n-th root of a > 0, or None."""
    rn, ok1 = integer_nthroot(a.numerator, n)
    rd, ok2 = integer_nthroot(a.denominator, n)
    if ok1 and ok2:
        return Fraction(int(rn), int(rd))
    return None


QQ = RationalField()


# --------------------------------------------------------------------------
# cyclotomic fields


class CyclotomicField:
    """Q(zeta_N) represented modulo the N-th cyclotomic polynomial.

    Elements are integer coordinate vectors over a common positive
    denominator, in the power basis 1, w, ..., w^(phi(N)-1).
    """

    characteristic = 0
    is_finite = False
    gen_name = "w"

    def __init__(self, N: int):
        if N < 1:
            raise ValueError("cyclotomic order must be >= 1")
        self.N = N
        self.mod = cyclotomic_poly(N)
        self.phi = len(self.mod) - 1
        self.degree = self.phi
        self.zero = CyclotomicElement(self, (0,) * self.phi, 1)
        self.one = CyclotomicElement(self, (1,) + (0,) * (self.phi - 1), 1)
        pows = []
        v = [1] + [0] * (self.phi - 1)
        for _ in range(N):
            pows.append(tuple(v))
            v = self._reduce([0] + v)
        self._zeta_vecs = pows

    def __repr__(self):
        return f"CyclotomicField({self.N})"

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.N == self.N

    def __hash__(self):
        return hash(("cyclo", self.N))

    @property
    def spec(self) -> str:
        return f"cyclo:{self.N}"

    def _reduce(self, v: list[int]) -> list[int]:
        phi, mod = self.phi, self.mod
        v = list(v)
        for k in range(len(v) - 1, phi - 1, -1):
            c = v[k]
            if c:
                base = k - phi
                for i in range(phi):
                    v[base + i] -= c * mod[i]
        v = v[:phi]
        if len(v) < phi:
            v += [0] * (phi - len(v))
        return v

    def zeta(self, k: int = 1) -> "CyclotomicElement":
        return CyclotomicElement(self, self._zeta_vecs[k % self.N], 1)

    def __call__(self, v) -> "CyclotomicElement":
        if isinstance(v, CyclotomicElement):
            if v.field != self:
                raise BadFieldMismatch(f"element of {v.field} used in {self}")
            return v
        if isinstance(v, FiniteFieldElement):
            raise BadFieldMismatch("cannot coerce a finite-field element into a cyclotomic field")
        v = Fraction(v)
        return CyclotomicElement(self, (v.numerator,) + (0,) * (self.phi - 1), v.denominator)

    def from_coords(self, coords) -> "CyclotomicElement":
        coords = [Fraction(c) for c in coords]
        if len(coords) != self.phi:
            raise ValueError("wrong number of coordinates")
        den = math.lcm(*(c.denominator for c in coords))
        return CyclotomicElement(self, tuple(int(c * den) for c in coords), den)

    def contains(self, a) -> bool:
        return isinstance(a, CyclotomicElement) and a.field == self

    def key(self, a):
        return a.coords

    def render(self, a) -> str:
        return a._render()

    def primitive_root_of_unity(self, m: int) -> "CyclotomicElement":
        if m == 2:
            return -self.one
        if m < 1 or self.N % m:
            raise NoSuchRoot(f"Q(zeta_{self.N}) has no primitive {m}-th root of unity")
        return self.zeta(self.N // m)

    def roots_of_unity(self):
        out = [self.zeta(k) for k in range(self.N)]
        if self.N % 2:
            out += [-z for z in out]
        return out

    def unit_root_exponent(self, a):
        """Return (r, k) with a = r * zeta^k, r rational, or None."""
        if a.is_zero():
            return None
        for k, zv in enumerate(self._zeta_vecs):
            r = _proportional(a.num, zv)
            if r is not None:
                return Fraction(r.numerator, r.denominator * a.den), k
        return None

    def nth_root(self, a, n: int) -> "CyclotomicElement":
        a = self(a)
        if n < 1:
            raise ValueError("n must be positive")
        if a.is_zero():
            raise ZeroElement("nth_root of zero")
        if n == 1:
            return a
        rk = self.unit_root_exponent(a)
        if rk is not None:
            r, k = rk
            N = self.N
            if r < 0:
                if n % 2 == 1:
                    s = _rational_nth_root(-r, n)
                    sign = -1
                elif N % 2 == 0:
                    s, sign, k = _rational_nth_root(-r, n), 1, (k + N // 2) % N
                else:
                    s = None
            else:
                s, sign = _rational_nth_root(r, n), 1
            if s is not None:
                e = _solve_root_exponent(n, k, N)
                if e is not None:
                    return self.zeta(e) * (sign * s)
        # general element: lexicographically smallest root of t^n - a
        # (straight to the factoriser; roots() would come back here for a binomial)
        roots = [c for c, _ in _sympy_roots(self, [-a] + [self.zero] * (n - 1) + [self.one])]
        if not roots:
            raise NoSuchRoot(f"no {n}-th root of {a} in {self}")
        return min(roots, key=self.key)

    def roots(self, coeffs):
        return _char0_roots(self, coeffs)


def _proportional(v, w):
    """Rational r with v == r*w (integer vectors), or None."""
    r = None
    for vi, wi in zip(v, w):
        if wi == 0:
            if vi:
                return None
            continue
        c = Fraction(vi, wi)
        if r is None:
            r = c
        elif c != r:
            return None
    return r


def _solve_root_exponent(n: int, k: int, N: int):
    """Smallest e >= 0 with n*e == k (mod N), or None."""
    g = math.gcd(n, N)
    if k % g:
        return None
    Ng = N // g
    if Ng == 1:
        return 0
    return (k // g) * pow(n // g, -1, Ng) % Ng


class CyclotomicElement:
    __slots__ = ("field", "num", "den")

    def __init__(self, field: CyclotomicField, num, den: int = 1):
        num = tuple(num)
        if den < 0:
            num, den = tuple(-x for x in num), -den
        g = math.gcd(den, *num)
        if g > 1:
            num, den = tuple(x // g for x in num), den // g
        self.field = field
        self.num = num
        self.den = den

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def as_rational(self):
        if any(self.num[1:]):
            return None
        return Fraction(self.num[0], self.den)

    def _coerce(self, other):
        if isinstance(other, CyclotomicElement):
            if other.field.N != self.field.N:
                raise BadFieldMismatch("cyclotomic orders differ")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return CyclotomicElement(self.field, [a + b for a, b in zip(self.num, o.num)], self.den)
        return CyclotomicElement(
            self.field,
            [a * o.den + b * self.den for a, b in zip(self.num, o.num)],
            self.den * o.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement(self.field, [-a for a in self.num], self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return CyclotomicElement(
                self.field, [a * other.numerator for a in self.num], self.den * other.denominator
            )
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.num, o.num
        prod = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return CyclotomicElement(self.field, self.field._reduce(prod), self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroElement("division by zero in cyclotomic field")
        inv = _frac_xgcd_inverse(
            [Fraction(c, self.den) for c in self.num], [Fraction(c) for c in self.field.mod]
        )
        inv = inv + [Fraction(0)] * (self.field.phi - len(inv))
        return self.field.from_coords(inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, CyclotomicElement):
            return self.field.N == other.field.N and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.as_rational() == other
        return NotImplemented

    def __hash__(self):
        r = self.as_rational()
        if r is not None:
            return hash(r)
        return hash((self.field.N, self.num, self.den))

    def __repr__(self):
        return f"CyclotomicElement({self._render()!r}, N={self.field.N})"

    def _render(self) -> str:
        parts = []
        for k in range(len(self.num) - 1, -1, -1):
            c = Fraction(self.num[k], self.den)
            if c == 0:
                continue
            mono = "" if k == 0 else ("w" if k == 1 else f"w^{k}")
            mag = abs(c)
            cs = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            if mono:
                body = mono if mag == 1 else f"{cs}*{mono}"
            else:
                body = cs
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self._render()


# --------------------------------------------------------------------------
# finite fields


class FiniteField:
    """F_{p^e} = F_p[t]/(modulus) with a monic irreducible modulus.

    ``modulus`` is the tuple of coefficients lowest degree first, including
    the leading 1.
    """

    is_finite = True

    def __init__(self, p: int, e: int = 1, modulus=None):
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus is None:
            modulus = _smallest_irreducible(p, e)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        self.p = p
        self.e = e
        self.modulus = modulus
        self.characteristic = p
        self.degree = e
        self.order = p**e
        self.gen_name = "t" if e > 1 else None
        self.zero = FiniteFieldElement(self, (0,) * e)
        self.one = FiniteFieldElement(self, (1,) + (0,) * (e - 1))
        self._generator = None

    def __repr__(self):
        return f"FiniteField({self.p}, {self.e}, modulus={self.modulus})"

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and other.p == self.p
            and other.e == self.e
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("ff", self.p, self.e, self.modulus))

    @property
    def spec(self) -> str:
        return f"finite:{self.p}" if self.e == 1 else f"finite:{self.p}:{self.e}"

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    def __call__(self, v) -> "FiniteFieldElement":
        if isinstance(v, FiniteFieldElement):
            if v.field == self:
                return v
            if v.field.p == self.p and v.field.e == 1:
                return self.from_int(v.coords[0])
            raise BadFieldMismatch(f"element of {v.field} used in {self}")
        if isinstance(v, CyclotomicElement):
            raise BadFieldMismatch("cannot coerce a cyclotomic element into a finite field")
        if isinstance(v, Fraction):
            if v.denominator % self.p == 0:
                raise ZeroElement(f"denominator of {v} vanishes mod {self.p}")
            return self.from_int(v.numerator * pow(v.denominator, -1, self.p))
        return self.from_int(int(v))

    def from_int(self, n: int) -> "FiniteFieldElement":
        return FiniteFieldElement(self, (n % self.p,) + (0,) * (self.e - 1))

    def from_coords(self, coords) -> "FiniteFieldElement":
        coords = tuple(int(c) % self.p for c in coords)
        if len(coords) != self.e:
            raise ValueError("wrong number of coordinates")
        return FiniteFieldElement(self, coords)

    def gen(self) -> "FiniteFieldElement":
        """The class of t (for e == 1 this is the root of the modulus t + c)."""
        if self.e == 1:
            return self.from_int(-self.modulus[0])
        return FiniteFieldElement(self, (0, 1) + (0,) * (self.e - 2))

    def contains(self, a) -> bool:
        return isinstance(a, FiniteFieldElement) and a.field == self

    def key(self, a):
        return a.coords

    def elements(self):
        """All elements in lexicographic coordinate order."""
        for c in itertools.product(range(self.p), repeat=self.e):
            yield FiniteFieldElement(self, c)

    def render(self, a) -> str:
        return a._render()

    def _mul_coords(self, a, b):
        p, e = self.p, self.e
        if e == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        mod = self.modulus
        for k in range(2 * e - 2, e - 1, -1):
            c = prod[k] % p
            if c:
                base = k - e
                for i in range(e):
                    prod[base + i] -= c * mod[i]
        return tuple(x % p for x in prod[:e])

    def _inv_coords(self, a):
        p = self.p
        if self.e == 1:
            if a[0] == 0:
                raise ZeroElement("division by zero in finite field")
            return (pow(a[0], -1, p),)
        # extended Euclid over F_p
        def trim(v):
            while v and v[-1] == 0:
                v.pop()
            return v

        r0, r1 = list(self.modulus), trim(list(a))
        if not r1:
            raise ZeroElement("division by zero in finite field")
        s0, s1 = [], [1]
        while len(r1) > 1:
            inv = pow(r1[-1], -1, p)
            q = [0] * (len(r0) - len(r1) + 1)
            r = list(r0)
            for k in range(len(q) - 1, -1, -1):
                c = r[k + len(r1) - 1] * inv % p
                q[k] = c
                if c:
                    for i, ri in enumerate(r1):
                        r[k + i] = (r[k + i] - c * ri) % p
            r = trim(r[: len(r1) - 1])
            prod = [0] * (len(q) + len(s1))
            for i, qi in enumerate(q):
                for j, sj in enumerate(s1):
                    prod[i + j] += qi * sj
            s2 = [0] * max(len(s0), len(prod))
            for i, c in enumerate(s0):
                s2[i] += c
            for i, c in enumerate(prod):
                s2[i] -= c
            r0, r1 = r1, r
            s0, s1 = s1, trim([x % p for x in s2])
        c = pow(r1[0], -1, p)
        out = [(c * s) % p for s in s1]
        return tuple(out + [0] * (self.e - len(out)))

    def multiplicative_generator(self) -> "FiniteFieldElement":
        """Lexicographically smallest generator of the multiplicative group."""
        if self._generator is None:
            n = self.order - 1
            primes = list(factorint(n)) if n > 1 else []
            for a in self.elements():
                if a.is_zero():
                    continue
                if all(a ** (n // r) != self.one for r in primes):
                    self._generator = a
                    break
        return self._generator

    def primitive_root_of_unity(self, m: int) -> "FiniteFieldElement":
        if m < 1 or (self.order - 1) % m or m % self.p == 0:
            raise NoSuchRoot(f"F_{self.order} has no primitive {m}-th root of unity")
        if m == 1:
            return self.one
        return self.multiplicative_generator() ** ((self.order - 1) // m)

    def roots_of_unity(self):
        return [a for a in self.elements() if not a.is_zero()]

    def nth_root(self, a, n: int) -> "FiniteFieldElement":
        a = self(a)
        if n < 1:
            raise ValueError("n must be positive")
        if a.is_zero():
            raise ZeroElement("nth_root of zero")
        while n % self.p == 0:
            # p-th roots are unique: invert the Frobenius
            a = a ** (self.order // self.p)
            n //= self.p
        if n == 1:
            return a
        roots = [c for c, _ in self.roots([-a] + [self.zero] * (n - 1) + [self.one])]
        if not roots:
            raise NoSuchRoot(f"{a} has no {n}-th root in F_{self.order}")
        return min(roots, key=self.key)

    def roots(self, coeffs):
        from .unipoly import UPoly, roots_in_field

        return roots_in_field(UPoly(self, coeffs))

    def frobenius_matrix(self, power: int = 1):
        """Matrix (numpy, mod p) of a -> a^(p^power) acting on coordinate columns."""
        import numpy as np

        q = self.p**power
        cols = []
        t = FiniteFieldElement(self, (0, 1) + (0,) * (self.e - 2)) if self.e > 1 else self.one
        for k in range(self.e):
            cols.append((t**k) ** q if self.e > 1 else self.one)
        return np.array([c.coords for c in cols], dtype=np.int64).T


class FiniteFieldElement:
    __slots__ = ("field", "coords")

    def __init__(self, field: FiniteField, coords):
        self.field = field
        self.coords = tuple(coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def value(self) -> int:
        """Residue of a prime-field element."""
        return self.coords[0]

    def _coerce(self, other):
        if isinstance(other, FiniteFieldElement):
            if other.field is self.field or other.field == self.field:
                return other
            return self.field(other)
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return FiniteFieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FiniteFieldElement(self.field, tuple((-a) % p for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return FiniteFieldElement(self.field, tuple((a - b) % p for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FiniteFieldElement(self.field, self.field._mul_coords(self.coords, o.coords))

    __rmul__ = __mul__

    def inverse(self):
        return FiniteFieldElement(self.field, self.field._inv_coords(self.coords))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        F = self.field
        if F.e == 1:
            return FiniteFieldElement(F, (pow(self.coords[0], k, F.p),))
        result, base = F.one.coords, self.coords
        while k:
            if k & 1:
                result = F._mul_coords(result, base)
            k >>= 1
            if k:
                base = F._mul_coords(base, base)
        return FiniteFieldElement(F, result)

    def __eq__(self, other):
        if isinstance(other, FiniteFieldElement):
            return self.coords == other.coords and self.field.p == other.field.p
        if isinstance(other, int):
            return self.coords == self.field.from_int(other).coords
        if isinstance(other, Fraction):
            try:
                return self.coords == self.field(other).coords
            except ZeroElement:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.coords))

    def __repr__(self):
        return f"FiniteFieldElement({self._render()!r}, F_{self.field.order})"

    def _render(self) -> str:
        if self.field.e == 1:
            return str(self.coords[0])
        parts = []
        for k in range(self.field.e - 1, -1, -1):
            c = self.coords[k]
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self._render()


def _smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest (lowest coefficient first) monic irreducible of degree e."""
    if e == 1:
        return (0, 1)
    from .unipoly import is_irreducible_coeffs

    # a zero constant term means divisibility by t, so start the scan at 1
    for c0 in range(1, p):
        for rest in itertools.product(range(p), repeat=e - 1):
            coeffs = (c0,) + rest + (1,)
            if is_irreducible_coeffs(coeffs, p):
                return coeffs
    raise AssertionError("no irreducible polynomial found")


# --------------------------------------------------------------------------
# characteristic-zero root finding


def _horner(field, coeffs, x):
    acc = field.zero
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _synthetic_div(field, coeffs, r):
    """Divide by (t - r); coeffs lowest first, exact division assumed."""
    n = len(coeffs) - 1
    out = [field.zero] * n
    acc = field.zero
    for k in range(n, 0, -1):
        acc = acc * r + coeffs[k]
        out[k - 1] = acc
    return out


def _char0_roots(field, coeffs):
    """Roots (with multiplicity) of a polynomial over Q or Q(zeta_N) lying in the field."""
    coeffs = [field(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    out = []
    k = 0
    while coeffs[k] == 0:
        k += 1
    if k:
        out.append((field.zero, k))
        coeffs = coeffs[k:]
    # roots of unity (cheap and covers the characteristic polynomials
    # of most Newton polygon edges)
    for u in field.roots_of_unity():
        m = 0
        while len(coeffs) > 1 and _horner(field, coeffs, u) == 0:
            coeffs = _synthetic_div(field, coeffs, u)
            m += 1
        if m:
            out.append((u, m))
    d = len(coeffs) - 1
    if d == 1:
        out.append((-coeffs[0] / coeffs[1], 1))
    elif d > 1:
        inner = [c for c in coeffs[1:-1] if c != 0]
        found = None
        if not inner:
            try:
                base = field.nth_root(-coeffs[0] / coeffs[-1], d)
            except NoSuchRoot:
                found = []
            else:
                found = []
                for u in field.roots_of_unity():
                    cand = base * u
                    if cand ** d == -coeffs[0] / coeffs[-1] and cand not in [c for c, _ in found]:
                        found.append((cand, 1))
        if found is None:
            found = _sympy_roots(field, coeffs)
        out.extend(found)
    merged: dict = {}
    for r, m in out:
        merged[r] = merged.get(r, 0) + m
    return sorted(merged.items(), key=lambda rm: field.key(rm[0]))


@functools.lru_cache(maxsize=64)
def _sympy_domain(N: int):
    import sympy

    if N <= 2:
        return sympy.QQ
    K = sympy.QQ.algebraic_field(sympy.exp(2 * sympy.pi * sympy.I / N))
    mod = [int(c) for c in reversed(K.mod.to_list())]
    if tuple(mod) != cyclotomic_poly(N):
        raise NoSuchRoot(f"unexpected defining polynomial for Q(zeta_{N})")
    return K


def _sympy_roots(field, coeffs):
    """Linear factors over the field via sympy's algebraic-field factorization."""
    import sympy

    t = sympy.Symbol("t")
    rational = isinstance(field, RationalField) or field.N <= 2
    if rational:
        K = sympy.QQ
        vals = [c if isinstance(c, Fraction) else c.as_rational() for c in coeffs]
        rep = [K(v.numerator, v.denominator) for v in reversed(vals)]
    else:
        K = _sympy_domain(field.N)
        rep = [
            K([sympy.QQ(x.numerator, x.denominator) for x in reversed(c.coords)])
            for c in reversed(coeffs)
        ]
    P = sympy.Poly.from_list(rep, t, domain=K)
    _, facs = P.factor_list()
    out = []
    for fac, mult in facs:
        if fac.degree() != 1:
            continue
        a, b = fac.rep.to_list()
        r = -K.quo(b, a)
        if rational:
            out.append((field(Fraction(int(r.numerator), int(r.denominator))), mult))
        else:
            lst = [Fraction(int(x.numerator), int(x.denominator)) for x in reversed(r.to_list())]
            lst += [Fraction(0)] * (field.phi - len(lst))
            out.append((field.from_coords(lst), mult))
    return out


# --------------------------------------------------------------------------
# module-level operations


def build_extension(p: int, e: int) -> FiniteField:
    """F_{p^e} with the lexicographically smallest monic irreducible modulus."""
    return _build_extension_cached(p, e)


@functools.lru_cache(maxsize=None)
def _build_extension_cached(p: int, e: int) -> FiniteField:
    return FiniteField(p, e)


def primitive_root_of_unity(cfg, m: int):
    return cfg.primitive_root_of_unity(m)


def nth_root(a, n: int, field=None):
    if field is None:
        field = field_of(a)
    return field.nth_root(a, n)


def field_of(a):
    if isinstance(a, (CyclotomicElement, FiniteFieldElement)):
        return a.field
    return QQ


def frobenius(a: FiniteFieldElement, q: int) -> FiniteFieldElement:
    p = a.field.p
    k = q
    while k > 1 and k % p == 0:
        k //= p
    if k != 1 or q < p:
        raise BadFieldMismatch(f"{q} is not a power of the characteristic {p}")
    return a**q


def parse_field(text: str):
    """Parse the CLI field syntax ``rational``, ``cyclo:N`` or ``finite:p[:e]``."""
    parts = text.strip().lower().split(":")
    try:
        if parts == ["rational"]:
            return QQ
        if parts[0] == "cyclo" and len(parts) == 2:
            return CyclotomicField(int(parts[1]))
        if parts[0] == "finite" and len(parts) in (2, 3):
            p = int(parts[1])
            e = int(parts[2]) if len(parts) == 3 else 1
            return build_extension(p, e)
    except ValueError as exc:
        raise ValueError(f"bad field {text!r}: {exc}") from None
    raise ValueError(f"bad field {text!r}; expected rational, cyclo:N or finite:p[:e]")
