"""Dense univariate polynomials over any coefficient domain.

A domain is either a field from :mod:`compoly.fields` or a :class:`PolyRing`
(univariate polynomials over a field, used as the coefficient ring of
resultants in two variables).  Coefficients are stored lowest degree first
with no trailing zeros.

Prime-field hot paths (irreducibility, root finding, resultants over
F_p[x]) run on the int64 kernels of :mod:`compoly._kernels`.
"""

from __future__ import annotations

import random

import numpy as np
from sympy import factorint

from . import _kernels as K
from .errors import BadFieldMismatch, InseparableInput, NotFiniteField, ZeroInput
from .fields import FiniteField, FiniteFieldElement

__all__ = [
    "UPoly",
    "PolyRing",
    "resultant",
    "gcd",
    "is_irreducible",
    "is_irreducible_coeffs",
    "roots_in_field",
    "interpolate",
    "sylvester_resultant_fp",
    "set_default_seed",
]

_DEFAULT_SEED = 0


def set_default_seed(seed: int) -> None:
    """Seed used by equal-degree splitting when no explicit seed is passed."""
    global _DEFAULT_SEED
    _DEFAULT_SEED = int(seed)


def _is_ring(domain) -> bool:
    return getattr(domain, "is_ring", False)


def _exact_div(domain, a, b):
    if _is_ring(domain):
        return domain.exact_div(a, b)
    return a / b


class UPoly:
    """Immutable dense polynomial; ``coeffs[k]`` is the coefficient of z^k."""

    __slots__ = ("domain", "coeffs", "var")

    def __init__(self, domain, coeffs=(), var: str = "z"):
        cs = [domain(c) for c in coeffs]
        zero = domain.zero
        while cs and cs[-1] == zero:
            cs.pop()
        self.domain = domain
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def _raw(cls, domain, coeffs, var="z"):
        obj = cls.__new__(cls)
        cs = list(coeffs)
        zero = domain.zero
        while cs and cs[-1] == zero:
            cs.pop()
        obj.domain = domain
        obj.coeffs = tuple(cs)
        obj.var = var
        return obj

    @classmethod
    def monomial(cls, domain, k: int, c=None, var="z"):
        c = domain.one if c is None else domain(c)
        return cls._raw(domain, [domain.zero] * k + [c], var)

    @classmethod
    def x(cls, domain, var="z"):
        return cls.monomial(domain, 1, var=var)

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.domain.zero

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.domain.zero

    def to_list(self) -> list:
        return list(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if self.degree <= 0:
            try:
                return self.coeff(0) == self.domain(other)
            except Exception:
                return False
        return False

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UPoly({self})"

    def __str__(self):
        from .render import render_upoly

        return render_upoly(self)

    # -- arithmetic --------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, UPoly):
            if other.domain != self.domain:
                raise BadFieldMismatch("polynomials over different domains")
            return other
        return UPoly._raw(self.domain, [self.domain(other)], self.var)

    def __add__(self, other):
        o = self._lift(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UPoly._raw(self.domain, out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return UPoly._raw(self.domain, [-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UPoly) or (
            isinstance(self.domain, PolyRing) and other.domain == self.domain.base
        ):
            c = self.domain(other)
            return UPoly._raw(self.domain, [a * c for a in self.coeffs], self.var)
        o = self._lift(other)
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return UPoly._raw(self.domain, [], self.var)
        zero = self.domain.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == zero:
                continue
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return UPoly._raw(self.domain, out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        result = UPoly._raw(self.domain, [self.domain.one], self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift_degree(self, k: int) -> "UPoly":
        """Multiply by z^k (k >= 0)."""
        if not self.coeffs:
            return self
        return UPoly._raw(self.domain, [self.domain.zero] * k + list(self.coeffs), self.var)

    def __divmod__(self, other):
        """Euclidean division; the divisor's leading coefficient must be invertible."""
        o = self._lift(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        dom = self.domain
        r = list(self.coeffs)
        nb = len(o.coeffs)
        if len(r) < nb:
            return UPoly._raw(dom, [], self.var), self
        inv_lc = o.lc if _is_ring(dom) else dom.one / o.lc
        q = [dom.zero] * (len(r) - nb + 1)
        for k in range(len(q) - 1, -1, -1):
            top = r[k + nb - 1]
            if top == dom.zero:
                continue
            c = _exact_div(dom, top, inv_lc) if _is_ring(dom) else top * inv_lc
            q[k] = c
            for i, bi in enumerate(o.coeffs):
                r[k + i] = r[k + i] - c * bi
        return UPoly._raw(dom, q, self.var), UPoly._raw(dom, r[: nb - 1], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_quo(self, other) -> "UPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def scale(self, c) -> "UPoly":
        return self * c

    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        inv = self.domain.one / self.lc
        return UPoly._raw(self.domain, [c * inv for c in self.coeffs], self.var)

    def derivative(self) -> "UPoly":
        return UPoly._raw(self.domain, [c * k for k, c in enumerate(self.coeffs)][1:], self.var)

    def __call__(self, v):
        """Horner evaluation; ``v`` may be a domain element or another UPoly."""
        if isinstance(v, UPoly):
            acc = UPoly._raw(v.domain, [], v.var)
            for c in reversed(self.coeffs):
                acc = acc * v + c
            return acc
        acc = self.domain.zero
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def compose(self, g: "UPoly") -> "UPoly":
        return self(g)

    def reverse(self, n: int | None = None) -> "UPoly":
        """z^n f(1/z) with n = deg f by default."""
        n = self.degree if n is None else n
        cs = list(self.coeffs) + [self.domain.zero] * (n + 1 - len(self.coeffs))
        return UPoly._raw(self.domain, cs[: n + 1][::-1], self.var)

    def with_var(self, var: str) -> "UPoly":
        return UPoly._raw(self.domain, self.coeffs, var)


class PolyRing:
    """The ring base[x] as a coefficient domain for :class:`UPoly`."""

    is_ring = True
    is_finite = False

    def __init__(self, base, var: str = "x"):
        self.base = base
        self.var = var
        self.characteristic = base.characteristic
        self.zero = UPoly._raw(base, [], var)
        self.one = UPoly._raw(base, [base.one], var)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.base == self.base

    def __hash__(self):
        return hash(("polyring", self.base))

    def __repr__(self):
        return f"PolyRing({self.base!r})"

    def __call__(self, v):
        if isinstance(v, UPoly):
            if v.domain != self.base:
                raise BadFieldMismatch("coefficient ring mismatch")
            return v
        return UPoly._raw(self.base, [self.base(v)], self.var)

    def exact_div(self, a, b):
        return a.exact_quo(b)

    def key(self, a):
        return tuple(self.base.key(c) for c in a.coeffs)

    def render(self, a) -> str:
        return f"({a})"


# --------------------------------------------------------------------------
# resultants


def _pseudo_rem(A: UPoly, B: UPoly) -> UPoly:
    """lc(B)^(deg A - deg B + 1) * A mod B without divisions."""
    dom = A.domain
    lb = B.lc
    e = A.degree - B.degree + 1
    R = A
    while not R.is_zero() and R.degree >= B.degree:
        T = UPoly.monomial(dom, R.degree - B.degree, R.lc, A.var) * B
        R = R * lb - T
        e -= 1
    if e > 0:
        R = R * (lb**e)
    return R


def _res_subresultant(A: UPoly, B: UPoly):
    dom = A.domain
    s = dom.one
    if A.degree < B.degree:
        A, B = B, A
        if A.degree % 2 and B.degree % 2:
            s = -s
    if B.degree == 0:
        return s * B.lc**A.degree
    g = h = dom.one
    while True:
        delta = A.degree - B.degree
        if A.degree % 2 and B.degree % 2:
            s = -s
        R = _pseudo_rem(A, B)
        A = B
        div = g * h**delta
        B = UPoly._raw(dom, [_exact_div(dom, c, div) for c in R.coeffs], A.var)
        if B.is_zero():
            return dom.zero
        g = A.lc
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = _exact_div(dom, g**delta, h ** (delta - 1))
        if B.degree == 0:
            da = A.degree
            lbd = B.lc**da
            if da == 0:
                return s * lbd
            # h^(1 - da) * lc(B)^da
            return s * _exact_div(dom, lbd, h ** (da - 1))


def _res_euclid(A: UPoly, B: UPoly):
    dom = A.domain
    acc = dom.one
    while True:
        a, b = A.degree, B.degree
        if b == 0:
            return acc * B.lc**a
        if a == 0:
            return acc * A.lc**b
        R = A % B
        if R.is_zero():
            return dom.zero
        if (a * b) % 2:
            acc = -acc
        acc = acc * B.lc ** (a - R.degree)
        A, B = B, R


def resultant(f: UPoly, g: UPoly):
    """Res(f, g) = lc(f)^deg(g) * prod g(alpha) over the roots alpha of f."""
    if f.domain != g.domain:
        raise BadFieldMismatch("resultant of polynomials over different domains")
    dom = f.domain
    if f.is_zero() and g.is_zero():
        raise ZeroInput("resultant of two zero polynomials")
    if f.is_zero() or g.is_zero():
        other = g if f.is_zero() else f
        return dom.one if other.degree == 0 and other.lc == dom.one else dom.zero
    if f.degree == 0:
        return f.lc**g.degree
    if g.degree == 0:
        return g.lc**f.degree
    if isinstance(dom, PolyRing) and _prime_kernel_field(dom.base):
        p = dom.base.p
        F = [_to_arr(c) for c in f.coeffs]
        G = [_to_arr(c) for c in g.coeffs]
        return _from_arr(dom.base, sylvester_resultant_fp(F, G, p), dom.var)
    if isinstance(dom, FiniteField):
        return _res_euclid(f, g)
    return _res_subresultant(f, g)


def sylvester_resultant_fp(F: list, G: list, p: int) -> np.ndarray:
    """Res_z of two polynomials over F_p[x], given as lists (by z-degree) of int64 arrays.

    Builds the Sylvester matrix with F_p[x] entries and takes a fraction-free
    determinant on the kernels.
    """
    m, n = len(F) - 1, len(G) - 1
    N = m + n
    dmax = max(max((a.size for a in F), default=1), max((b.size for b in G), default=1))
    W = N * max(dmax - 1, 0) + 1
    M = np.zeros((N, N, W), dtype=np.int64)
    for r in range(n):
        for k, a in enumerate(reversed(F)):
            M[r, r + k, : a.size] = a
    for r in range(m):
        for k, b in enumerate(reversed(G)):
            M[n + r, r + k, : b.size] = b
    return K.polymat_det(M, p)


# --------------------------------------------------------------------------
# finite-field machinery


def _prime_kernel_field(F) -> bool:
    return isinstance(F, FiniteField) and F.e == 1 and K.usable(F.p)


def _to_arr(f: UPoly) -> np.ndarray:
    return np.array([c.coords[0] for c in f.coeffs], dtype=np.int64)


def _from_arr(F: FiniteField, a, var="z") -> UPoly:
    return UPoly._raw(F, [F.from_int(int(c)) for c in a], var)


class _ArrArith:
    """Prime-field polynomial arithmetic on int64 arrays."""

    def __init__(self, p):
        self.p = p
        self.q = p
        self.one = np.ones(1, dtype=np.int64)
        self.x = np.array([0, 1], dtype=np.int64)

    def deg(self, a):
        return a.size - 1

    def sub(self, a, b):
        return K.sub(a, b, self.p)

    def powmod(self, a, e, m):
        return K.powmod(a, e, m, self.p)

    def mulmod(self, a, b, m):
        return K.mulmod(a, b, m, self.p)

    def add(self, a, b):
        return K.add(a, b, self.p)

    def gcd(self, a, b):
        return K.gcd(a, b, self.p)

    def quo(self, a, b):
        return K.divmod_(a, b, self.p)[0]

    def rem(self, a, b):
        return K.rem(a, b, self.p)

    def random(self, d, rng):
        return K.trim(np.array([rng.randrange(self.p) for _ in range(d)], dtype=np.int64))

    def root_of_linear(self, a):
        return (-int(a[0]) * pow(int(a[1]), -1, self.p)) % self.p

    def is_zero(self, a):
        return a.size == 0


class _PolyArith:
    """Generic finite-field polynomial arithmetic on UPoly."""

    def __init__(self, F: FiniteField):
        self.F = F
        self.p = F.p
        self.q = F.order
        self.one = UPoly._raw(F, [F.one])
        self.x = UPoly.x(F)

    def deg(self, a):
        return a.degree

    def sub(self, a, b):
        return a - b

    def add(self, a, b):
        return a + b

    def mulmod(self, a, b, m):
        return (a * b) % m

    def powmod(self, a, e, m):
        result = self.one % m
        base = a % m
        while e:
            if e & 1:
                result = (result * base) % m
            e >>= 1
            if e:
                base = (base * base) % m
        return result

    def gcd(self, a, b):
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def quo(self, a, b):
        return a // b

    def rem(self, a, b):
        return a % b

    def random(self, d, rng):
        F = self.F
        cs = [F.from_coords([rng.randrange(F.p) for _ in range(F.e)]) for _ in range(d)]
        return UPoly._raw(F, cs)

    def root_of_linear(self, a):
        return -a.coeffs[0] / a.coeffs[1]

    def is_zero(self, a):
        return a.is_zero()


def _arith_for(F: FiniteField):
    return _ArrArith(F.p) if _prime_kernel_field(F) else _PolyArith(F)


def _frobenius_power(A, e: int, f):
    """x^(q^e) mod f via e successive q-th powers."""
    h = A.rem(A.x, f)
    for _ in range(e):
        h = A.powmod(h, A.q, f)
    return h


def _irreducible(A, f) -> bool:
    n = A.deg(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    xr = A.rem(A.x, f)
    frob = [xr]
    h = xr
    for _ in range(n):
        h = A.powmod(h, A.q, f)
        frob.append(h)
    if not A.is_zero(A.sub(frob[n], xr)):
        return False
    for r in factorint(n):
        g = A.gcd(A.sub(frob[n // r], xr), f)
        if A.deg(g) != 0:
            return False
    return True


def is_irreducible(f: UPoly) -> bool:
    """Rabin's irreducibility test over a finite field."""
    F = f.domain
    if not isinstance(F, FiniteField):
        raise NotFiniteField("irreducibility test needs a finite coefficient field")
    if f.degree < 1:
        raise ValueError("irreducibility of a constant")
    A = _arith_for(F)
    g = f.monic()
    return _irreducible(A, _to_arr(g) if isinstance(A, _ArrArith) else g)


def is_irreducible_coeffs(coeffs, p: int) -> bool:
    """Rabin test for a monic polynomial over F_p given as ints, lowest first."""
    a = K.trim(np.array([c % p for c in coeffs], dtype=np.int64))
    if a.size == 0 or a[-1] != 1:
        a = K.trim(a)
        if a.size == 0:
            return False
        a = (a * pow(int(a[-1]), -1, p)) % p
    return _irreducible(_ArrArith(p), a)


def _split_linear(A, g, rng) -> list:
    """Roots of g, a monic product of distinct linear factors."""
    out = []
    stack = [g]
    q = A.q
    while stack:
        h = stack.pop()
        d = A.deg(h)
        if d <= 0:
            continue
        if d == 1:
            out.append(A.root_of_linear(h))
            continue
        while True:
            u = A.random(d, rng)
            if A.deg(u) < 1:
                continue
            if q % 2:
                w = A.sub(A.powmod(u, (q - 1) // 2, h), A.one)
            else:
                # absolute trace u + u^2 + ... + u^(q/2)
                w = A.rem(u, h)
                t = w
                k = 1
                while (1 << k) < q:
                    t = A.mulmod(t, t, h)
                    w = A.add(w, t)
                    k += 1
            s = A.gcd(w, h)
            if 0 < A.deg(s) < d:
                stack.append(s)
                stack.append(A.quo(h, s))
                break
    return out


def roots_in_field(f: UPoly, seed: int | None = None) -> list:
    """Roots of f in its finite coefficient field with multiplicities, sorted by coordinates.

    Uses gcd with z^q - z, then randomized equal-degree splitting driven by
    ``random.Random(seed)``.
    """
    F = f.domain
    if not isinstance(F, FiniteField):
        raise NotFiniteField("roots_in_field needs a finite coefficient field")
    if f.degree < 1:
        return []
    if f.derivative().is_zero():
        raise InseparableInput("derivative vanishes identically")
    rng = random.Random(_DEFAULT_SEED if seed is None else seed)
    g = f.monic()
    A = _arith_for(F)
    use_arr = isinstance(A, _ArrArith)
    ga = _to_arr(g) if use_arr else g
    out = []
    # zero root handled separately so x^q - x splitting stays cheap
    zmult = 0
    while A.deg(ga) > 0 and (ga[0] == 0 if use_arr else ga.coeffs[0] == F.zero):
        ga = A.quo(ga, A.x)
        zmult += 1
    if zmult:
        out.append((F.zero, zmult))
    if A.deg(ga) > 0:
        xq = A.powmod(A.x, A.q, ga)
        lin = A.gcd(A.sub(xq, A.x), ga)
        for r in _split_linear(A, lin, rng):
            root = F.from_int(r) if use_arr else r
            m = 0
            cur = g
            while cur.degree >= 1 and cur(root) == F.zero:
                cur = _synthetic_div(cur, root)
                m += 1
            out.append((root, m))
    out.sort(key=lambda rm: F.key(rm[0]))
    return out


def _synthetic_div(f: UPoly, r) -> UPoly:
    cs = f.coeffs
    n = len(cs) - 1
    out = [f.domain.zero] * n
    acc = f.domain.zero
    for k in range(n, 0, -1):
        acc = acc * r + cs[k]
        out[k - 1] = acc
    return UPoly._raw(f.domain, out, f.var)


def gcd(f: UPoly, g: UPoly) -> UPoly:
    """Monic gcd over a field; gcd(0, 0) = 0."""
    if f.domain != g.domain:
        raise BadFieldMismatch("gcd of polynomials over different domains")
    F = f.domain
    if _prime_kernel_field(F):
        return _from_arr(F, K.gcd(_to_arr(f), _to_arr(g), F.p), f.var)
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def interpolate(field, xs, ys, var="z") -> UPoly:
    """Newton interpolation through the points (xs[i], ys[i]) over a field."""
    n = len(xs)
    xs = [field(v) for v in xs]
    coef = [field(v) for v in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    result = UPoly._raw(field, [coef[-1]], var)
    for i in range(n - 2, -1, -1):
        result = result * UPoly._raw(field, [-xs[i], field.one], var) + coef[i]
    return result


def poly_from_roots(field, roots, var="z") -> UPoly:
    """prod (z - r) over the given roots."""
    out = UPoly._raw(field, [field.one], var)
    for r in roots:
        out = out * UPoly._raw(field, [-r, field.one], var)
    return out


def frobenius_orbit(a: FiniteFieldElement, q: int) -> list:
    """Conjugates a, a^q, a^(q^2), ... of an extension element."""
    orbit = [a]
    b = a**q
    while b != a:
        orbit.append(b)
        b = b**q
    return orbit
