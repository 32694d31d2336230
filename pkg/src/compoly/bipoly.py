"""Bivariate polynomials f(x, y), monic in y, with Laurent-polynomial coefficients in x.

A polynomial is a sparse map ``(i, j) -> c`` for the monomial c*x^i*y^j.
The public constructor normalises to monic-in-y form (dividing by the
leading y-coefficient when it is a unit monomial c*x^k); arithmetic
results are returned as-is and need not be monic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import NotInMh, NotMonic
from .unipoly import PolyRing, UPoly

__all__ = [
    "BivariatePoly",
    "Edge",
    "NewtonPolygon",
    "newton_polygon",
    "lower_chain",
    "is_homogeneous",
    "associated_poly",
    "homogenize",
    "substitute_for_composition",
]


class BivariatePoly:
    __slots__ = ("field", "terms")

    def __init__(self, field, terms, normalize: bool = True):
        items = terms.items() if isinstance(terms, dict) else terms
        clean = {}
        zero = field.zero
        for (i, j), c in items:
            c = field(c)
            if c == zero:
                continue
            key = (int(i), int(j))
            if key in clean:
                s = clean[key] + c
                if s == zero:
                    del clean[key]
                else:
                    clean[key] = s
            else:
                clean[key] = c
        self.field = field
        self.terms = clean
        if normalize:
            self._make_monic()

    @classmethod
    def raw(cls, field, terms: dict) -> "BivariatePoly":
        """Wrap a term map without coercion or normalisation (zero terms dropped)."""
        obj = cls.__new__(cls)
        obj.field = field
        zero = field.zero
        obj.terms = {k: c for k, c in terms.items() if c != zero}
        return obj

    @classmethod
    def from_ycoeffs(cls, field, ycoeffs, normalize: bool = True) -> "BivariatePoly":
        """Build from a list indexed by y-degree of {x-exponent: coeff} maps."""
        terms = {}
        for j, a in enumerate(ycoeffs):
            for i, c in a.items():
                terms[(i, j)] = c
        return cls(field, terms, normalize)

    def _make_monic(self):
        if not self.terms:
            raise NotMonic("zero polynomial")
        m = self.deg_y
        if m < 1:
            raise NotMonic("polynomial has y-degree 0")
        lead = [(i, c) for (i, j), c in self.terms.items() if j == m]
        if len(lead) != 1:
            raise NotMonic("leading y-coefficient is not a monomial in x")
        k, c = lead[0]
        if k == 0 and c == self.field.one:
            return
        inv = self.field.one / c
        self.terms = {(i - k, j): v * inv for (i, j), v in self.terms.items()}

    # -- queries -----------------------------------------------------------

    @property
    def deg_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monic(self) -> bool:
        m = self.deg_y
        lead = [(i, c) for (i, j), c in self.terms.items() if j == m]
        return m >= 1 and lead == [(0, self.field.one)]

    def ycoeff(self, j: int) -> dict:
        """The x-Laurent coefficient of y^j as {x-exponent: coeff}."""
        return {i: c for (i, jj), c in self.terms.items() if jj == j}

    def ycoeffs(self) -> list:
        out = [dict() for _ in range(self.deg_y + 1)]
        for (i, j), c in self.terms.items():
            out[j][i] = c
        return out

    def x_valuation(self, j: int):
        """Lowest x-exponent in the coefficient of y^j, or None if it vanishes."""
        return min((i for (i, jj) in self.terms if jj == j), default=None)

    def min_x(self) -> int:
        return min((i for i, _ in self.terms), default=0)

    def max_x(self) -> int:
        return max((i for i, _ in self.terms), default=0)

    def support(self):
        return sorted(self.terms)

    def sorted_terms(self):
        """Terms in canonical order: y-degree descending, then x-degree ascending."""
        return sorted(self.terms.items(), key=lambda kv: (-kv[0][1], kv[0][0]))

    # -- arithmetic --------------------------------------------------------

    def _other(self, o):
        if isinstance(o, BivariatePoly):
            return o
        return BivariatePoly.raw(self.field, {(0, 0): self.field(o)})

    def __add__(self, other):
        o = self._other(other)
        t = dict(self.terms)
        for k, c in o.terms.items():
            t[k] = t[k] + c if k in t else c
        return BivariatePoly.raw(self.field, t)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePoly.raw(self.field, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if not isinstance(other, BivariatePoly):
            c = self.field(other)
            return BivariatePoly.raw(self.field, {k: v * c for k, v in self.terms.items()})
        t: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                t[k] = t[k] + c1 * c2 if k in t else c1 * c2
        return BivariatePoly.raw(self.field, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = BivariatePoly.raw(self.field, {(0, 0): self.field.one})
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, BivariatePoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"BivariatePoly({self})"

    def __str__(self):
        from .render import render_bipoly

        return render_bipoly(self)

    def scale_vars(self, a, b) -> "BivariatePoly":
        """f(a*x, b*y)."""
        a, b = self.field(a), self.field(b)
        return BivariatePoly.raw(
            self.field, {(i, j): c * a**i * b**j for (i, j), c in self.terms.items()}
        )

    def shift_x(self, k: int) -> "BivariatePoly":
        """x^k * f."""
        return BivariatePoly.raw(self.field, {(i + k, j): c for (i, j), c in self.terms.items()})

    def to_upoly(self, var: str = "y"):
        """(s, F) with x^s * f = F, F a UPoly in y over field[x] (s >= 0 clears negative exponents)."""
        s = max(0, -self.min_x())
        ring = PolyRing(self.field, "x")
        cols = []
        for a in self.ycoeffs():
            cs = [self.field.zero] * (max(a) + s + 1) if a else []
            for i, c in a.items():
                cs[i + s] = c
            cols.append(UPoly._raw(self.field, cs, "x"))
        return s, UPoly._raw(ring, cols, var)

    @classmethod
    def from_upoly(cls, F: UPoly, shift: int = 0, normalize: bool = False) -> "BivariatePoly":
        """Inverse of :meth:`to_upoly`: x^(-shift) * F."""
        field = F.domain.base
        terms = {}
        for j, a in enumerate(F.coeffs):
            for i, c in enumerate(a.coeffs):
                if c != field.zero:
                    terms[(i - shift, j)] = c
        if normalize:
            return cls(field, terms)
        return cls.raw(field, terms)


# --------------------------------------------------------------------------
# Newton polygon


@dataclass(frozen=True)
class Edge:
    """One edge of the Newton polygon.

    ``gamma`` is the branch exponent it determines: every support point
    (i, j) satisfies i + gamma*j >= ``height`` with equality on ``points``.
    """

    gamma: Fraction
    points: tuple

    @property
    def slope(self):
        """dj/di along the edge (None for a vertical edge, gamma = 0)."""
        return None if self.gamma == 0 else -1 / self.gamma

    @property
    def height(self) -> Fraction:
        i, j = self.points[0]
        return i + self.gamma * j


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple
    edges: tuple


def lower_chain(vals: dict) -> list:
    """Newton chain of points (vals[j], j), walked from the highest j downwards.

    Returns a list of :class:`Edge` with strictly increasing ``gamma``.
    """
    js = sorted(vals, reverse=True)
    if not js:
        return []
    cur = js[0]
    last = js[-1]
    edges = []
    while cur != last:
        best = None
        pts: list = []
        for j in js:
            if j >= cur:
                continue
            g = Fraction(vals[j] - vals[cur]) / (cur - j)
            if best is None or g < best:
                best, pts = g, [j]
            elif g == best:
                pts.append(j)
        chain = [cur] + sorted(pts, reverse=True)
        edges.append(Edge(best, tuple((vals[j], j) for j in chain)))
        cur = min(pts)
    return edges


def newton_polygon(f: BivariatePoly) -> NewtonPolygon:
    """The part of the lower hull of supp(f) that governs the branches."""
    vals = {}
    for (i, j) in f.terms:
        if j not in vals or i < vals[j]:
            vals[j] = i
    edges = lower_chain(vals)
    if edges:
        vertices = [edges[0].points[0]] + [e.points[-1] for e in edges]
    else:
        vertices = [(vals[j], j) for j in vals]
    return NewtonPolygon(tuple(vertices), tuple(edges))


# --------------------------------------------------------------------------
# homogeneous polynomials


def is_homogeneous(f: BivariatePoly):
    """(True, n) if every monomial has total degree n, else (False, None)."""
    degs = {i + j for (i, j) in f.terms}
    if len(degs) == 1:
        n = degs.pop()
        return True, n
    return False, None


def associated_poly(f: BivariatePoly, var: str = "t") -> UPoly:
    """w_f(t) with f(x, t*x) = x^n * w_f(t)."""
    ok, n = is_homogeneous(f)
    if not ok:
        raise NotInMh("polynomial is not homogeneous")
    if n is None or n < 1:
        raise NotInMh("homogeneous degree must be positive")
    if (n, 0) not in f.terms or (0, n) not in f.terms:
        raise NotInMh("x^n and y^n coefficients must be nonzero")
    cs = [f.terms.get((n - j, j), f.field.zero) for j in range(n + 1)]
    return UPoly(f.field, cs, var)


def homogenize(w: UPoly) -> BivariatePoly:
    """F(x, y) = sum_j w[j] x^(n-j) y^j with n = deg w."""
    n = w.degree
    return BivariatePoly(w.domain, {(n - j, j): c for j, c in enumerate(w.coeffs)})


# --------------------------------------------------------------------------
# substitutions feeding the resultant route


def substitute_for_composition(f: BivariatePoly, g: BivariatePoly, mode: str):
    """Return (F, G) as maps (x-exp, y-exp, z-exp) -> coeff.

    sum:     F = f(x, z), G = g(x, y - z)
    product: F = f(x, z), G = z^m2 * g(x, y / z)
    """
    field = f.field
    F = {(i, 0, j): c for (i, j), c in f.terms.items()}
    G: dict = {}
    if mode == "sum":
        for (i, j), c in g.terms.items():
            for k in range(j + 1):
                v = c * comb(j, k) * (-1) ** k
                key = (i, j - k, k)
                G[key] = G[key] + v if key in G else field(v)
    elif mode == "product":
        m2 = g.deg_y
        for (i, j), c in g.terms.items():
            G[(i, j, m2 - j)] = c
    else:
        raise ValueError(f"unknown mode {mode!r}")
    G = {k: v for k, v in G.items() if v != field.zero}
    return F, G
