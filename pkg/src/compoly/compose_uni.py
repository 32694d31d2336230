"""Univariate composed sums and multiplications over finite fields.

    (f (.) g)(x) = prod_alpha prod_beta (x - alpha <> beta),  <> in {+, *}

computed as resultants in z, plus the irreducibility criterion for composed
products and a brute-force decomposition of irreducibles into
indecomposables (unique up to associates).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field as dc_field
from math import comb, gcd as igcd

import numpy as np
from sympy import divisors, factorint

from .errors import BadFieldMismatch, NotFiniteField, NotIrreducible, SearchBudgetExceeded, ZeroRoot
from .fields import FiniteField, build_extension
from .unipoly import PolyRing, UPoly, interpolate, is_irreducible, resultant, roots_in_field

__all__ = [
    "DiamondKind",
    "composed_sum_uni",
    "composed_mul_uni",
    "composed_uni",
    "check_irreducibility_criterion",
    "IrreducibilityReport",
    "decompose_uni",
    "DecompositionResult",
    "Certificate",
    "unit_poly",
]

DEFAULT_BUDGET = 2_000_000


class DiamondKind(enum.Enum):
    ADDITION = "addition"
    MULTIPLICATION = "multiplication"

    @classmethod
    def parse(cls, v) -> "DiamondKind":
        if isinstance(v, cls):
            return v
        v = str(v).lower()
        if v in ("add", "addition", "sum", "+"):
            return cls.ADDITION
        if v in ("mul", "multiplication", "product", "*"):
            return cls.MULTIPLICATION
        raise ValueError(f"unknown composed-product kind {v!r}")

    def identity(self, F):
        return F.zero if self is DiamondKind.ADDITION else F.one

    def op(self, a, b):
        return a + b if self is DiamondKind.ADDITION else a * b


def _check(f: UPoly, g: UPoly) -> FiniteField:
    F = f.domain
    if not isinstance(F, FiniteField):
        raise NotFiniteField("univariate composed products need a finite field")
    if g.domain != F:
        raise BadFieldMismatch("inputs over different fields")
    if f.degree < 1 or g.degree < 1:
        raise ValueError("inputs must be nonconstant")
    return F


def _composed(f: UPoly, g: UPoly, kind: DiamondKind) -> UPoly:
    F = _check(f, g)
    f, g = f.monic(), g.monic()
    m, n = f.degree, g.degree
    if kind is DiamondKind.MULTIPLICATION and (f.coeff(0) == F.zero or g.coeff(0) == F.zero):
        raise ZeroRoot("composed multiplication needs nonzero roots")
    if F.order > m * n and not (F.e == 1):
        # evaluate x at mn + 1 field points, resultants over F_q, interpolate
        pts = list(itertools.islice(F.elements(), m * n + 1))
        vals = [resultant(f, _second_operand_at(g, x0, kind)) for x0 in pts]
        out = interpolate(F, pts, vals, "x")
        return out
    R = PolyRing(F, "x")
    fz = UPoly._raw(R, [R(c) for c in f.coeffs], "z")
    Gz = _second_operand(g, kind, R)
    res = resultant(fz, Gz)
    return res.with_var("x")


def _second_operand(g: UPoly, kind: DiamondKind, R: PolyRing) -> UPoly:
    """g(x - z) or z^n g(x / z) as a polynomial in z over F[x]."""
    F = g.domain
    n = g.degree
    if kind is DiamondKind.ADDITION:
        cols = [dict() for _ in range(n + 1)]
        for j, c in enumerate(g.coeffs):
            for k in range(j + 1):
                v = c * (comb(j, k) * (-1) ** k)
                d = cols[k]
                d[j - k] = d[j - k] + v if (j - k) in d else v
        zc = []
        for d in cols:
            cs = [F.zero] * (max(d, default=-1) + 1)
            for e, v in d.items():
                cs[e] = v
            zc.append(UPoly._raw(F, cs, "x"))
        return UPoly._raw(R, zc, "z")
    zc = [R.zero] * (n + 1)
    for j, c in enumerate(g.coeffs):
        zc[n - j] = UPoly.monomial(F, j, c, "x")
    return UPoly._raw(R, zc, "z")


def _second_operand_at(g: UPoly, x0, kind: DiamondKind) -> UPoly:
    F = g.domain
    n = g.degree
    if kind is DiamondKind.ADDITION:
        # g(x0 - z)
        return g(UPoly._raw(F, [x0, -F.one], "z"))
    return UPoly._raw(F, [g.coeffs[n - k] * x0 ** (n - k) for k in range(n + 1)], "z")


def composed_sum_uni(f: UPoly, g: UPoly) -> UPoly:
    """prod (x - (alpha + beta)) = Res_z(f(z), g(x - z))."""
    return _composed(f, g, DiamondKind.ADDITION)


def composed_mul_uni(f: UPoly, g: UPoly) -> UPoly:
    """prod (x - alpha*beta) = Res_z(f(z), z^n g(x / z))."""
    return _composed(f, g, DiamondKind.MULTIPLICATION)


def composed_uni(f: UPoly, g: UPoly, kind) -> UPoly:
    return _composed(f, g, DiamondKind.parse(kind))


def unit_poly(F, c, var="x") -> UPoly:
    """The degree-one unit x - c."""
    return UPoly._raw(F, [-F(c), F.one], var)


# --------------------------------------------------------------------------
# irreducibility criterion


@dataclass
class IrreducibilityReport:
    product: UPoly
    product_irreducible: bool
    f_irreducible: bool
    g_irreducible: bool
    degrees_coprime: bool

    @property
    def predicted(self) -> bool:
        return self.f_irreducible and self.g_irreducible and self.degrees_coprime

    @property
    def holds(self) -> bool:
        return self.product_irreducible == self.predicted


def check_irreducibility_criterion(f: UPoly, g: UPoly, kind) -> IrreducibilityReport:
    """Compare irreducibility of f (.) g against 'f, g irreducible with coprime degrees'."""
    kind = DiamondKind.parse(kind)
    h = _composed(f, g, kind)
    return IrreducibilityReport(
        product=h,
        product_irreducible=is_irreducible(h),
        f_irreducible=is_irreducible(f),
        g_irreducible=is_irreducible(g),
        degrees_coprime=igcd(f.degree, g.degree) == 1,
    )


# --------------------------------------------------------------------------
# decomposition


@dataclass
class Certificate:
    """An alternate decomposition: factors[i] = (x - units[i]) (.) result.factors[i]."""

    factors: list
    units: list


@dataclass
class DecompositionResult:
    factors: list
    kind: DiamondKind
    certificates: list = dc_field(default_factory=list)
    candidates_searched: int = 0

    @property
    def degree(self) -> int:
        d = 1
        for g in self.factors:
            d *= g.degree
        return d

    @property
    def indecomposable(self) -> bool:
        return len(self.factors) == 1


def _nullspace_mod_p(A: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {v : A v = 0} over F_p."""
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i, c]), None)
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fcol in free:
        v = np.zeros(cols, dtype=np.int64)
        v[fcol] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-A[i, fcol]) % p
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), cols)


def _mult_matrix(a) -> np.ndarray:
    """Matrix of b -> a*b on coordinate columns."""
    E = a.field
    cols = []
    for k in range(E.e):
        t = E.from_coords([1 if i == k else 0 for i in range(E.e)])
        cols.append((a * t).coords)
    return np.array(cols, dtype=np.int64).T


def _in_subfield(a, d: int) -> bool:
    return a ** (a.field.p**d) == a


def _exact_degree(a, d: int) -> bool:
    return _in_subfield(a, d) and all(not _in_subfield(a, d // r) for r in factorint(d))


def _minpoly(a, F: FiniteField, var="x") -> UPoly:
    """Minimal polynomial over the prime field F of an extension element."""
    E = a.field
    p = E.p
    orbit = [a]
    b = a**p
    while b != a:
        orbit.append(b)
        b = b**p
    poly = UPoly._raw(E, [E.one], var)
    for r in orbit:
        poly = poly * UPoly._raw(E, [-r, E.one], var)
    return UPoly._raw(F, [F.from_int(c.coords[0]) for c in poly.coeffs], var)


def _sort_key(g: UPoly):
    return (g.degree, tuple(g.domain.key(c) for c in g.coeffs))


def decompose_uni(f: UPoly, kind, budget: int = DEFAULT_BUDGET) -> DecompositionResult:
    """Decompose an irreducible f into indecomposables w.r.t. composed sum or multiplication.

    For each coprime split n = n1*n2 the search runs over every element of the
    degree-n1 subfield of F_(p^n) (exhaustively, subject to ``budget``),
    keeping those alpha for which gamma <> alpha^-1 lies in the degree-n2 subfield,
    gamma a fixed root of f.  Only prime base fields are supported.
    """
    kind = DiamondKind.parse(kind)
    F = f.domain
    if not isinstance(F, FiniteField):
        raise NotFiniteField("decomposition needs a finite field")
    if F.e != 1:
        raise NotFiniteField("decomposition is implemented over prime fields only")
    f = f.monic()
    n = f.degree
    if n < 1:
        raise ValueError("constant polynomial")
    if kind is DiamondKind.MULTIPLICATION and f.coeff(0) == F.zero:
        raise ZeroRoot("composed multiplication needs nonzero roots")
    if not is_irreducible(f):
        raise NotIrreducible("decompose_uni expects an irreducible polynomial")
    return _decompose(f, kind, budget)


def _decompose(f: UPoly, kind: DiamondKind, budget: int) -> DecompositionResult:
    F = f.domain
    n = f.degree
    p = F.p
    splits = [d for d in divisors(n) if 1 < d < n and igcd(d, n // d) == 1 and d <= n // d]
    if not splits:
        return DecompositionResult([f], kind)
    if p ** splits[0] > budget:
        raise SearchBudgetExceeded(f"subfield of size {p}^{splits[0]} exceeds the search budget {budget}")
    E = build_extension(p, n)
    fE = UPoly._raw(E, [E.from_int(c.coords[0]) for c in f.coeffs], f.var)
    gamma = roots_in_field(fE)[0][0]
    searched = 0
    for n1 in splits:
        n2 = n // n1
        if p**n1 > budget:
            raise SearchBudgetExceeded(f"subfield of size {p}^{n1} exceeds the search budget {budget}")
        hits, count = _search_split(gamma, n1, n2, kind)
        searched += count
        if not hits:
            continue
        # representative: the hit whose first factor is smallest
        keyed = sorted(((_sort_key(_minpoly(a, F, f.var)), i) for i, (a, _) in enumerate(hits)))
        hits = [hits[i] for _, i in keyed]
        a0, b0 = hits[0]
        g = _minpoly(a0, F, f.var)
        h = _minpoly(b0, F, f.var)
        sub_g = _decompose(g, kind, budget)
        sub_h = _decompose(h, kind, budget)
        factors = sub_g.factors + sub_h.factors
        order = sorted(range(len(factors)), key=lambda k: _sort_key(factors[k]))
        factors = [factors[k] for k in order]
        certs = _certificates(hits, g, h, sub_g, sub_h, order, kind, F)
        return DecompositionResult(
            factors, kind, certs, searched + sub_g.candidates_searched + sub_h.candidates_searched
        )
    return DecompositionResult([f], kind, [], searched)


def _search_split(gamma, n1: int, n2: int, kind: DiamondKind):
    """All (alpha, beta) with alpha of exact degree n1, beta of degree n2, alpha <> beta = gamma."""
    E = gamma.field
    p = E.p
    I = np.eye(E.e, dtype=np.int64)
    sub1 = _nullspace_mod_p(E.frobenius_matrix(n1) - I, p)  # basis of F_(p^n1)
    check2 = (E.frobenius_matrix(n2) - I) % p
    lam = np.array(list(itertools.product(range(p), repeat=sub1.shape[0])), dtype=np.int64)
    S = (lam @ sub1) % p  # every element of the subfield, as coordinate rows
    if kind is DiamondKind.MULTIPLICATION:
        # s runs over the subfield; beta = gamma * s, alpha = 1/s
        B = (S @ _mult_matrix(gamma).T) % p
    else:
        B = (np.array(gamma.coords, dtype=np.int64)[None, :] - S) % p
    ok = ~((B @ check2.T) % p).any(axis=1)
    hits = []
    for idx in np.flatnonzero(ok):
        s = E.from_coords([int(v) for v in S[idx]])
        if s.is_zero():
            continue
        alpha = s.inverse() if kind is DiamondKind.MULTIPLICATION else s
        if not _exact_degree(alpha, n1):
            continue
        beta = E.from_coords([int(v) for v in B[idx]])
        hits.append((alpha, beta))
    hits.sort(key=lambda ab: E.key(ab[0]))
    return hits, len(S)


def _certificates(hits, g, h, sub_g, sub_h, order, kind, F):
    """Alternate decompositions from the other hits, related by units c with c <> c' = e."""
    a0, b0 = hits[0]
    seen = {g}
    certs = []
    for a, b in hits[1:]:
        if kind is DiamondKind.MULTIPLICATION:
            cg, ch = a / a0, b / b0
        else:
            cg, ch = a - a0, b - b0
        g2 = _minpoly(a, F, g.var)
        if g2 in seen:
            continue
        seen.add(g2)
        cgF, chF = F.from_int(cg.coords[0]), F.from_int(ch.coords[0])
        # shift the first factor of each side by the unit
        units = [kind.identity(F)] * (len(sub_g.factors) + len(sub_h.factors))
        units[0] = cgF
        units[len(sub_g.factors)] = chF
        base = sub_g.factors + sub_h.factors
        alt = [
            base[k] if units[k] == kind.identity(F) else _composed(unit_poly(F, units[k], base[k].var), base[k], kind)
            for k in range(len(base))
        ]
        certs.append(Certificate([alt[k] for k in order], [units[k] for k in order]))
    return certs
