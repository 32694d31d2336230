"""Bivariate composed sum, composed multiplication and composed product.

For monic f, g in y with branches p_1..p_m1 and q_1..q_m2:

    f * g  = prod_(i,j) (y - (p_i + q_j))
    f . g  = prod_(i,j) (y - p_i q_j)
    f (.) g = prod_(i,j) (y - p_i(q_j))      (p_i as a series in x^(1/n1))

Sum and multiplication also have an exact route through the resultant in z,
which yields the polynomial with no truncation at all.  The product route
substitutes series and only ever gives a truncated answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm, prod

import numpy as np
from sympy import prevprime

from . import _kernels as K

from .bipoly import BivariatePoly, substitute_for_composition
from .errors import ConstantTermNonzero, NonpositiveValuation
from .newton_puiseux import expand_branches
from .puiseux import BranchSet, PuiseuxSeries, SeriesPoly, add, compose, mul
from .unipoly import PolyRing, UPoly, interpolate, resultant, sylvester_resultant_fp

__all__ = [
    "ComposedResult",
    "composed_sum",
    "composed_mul",
    "composed_product",
    "exact_composed",
    "MAX_PRECISION_RAISES",
]

MAX_PRECISION_RAISES = 8


@dataclass
class ComposedResult:
    """Outcome of a bivariate composed operation.

    ``factored[k]`` is the series s of the factor y - s, for the index pair
    ``pairs[k] = (i, j)``.  ``truncation`` is the bound below which
    ``expanded`` is correct (None when every factor is exact).
    """

    op: str
    factored: list
    pairs: list
    expanded: SeriesPoly
    exact: BivariatePoly | None
    truncation: Fraction | None

    @property
    def degree(self) -> int:
        return len(self.factored)

    def agrees(self) -> bool:
        """expanded == exact modulo x^truncation (True when there is no exact part)."""
        if self.exact is None:
            return True
        F = self.exact.field
        T = self.truncation
        if self.expanded.degree != self.exact.deg_y:
            return False
        for j, c in enumerate(self.expanded.coeffs):
            target = PuiseuxSeries(F, {Fraction(i): a for i, a in self.exact.ycoeff(j).items()}, 1, None)
            if T is None:
                if c != target:
                    return False
            elif not c.equal_mod(target, T):
                return False
        return True


# --------------------------------------------------------------------------
# exact route


def _laurent_res(f: BivariatePoly, Gz: dict, field) -> dict:
    """Res_z(f(x, z), G(x, z)) as a Laurent map {xexp: coeff}; G given as {(i, k): c}."""
    ring = PolyRing(field, "x")
    s = max(0, -f.min_x())
    t = max(0, -min((i for i, _ in Gz), default=0))

    def upoly_z(terms, shift):
        deg = max((k for _, k in terms), default=-1)
        cols = [dict() for _ in range(deg + 1)]
        for (i, k), c in terms.items():
            cols[k][i + shift] = c
        zc = []
        for d in cols:
            cs = [field.zero] * (max(d, default=-1) + 1)
            for e, v in d.items():
                cs[e] = v
            zc.append(UPoly._raw(field, cs, "x"))
        return UPoly._raw(ring, zc, "z")

    A = upoly_z({(i, j): c for (i, j), c in f.terms.items()}, s)
    B = upoly_z(Gz, t)
    if B.is_zero():
        return {}
    r = resultant(A, B)
    # Res(x^s f, x^t G) = x^(s deg G + t deg f) Res(f, G)
    drop = s * B.degree + t * A.degree
    return {k - drop: c for k, c in enumerate(r.coeffs) if c != field.zero}


def exact_composed(f: BivariatePoly, g: BivariatePoly, mode: str) -> BivariatePoly | None:
    """Res_z(f(x, z), G(x, y, z)) with G = g(x, y - z) or z^m2 g(x, y / z).

    Returns None when the field has too few elements to interpolate in y.
    """
    F = f.field
    if g.field != F:
        from .errors import BadFieldMismatch

        raise BadFieldMismatch("inputs over different fields")
    N = f.deg_y * g.deg_y
    p = F.characteristic
    if p and (getattr(F, "order", p) <= N):
        return None
    _, G = substitute_for_composition(f, g, mode)
    fast = _exact_modular(f, G, N)
    if fast is not None:
        return fast
    ys = [F(k) for k in range(N + 1)] if not p or p > N else None
    if ys is None:
        ys = list(F.elements())[: N + 1]
    vals = []
    for y0 in ys:
        Gz: dict = {}
        pw = {}
        for (i, j, k), c in G.items():
            if j not in pw:
                pw[j] = y0**j if j else F.one
            v = c * pw[j]
            key = (i, k)
            Gz[key] = Gz[key] + v if key in Gz else v
        Gz = {k: v for k, v in Gz.items() if v != F.zero}
        vals.append(_laurent_res(f, Gz, F))
    exps = sorted(set().union(*vals))
    terms = {}
    for e in exps:
        col = interpolate(F, ys, [v.get(e, F.zero) for v in vals], "y")
        for j, c in enumerate(col.coeffs):
            if c != F.zero:
                terms[(e, j)] = c
    return BivariatePoly.raw(F, terms)


def _rational_coeff(F, c):
    """c as a Fraction when it lies in Q, else None."""
    if F.characteristic:
        return None
    if isinstance(c, Fraction):
        return c
    return c.as_rational()


def _exact_modular(f: BivariatePoly, G: dict, N: int):
    """Multi-modular Res_z for rational data (or a kernel-sized prime field); None if not applicable.

    Inputs are scaled to integers; the bivariate resultant is computed mod
    several primes (evaluate y at 0..N, Sylvester/Bareiss over F_p[x],
    interpolate in y) and lifted by CRT past the coefficient bound
    ||F||_1^deg_z(G) * ||G||_1^deg_z(F).
    """
    field = f.field
    p0 = field.characteristic
    if p0:
        if getattr(field, "e", 1) != 1 or not K.usable(p0) or p0 <= N:
            return None
        fi = {(i, j): c.value for (i, j), c in f.terms.items()}
        gi = {k: c.value for k, c in G.items()}
        Df = Dg = 1
    else:
        fq = {k: _rational_coeff(field, c) for k, c in f.terms.items()}
        gq = {k: _rational_coeff(field, c) for k, c in G.items()}
        if any(v is None for v in fq.values()) or any(v is None for v in gq.values()):
            return None
        Df = lcm(*(v.denominator for v in fq.values()))
        Dg = lcm(*(v.denominator for v in gq.values()))
        fi = {k: int(v * Df) for k, v in fq.items()}
        gi = {k: int(v * Dg) for k, v in gq.items()}
    s = max(0, -min(i for i, _ in fi))
    t = max(0, -min(i for i, _, _ in gi))
    fi = {(i + s, j): c for (i, j), c in fi.items()}
    gi = {(i + t, j, k): c for (i, j, k), c in gi.items()}
    m = max(j for _, j in fi)
    n = max(k for _, _, k in gi)
    if n == 0:
        return None
    ys = list(range(N + 1))
    if p0:
        primes = [p0]
    else:
        bound = sum(abs(c) for c in fi.values()) ** n * sum(abs(c) for c in gi.values()) ** m
        primes, q, M = [], K.PRIME_LIMIT, 1
        lead_f = [c for (i, j), c in fi.items() if j == m]
        lead_g = [c for (i, j, k), c in gi.items() if k == n]
        while M <= 2 * bound:
            q = prevprime(q)
            if all(c % q == 0 for c in lead_f) or all(c % q == 0 for c in lead_g):
                continue
            primes.append(q)
            M *= q
    residues = [_res_bivariate_mod(fi, gi, m, n, ys, q) for q in primes]
    if p0:
        table = residues[0]
        out = {k: field.from_int(int(v)) for k, v in table.items() if v}
    else:
        keys = set().union(*residues)
        M = prod(primes)
        scale = Fraction(1, Df**n * Dg**m)
        out = {}
        for key in keys:
            v = _crt([r.get(key, 0) for r in residues], primes, M)
            if v:
                out[key] = field(v * scale)
    # undo the Laurent shifts: Res(x^s f, x^t G) = x^(s n + t m) Res(f, G)
    drop = s * n + t * m
    return BivariatePoly.raw(field, {(i - drop, j): c for (i, j), c in out.items()})


def _crt(rs, ps, M):
    x = 0
    for r, p in zip(rs, ps):
        Mi = M // p
        x += int(r) * Mi * pow(Mi, -1, p)
    x %= M
    return x - M if x > M // 2 else x


def _res_bivariate_mod(fi, gi, m, n, ys, p) -> dict:
    """{(xexp, yexp): residue} of Res_z over F_p, via evaluation at y in ys."""

    def arrs(d, deg):
        width = max((i for i, _ in d), default=0) + 1
        out = [np.zeros(width, dtype=np.int64) for _ in range(deg + 1)]
        for (i, k), c in d.items():
            out[k][i] = (out[k][i] + c) % p
        return [K.trim(a) for a in out]

    F_arr = arrs(fi, m)
    vals = []
    for y0 in ys:
        d: dict = {}
        for (i, j, k), c in gi.items():
            d[(i, k)] = (d.get((i, k), 0) + c * pow(y0, j, p)) % p
        vals.append(sylvester_resultant_fp(F_arr, arrs(d, n), p))
    X = max(v.size for v in vals)
    V = np.zeros((len(ys), X), dtype=np.int64)
    for r, v in enumerate(vals):
        V[r, : v.size] = v % p
    Linv = _vandermonde_inverse(ys, p)
    C = np.zeros((len(ys), X), dtype=np.int64)
    for r in range(len(ys)):
        acc = np.zeros(X, dtype=np.int64)
        for c in range(len(ys)):
            acc = (acc + int(Linv[r][c]) * V[c]) % p
        C[r] = acc
    return {(i, j): int(C[j, i]) for j in range(C.shape[0]) for i in range(X) if C[j, i]}


def _vandermonde_inverse(xs, p):
    """Rows: coefficient vectors (by power) of the Lagrange basis, as a matrix W with coeff = W @ values."""
    n = len(xs)
    W = [[0] * n for _ in range(n)]
    for c, xc in enumerate(xs):
        basis = [1]
        den = 1
        for d, xd in enumerate(xs):
            if d == c:
                continue
            basis = [(a - xd * b) % p for a, b in zip([0] + basis, basis + [0])]
            den = den * (xc - xd) % p
        inv = pow(den, -1, p)
        for r in range(n):
            W[r][c] = basis[r] * inv % p
    return W


# --------------------------------------------------------------------------
# Puiseux route


def _branch_list(poly, given, T):
    if given is not None:
        if isinstance(given, BranchSet):
            return given.expanded(), False
        return list(given), False
    return expand_branches(poly, T).expanded(), True


def _combine(op: str, p: PuiseuxSeries, q: PuiseuxSeries, T, root=None):
    if op == "sum":
        return add(p, q)
    if op == "mul":
        return mul(p, q)
    return compose(p, q, T, root)


def _puiseux_route(op, f, g, T, f_branches, g_branches, roots=None):
    Tb = T
    last = None
    for _ in range(MAX_PRECISION_RAISES):
        P, raisable_f = _branch_list(f, f_branches, Tb)
        Q, raisable_g = _branch_list(g, g_branches, Tb)
        if op == "product":
            for q in Q:
                if q.is_zero() or q.valuation is None or q.valuation <= 0:
                    raise NonpositiveValuation("every branch of g must have positive valuation")
        pairs = [(i, j) for i in range(len(P)) for j in range(len(Q))]
        factors = [_combine(op, P[i], Q[j], T, roots[j] if roots else None) for i, j in pairs]
        expanded = SeriesPoly.product([SeriesPoly.linear_factor(s) for s in factors])
        t = expanded.truncation
        last = (factors, pairs, expanded)
        if t is None or t >= T or not (raisable_f or raisable_g):
            break
        Tb = max(Tb * 2, Tb + (T - t))
    factors, pairs, expanded = last
    expanded = SeriesPoly(
        expanded.field, [c if c.truncation is None else c.truncate(T) for c in expanded.coeffs]
    )
    return factors, pairs, expanded


def _run(op, f, g, T, f_branches, g_branches, exact, roots=None):
    T = Fraction(T)
    if T <= 0:
        raise ValueError("truncation must be positive")
    factors, pairs, expanded = _puiseux_route(op, f, g, T, f_branches, g_branches, roots)
    ex = None
    if exact and op in ("sum", "mul"):
        ex = exact_composed(f, g, op if op == "sum" else "product")
    return ComposedResult(op, factors, pairs, expanded, ex, expanded.truncation)


def composed_sum(f, g, T, f_branches=None, g_branches=None, exact=True) -> ComposedResult:
    """f * g: branches p_i + q_j; exact part Res_z(f(x, z), g(x, y - z))."""
    return _run("sum", f, g, T, f_branches, g_branches, exact)


def composed_mul(f, g, T, f_branches=None, g_branches=None, exact=True) -> ComposedResult:
    """f . g: branches p_i q_j; exact part Res_z(f(x, z), z^m2 g(x, y / z))."""
    return _run("mul", f, g, T, f_branches, g_branches, exact)


def composed_product(f, g, T, f_branches=None, g_branches=None, roots=None) -> ComposedResult:
    """f (.) g: branches p_i(q_j), Puiseux route only.

    Both inputs must vanish at the origin and every branch of g must have
    positive valuation, otherwise the substitution is undefined.  ``roots[j]``
    optionally fixes the leading coefficient of q_j^(1/n1) (which n1-th root
    is used); by default the canonical root is taken.
    """
    zero = f.field.zero
    if f.terms.get((0, 0), zero) != zero or g.terms.get((0, 0), zero) != zero:
        raise ConstantTermNonzero("composed product needs f(0,0) = g(0,0) = 0")
    return _run("product", f, g, T, f_branches, g_branches, False, roots)
