"""Newton-Puiseux expansion of a monic f(x, y) into branches y = p_i(x^(1/n)).

The algorithm keeps an exact copy of G(x, y) = f(x, P + y) where P is the
partial branch built so far.  At each node it reads the Newton chain of G
from the current multiplicity downwards, solves each edge's characteristic
polynomial in the coefficient field and recurses on y -> c x^gamma + y.
A branch stops when the next exponent would reach the truncation T, or
exactly when y divides G (P is then an exact root).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, lcm

from .bipoly import BivariatePoly, lower_chain
from .errors import CharTooSmall, RootOutsideField
from .puiseux import BranchSet, PuiseuxSeries, SeriesPoly, conjugate

__all__ = ["expand_branches", "conjugate_closure", "verify_product", "ExpansionRequest"]


class ExpansionRequest:
    """Input bundle for :func:`expand_branches` (a plain record)."""

    def __init__(self, poly: BivariatePoly, truncation, field=None):
        self.poly = poly
        self.truncation = Fraction(truncation)
        self.field = field or poly.field


def _taylor_shift(G: list, c, gamma: Fraction, field) -> list:
    """Coefficient lists of G(x, c x^gamma + y)."""
    m = len(G) - 1
    cpow = [field.one]
    for _ in range(m):
        cpow.append(cpow[-1] * c)
    out = [dict() for _ in range(m + 1)]
    zero = field.zero
    for j, Gj in enumerate(G):
        if not Gj:
            continue
        for k in range(j + 1):
            scale = cpow[j - k] * comb(j, k)
            shift = gamma * (j - k)
            tgt = out[k]
            for e, a in Gj.items():
                e2 = e + shift
                v = a * scale
                if e2 in tgt:
                    v = tgt[e2] + v
                    if v == zero:
                        del tgt[e2]
                        continue
                tgt[e2] = v
    return out


def _char_poly(G: list, edge, field) -> list:
    jb = edge.points[-1][1]
    ja = edge.points[0][1]
    cs = [field.zero] * (ja - jb + 1)
    for i, j in edge.points:
        cs[j - jb] = G[j][Fraction(i)]
    return cs


def expand_branches(f, T=None, field=None) -> BranchSet:
    """All deg_y(f) branches of f, each exact or known modulo x^T.

    Accepts either a BivariatePoly plus truncation or an ExpansionRequest.
    """
    if isinstance(f, ExpansionRequest):
        f, T, field = f.poly, f.truncation, f.field
    field = field or f.field
    T = Fraction(T)
    if T <= 0:
        raise ValueError("truncation must be positive")
    m = f.deg_y
    p = field.characteristic
    if p and p <= m:
        raise CharTooSmall(f"characteristic {p} must exceed deg_y f = {m}")
    if not f.is_monic():
        f = BivariatePoly(field, f.terms)
    G0 = [dict() for _ in range(m + 1)]
    for (i, j), c in f.terms.items():
        G0[j][Fraction(i)] = field(c)
    out: list = []
    _node(G0, m, {}, 1, T, field, out)
    return BranchSet(out)


def _node(G, mu, P, n, T, field, out):
    """Emit the mu branches of G (= f(x, P + y)) that have valuation above P's last exponent."""
    vals = {j: min(G[j]) for j in range(mu + 1) if G[j]}
    j0 = min(vals)
    if j0 > 0:
        out.append((PuiseuxSeries(field, P, n, None), j0))
    if mu == j0:
        return
    for edge in lower_chain(vals):
        gamma = edge.gamma
        ja, jb = edge.points[0][1], edge.points[-1][1]
        if gamma >= T:
            out.append((PuiseuxSeries(field, P, n, T), ja - j0))
            return
        phi = _char_poly(G, edge, field)
        roots = field.roots(phi)
        if sum(k for _, k in roots) != ja - jb:
            raise RootOutsideField(
                f"characteristic polynomial {_phi_text(phi)} does not split over {field.spec}",
                poly=phi,
            )
        n2 = lcm(n, gamma.denominator)
        for c, k in roots:
            G2 = _taylor_shift(G, c, gamma, field)
            P2 = dict(P)
            P2[gamma] = c
            _node(G2, k, P2, n2, T, field, out)


def _phi_text(phi) -> str:
    from .render import format_sum, power_text

    return format_sum([(c, power_text("c", k)) for k, c in reversed(list(enumerate(phi))) if c != 0])


def conjugate_closure(primitive: PuiseuxSeries, m: int, ordered: bool = False):
    """{p(omega^i x^(1/m)) : i = 1..m} for a primitive m-th root of unity omega.

    With ``ordered=True`` the list of conjugates is returned in order of i.
    """
    F = primitive.field
    omega = F.primitive_root_of_unity(m)
    base = primitive.with_ramification(m)
    conj = [conjugate(base, omega, i) for i in range(1, m + 1)]
    if ordered:
        return conj
    return BranchSet([(s, 1) for s in conj])


def verify_product(f: BivariatePoly, branches, T) -> bool:
    """Check f == prod (y - p_i) modulo x^T, coefficientwise in y."""
    T = Fraction(T)
    if isinstance(branches, BranchSet):
        series = branches.expanded()
    else:
        series = list(branches)
    if len(series) != f.deg_y:
        return False
    prod = SeriesPoly.product([SeriesPoly.linear_factor(s) for s in series])
    F = f.field
    for j, c in enumerate(prod.coeffs):
        target = PuiseuxSeries(F, {Fraction(i): a for i, a in f.ycoeff(j).items()}, 1, None)
        if not c.equal_mod(target, T):
            return False
    return True
