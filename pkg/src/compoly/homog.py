"""Homogeneous bivariate polynomials over finite fields under the composed product.

A homogeneous f of degree n with nonzero x^n, y^n coefficients is determined by
its associated polynomial w_f(t), f(x, t x) = x^n w_f(t); its branches are
y = a x for the roots a of w_f.  The composed product then reduces to the
univariate composed multiplication of associated polynomials.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from math import gcd

from .bipoly import BivariatePoly, associated_poly, homogenize, is_homogeneous
from .compose_uni import DiamondKind, composed_mul_uni, decompose_uni
from .errors import (
    DegreeBoundExceeded,
    NotCoprime,
    NotFiniteField,
    NotInMh,
    NotMember,
    ZeroElement,
)
from .fields import FiniteField
from .unipoly import is_irreducible

__all__ = [
    "Membership",
    "HomogeneousElement",
    "HomogDecomposition",
    "membership",
    "coefficient_subfield_degree",
    "as_element",
    "homog_compose",
    "linear_element",
    "degree_one_group_ops",
    "GroupFacts",
    "group_table",
    "is_associate",
    "associate_witnesses",
    "homog_decompose",
]


class Membership(enum.Enum):
    NOT_MEMBER = "not_member"
    IN_MH = "in_Mh"
    IN_MHMIN = "in_Mhmin"


@dataclass(frozen=True)
class HomogeneousElement:
    poly: BivariatePoly
    associated: object
    degree: int

    @property
    def field(self):
        return self.poly.field

    def __str__(self):
        return str(self.poly)


def _require_finite(F):
    if not isinstance(F, FiniteField):
        raise NotFiniteField("homogeneous theory needs a finite field")


def membership(f: BivariatePoly, field=None) -> Membership:
    """Classify f as outside M_h, in M_h, or in M_(h,min)."""
    F = field or f.field
    _require_finite(F)
    try:
        w = associated_poly(f)
    except NotInMh:
        return Membership.NOT_MEMBER
    n = w.degree
    if n * n >= F.p:  # 0 < n < sqrt(p)
        return Membership.NOT_MEMBER
    if w.coeff(0) == F.zero or w.lc == F.zero:
        return Membership.NOT_MEMBER
    return Membership.IN_MHMIN if is_irreducible(w) else Membership.IN_MH


def coefficient_subfield_degree(f: BivariatePoly) -> int:
    """Degree over F_p of the smallest subfield holding every coefficient of f."""
    F = f.field
    _require_finite(F)
    for d in range(1, F.e + 1):
        if F.e % d == 0 and all(c ** (F.p**d) == c for c in f.terms.values()):
            return d
    return F.e


def as_element(f) -> HomogeneousElement:
    """Wrap f, insisting on membership in M_(h,min)."""
    if isinstance(f, HomogeneousElement):
        return f
    if membership(f) is not Membership.IN_MHMIN:
        raise NotMember(f"{f} is not in M_h,min")
    w = associated_poly(f)
    return HomogeneousElement(f, w, w.degree)


def _element_from_w(w) -> HomogeneousElement:
    w = w.monic().with_var("t")
    return HomogeneousElement(homogenize(w), w, w.degree)


def homog_compose(f, g) -> HomogeneousElement:
    """f (.) g for coprime-degree members, via w_F = w_f . w_g, homogenized."""
    f, g = as_element(f), as_element(g)
    if f.field != g.field:
        from .errors import BadFieldMismatch

        raise BadFieldMismatch("inputs over different fields")
    m, n = f.degree, g.degree
    if gcd(m, n) != 1:
        raise NotCoprime(f"degrees {m} and {n} are not coprime")
    if m * n >= f.field.p:
        raise DegreeBoundExceeded(f"degree {m * n} must stay below the characteristic {f.field.p}")
    return _element_from_w(composed_mul_uni(f.associated, g.associated))


def linear_element(F, a) -> HomogeneousElement:
    """y - a x."""
    a = F(a)
    if a == F.zero:
        raise ZeroElement("y - 0*x is not in M_h")
    return as_element(BivariatePoly(F, {(0, 1): F.one, (1, 0): -a}))


@dataclass
class GroupFacts:
    a: object
    b: object
    product: HomogeneousElement
    inverse_of_a: HomogeneousElement
    identity: HomogeneousElement
    product_ok: bool
    inverse_ok: bool
    identity_ok: bool

    @property
    def holds(self) -> bool:
        return self.product_ok and self.inverse_ok and self.identity_ok


def degree_one_group_ops(a, b, field) -> GroupFacts:
    """Check (y-ax)(.)(y-bx) = y-abx, (y-ax)(.)(y-a^-1 x) = y-x, and y-x acting as identity."""
    F = field
    a, b = F(a), F(b)
    if a == F.zero or b == F.zero:
        raise ZeroElement("degree-one elements need nonzero constants")
    fa, fb = linear_element(F, a), linear_element(F, b)
    e = linear_element(F, 1)
    prod = homog_compose(fa, fb)
    inv = linear_element(F, F.one / a)
    return GroupFacts(
        a,
        b,
        prod,
        inv,
        e,
        product_ok=prod.poly == linear_element(F, a * b).poly,
        inverse_ok=homog_compose(fa, inv).poly == e.poly,
        identity_ok=homog_compose(fa, e).poly == fa.poly and homog_compose(e, fa).poly == fa.poly,
    )


def group_table(field) -> dict:
    """Exhaustive check that a -> y - a x is an isomorphism F_q^* -> M_(h,min,1)."""
    F = field
    _require_finite(F)
    units = [c for c in F.elements() if c != F.zero]
    elems = {F.key(a): linear_element(F, a) for a in units}

    def op(a, b):
        return homog_compose(elems[F.key(a)], elems[F.key(b)]).poly

    table = {(F.key(a), F.key(b)): op(a, b) for a in units for b in units}
    e = elems[F.key(F.one)].poly
    hom = all(table[(F.key(a), F.key(b))] == elems[F.key(a * b)].poly for a in units for b in units)
    ident = all(table[(F.key(a), F.key(F.one))] == elems[F.key(a)].poly for a in units)
    inv = all(any(table[(F.key(a), F.key(b))] == e for b in units) for a in units)
    comm = all(table[(F.key(a), F.key(b))] == table[(F.key(b), F.key(a))] for a in units for b in units)
    def tab(a, b):
        return as_element(table[(F.key(a), F.key(b))])

    assoc = all(
        homog_compose(tab(a, b), elems[F.key(c)]).poly == homog_compose(elems[F.key(a)], tab(b, c)).poly
        for a in units
        for b in units
        for c in units
    )
    return {
        "order": len(units),
        "homomorphism": hom,
        "identity": ident,
        "inverses": inv,
        "commutative": comm,
        "associative": assoc,
    }


def associate_witnesses(f, g) -> list:
    """Every a in F_q^* with f = (y - a x) (.) g, in element order."""
    f, g = as_element(f), as_element(g)
    if f.degree != g.degree or f.field != g.field:
        return []
    F = f.field
    return [
        a
        for a in F.elements()
        if a != F.zero and homog_compose(linear_element(F, a), g).poly == f.poly
    ]


def is_associate(f, g):
    """a in F_q^* with f = (y - a x) (.) g (the first in element order), or None."""
    w = associate_witnesses(f, g)
    return w[0] if w else None


@dataclass
class HomogDecomposition:
    factors: list
    unit_certificates: list = dc_field(default_factory=list)

    @property
    def degrees(self):
        return [h.degree for h in self.factors]


def homog_decompose(F_, budget=None) -> HomogDecomposition:
    """Factor F into indecomposables under (.) by decomposing w_F univariately."""
    F_ = as_element(F_)
    K = F_.field
    if F_.degree >= K.p:
        raise DegreeBoundExceeded(f"degree {F_.degree} must stay below the characteristic {K.p}")
    kwargs = {} if budget is None else {"budget": budget}
    res = decompose_uni(F_.associated, DiamondKind.MULTIPLICATION, **kwargs)
    factors = [_element_from_w(w) for w in res.factors]
    certs = [
        {"factors": [_element_from_w(w) for w in c.factors], "units": list(c.units)}
        for c in res.certificates
    ]
    return HomogDecomposition(factors, certs)
