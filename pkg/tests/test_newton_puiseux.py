import random
from fractions import Fraction as Fr
from math import lcm

import pytest
from hypothesis import given, strategies as st

from compoly.bipoly import BivariatePoly, newton_polygon
from compoly.errors import CharTooSmall, RootOutsideField
from compoly.fields import QQ, CyclotomicField, FiniteField
from compoly.newton_puiseux import ExpansionRequest, conjugate_closure, expand_branches, verify_product
from compoly.parser import parse_bivariate
from compoly.puiseux import PuiseuxSeries as PS, conjugate, series_key
from conftest import REF_F, REF_G
from generators import random_factor, random_split_monic

K24 = CyclotomicField(24)


def keys(series):
    return sorted(series_key(s) for s in series)


def test_reference_f_branches(ref_pair):
    f, _, p, _ = ref_pair
    bs = expand_branches(f, 2)
    assert all(m == 1 for _, m in bs)
    assert keys(bs.expanded()) == keys(conjugate_closure(p, 4, ordered=True))
    assert any(s == p for s in bs.expanded())


def test_reference_g_branches(ref_pair):
    _, g, _, q = ref_pair
    bs = expand_branches(g, 2)
    assert keys(bs.expanded()) == keys(conjugate_closure(q, 6, ordered=True))
    assert PS(K24, {Fr(3, 2): 1, Fr(5, 3): 1}) in bs.expanded()


def test_expansion_request_and_linear_input():
    f = parse_bivariate("y - 3 - x^2 + 5*x^7", QQ)
    bs = expand_branches(ExpansionRequest(f, 8))
    assert [(s.terms, m) for s, m in bs] == [({Fr(0): 3, Fr(2): 1, Fr(7): -5}, 1)]
    low = expand_branches(f, 4).expanded()[0]
    assert low.terms == {Fr(0): 3, Fr(2): 1}


def test_multiplicity_and_exact_roots():
    bs = expand_branches(parse_bivariate("(y - x)^2*(y + x^2)", QQ), 3)
    got = sorted((series_key(s), m) for s, m in bs)
    assert got == sorted([(series_key(PS(QQ, {1: 1})), 2), (series_key(PS(QQ, {2: -1})), 1)])


def test_deeper_ramification():
    bs = expand_branches(parse_bivariate("y^2 - 2*x^2*y + x^4 - x^5", QQ), 3)
    assert sorted(s.terms[Fr(5, 2)] for s in bs.expanded()) == [-1, 1]


def test_field_errors():
    with pytest.raises(RootOutsideField):
        expand_branches(parse_bivariate("y^2 - 3*x", FiniteField(7)), 3)
    with pytest.raises(RootOutsideField):
        expand_branches(parse_bivariate("y^2 + x", QQ), 3)
    with pytest.raises(CharTooSmall):
        expand_branches(parse_bivariate("y^3 - x", FiniteField(3)), 3)


def test_finite_field_expansion():
    F7 = FiniteField(7)
    f = parse_bivariate("y^2 - x - x^2", F7)
    bs = expand_branches(f, 4)
    assert verify_product(f, bs, 4)
    assert sorted(int(s.coeff(Fr(1, 2)).value) for s in bs.expanded()) == [1, 6]


# -- conjugate closure / verify_product ------------------------------------------


def test_conjugate_closure_examples(ref_pair):
    _, _, p, _ = ref_pair
    w = K24.primitive_root_of_unity(4)
    ordered = conjugate_closure(p, 4, ordered=True)
    assert ordered == [conjugate(p, w, i) for i in range(1, 5)]
    assert conjugate_closure(p, 1, ordered=True) == [p]
    h = PS(QQ, {Fr(1, 2): 1})
    assert keys(conjugate_closure(h, 2, ordered=True)) == keys([h, -h])


def test_verify_product_examples(ref_pair):
    f, _, p, _ = ref_pair
    assert verify_product(f, conjugate_closure(p, 4), 3)
    y2x = parse_bivariate("y^2 - x", QQ)
    h = PS(QQ, {Fr(1, 2): 1})
    assert verify_product(y2x, [h, -h], 5)
    assert not verify_product(y2x, [h, h], 5)
    assert not verify_product(y2x, [h], 5)


# -- properties ------------------------------------------------------------------


@given(st.integers(0, 10**6), st.sampled_from([2, 3, Fr(7, 2)]))
def test_product_identity_on_random_inputs(seed, T):
    f = random_split_monic(random.Random(seed), K24, 4)
    bs = expand_branches(f, T)
    assert sum(m for _, m in bs) == f.deg_y
    assert verify_product(f, bs, T)
    for s in bs.expanded():
        assert all(e >= 0 for e in s.terms)  # power-series input: no negative exponents


@given(st.integers(2, 4), st.integers(0, 10**6))
def test_irreducible_branch_sets_are_conjugation_closed(e, seed):
    # y^e - s c^e x^r (1 + b) with gcd(e, r) = 1 is irreducible over Q(zeta_24)
    rng = random.Random(seed)
    while True:
        f = random_factor(rng, K24, e)
        if newton_polygon(f).edges[0].gamma.denominator == e:
            break
    bs = expand_branches(f, 4)
    series = bs.expanded()
    n = series[0].ramification
    w = K24.primitive_root_of_unity(n)
    assert keys(series) == keys([conjugate(series[0], w, i) for i in range(n)])
    slopes = lcm(*(ed.gamma.denominator for ed in newton_polygon(f).edges))
    for s in series:
        assert slopes % s.ramification == 0


@given(st.integers(0, 10**6))
def test_finite_field_ramification_avoids_characteristic(seed):
    F = FiniteField(11)
    rng = random.Random(seed)
    terms = {(0, 2): 1, (rng.randint(1, 5), 0): rng.randint(1, 10)}
    f = BivariatePoly(F, terms)
    try:
        bs = expand_branches(f, 5)
    except RootOutsideField:
        return
    for s in bs.expanded():
        assert s.ramification % 11
    assert verify_product(f, bs, 5)


def test_reference_inputs_parse_to_expected_support():
    assert set(parse_bivariate(REF_G, QQ).terms) == {(0, 6), (3, 4), (5, 3), (6, 2), (8, 1), (9, 0), (10, 0)}
    assert parse_bivariate(REF_F, QQ).deg_y == 4
