from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hypershaf.forms import (
    BinaryForm,
    GL2Matrix,
    Poly,
    d_T_invariant,
    disc_form,
    disc_int,
    disc_poly,
    disc_transform_check,
    homogenize,
    pullback,
    resultant,
    separable,
)
from hypershaf.numberfield import QQ, NumberField, PlaceSet

X = sympy.Symbol("X")
FIELDS = [QQ, NumberField(1), NumberField(5), NumberField(23)]


def _sympy_disc(cs):
    return int(sympy.discriminant(sum(c * X**i for i, c in enumerate(cs)), X))


int_polys = st.lists(st.integers(-20, 20), min_size=2, max_size=8).filter(lambda cs: cs[-1] != 0)


@settings(max_examples=150, deadline=None)
@given(int_polys)
def test_disc_int_matches_sympy(cs):
    assert disc_int(cs) == _sympy_disc(cs)


def test_disc_known_values():
    assert disc_int([-1, 0, 1]) == 4  # x^2 - 1
    assert disc_int([0, -1, 0, 1]) == 4  # x^3 - x
    assert disc_int([1, 0, 0, 1]) == -27  # x^3 + 1
    assert disc_int([0, -1, 0, 0, 0, 1]) == -256  # x^5 - x
    assert disc_poly(Poly.from_ints(QQ, [0, -1, 0, 1])) == QQ(4)


def test_disc_quadratic_field_root_product():
    # over Q(i): f = (X - i)(X + 1)(X - 2 - i); Delta = prod (r_i - r_j)^2
    K = NumberField(1)
    i = K(0, 1)
    roots = [i, K(-1), K(2, 1)]
    f = Poly(K, [K.one])
    for r in roots:
        f = f * Poly(K, [-r, K.one])
    expected = K.one
    for a in range(3):
        for b in range(a + 1, 3):
            expected = expected * (roots[a] - roots[b]) ** 2
    assert disc_poly(f) == expected


def test_disc_rational_fraction_coefficients():
    f = Poly(QQ, [Fraction(1, 2), 0, Fraction(-1, 3), 1])
    L = 6
    ints = [int(c.a * L) for c in f.coeffs]
    assert disc_poly(f) == QQ(Fraction(_sympy_disc(ints), L**4))


def test_resultant_matches_sympy():
    f = Poly.from_ints(QQ, [3, -1, 0, 2])
    g = Poly.from_ints(QQ, [1, 4, 1])
    expected = sympy.resultant(2 * X**3 - X + 3, X**2 + 4 * X + 1, X)
    assert resultant(f, g) == QQ(int(expected))


def _elt(K, t):
    a, b = t
    return K(a) if K.is_rational else K(a, b)


small = st.tuples(st.integers(-6, 6), st.integers(-3, 3))


@st.composite
def form_and_matrix(draw):
    K = draw(st.sampled_from(FIELDS))
    n = draw(st.integers(2, 6))
    cs = [_elt(K, draw(small)) for _ in range(n + 1)]
    if not any(cs):
        cs[0] = K.one
    ents = [_elt(K, draw(small)) for _ in range(4)]
    M = GL2Matrix(*ents)
    if not M.det:
        M = GL2Matrix.of(K, 1, 1, 0, 1)
    alpha = _elt(K, draw(small)) or K(2)
    return BinaryForm(K, cs), M, alpha


@settings(max_examples=150, deadline=None)
@given(form_and_matrix())
def test_pullback_and_scaling_laws(data):
    G, M, alpha = data
    for rep in disc_transform_check(M, G, alpha):
        assert rep.ok, rep


@settings(max_examples=60, deadline=None)
@given(form_and_matrix())
def test_pullback_is_a_right_action(data):
    G, M, _ = data
    N = GL2Matrix.of(G.field, 1, 2, -1, 3)
    assert pullback(N, pullback(M, G)) == pullback(M @ N, G)


def test_pullback_evaluates_substitution():
    G = BinaryForm(QQ, [1, 0, -1])  # X^2 - Y^2
    M = GL2Matrix.of(QQ, 1, 1, 0, 1)  # X -> X + Y, Y -> Y
    assert pullback(M, G).coeffs == (QQ(1), QQ(2), QQ(0))


def test_dehomogenization_and_root_at_infinity():
    f = Poly.from_ints(QQ, [5, -2, 0, 3])
    assert disc_form(homogenize(f, 3)) == disc_poly(f)
    assert disc_form(homogenize(f, 4)) == f.lc**2 * disc_poly(f)
    assert homogenize(f, 3).dehomogenize() == f


def test_separable():
    assert separable(Poly.from_ints(QQ, [0, -1, 0, 1]))
    assert not separable(Poly.from_ints(QQ, [1, 2, 1]))


def test_d_T_invariant_under_gl2_over_OT():
    # x^3 - x scaled by 6: content 6 cancels in Delta / content^(2n-2)
    T = PlaceSet.of(QQ, [2])
    G = BinaryForm(QQ, [1, 0, -1, 0])
    G6 = G.scale(QQ(6))
    assert d_T_invariant(G, T) == d_T_invariant(G6, T) == []
    H = BinaryForm(QQ, [1, 0, 0, 3])  # X^3 + 3Y^3: Delta = -243 = -3^5
    out = d_T_invariant(H, T)
    assert [(P.ell, e) for P, e in out] == [(3, 5)]
    M = GL2Matrix.of(QQ, 1, 3, 2, 7)  # det 1
    assert d_T_invariant(pullback(M, H), T) == out
    M2 = GL2Matrix.of(QQ, 2, 0, 0, 1)  # det 2, a T-unit
    assert d_T_invariant(pullback(M2, H), T) == out


def test_forms_reject_bad_input():
    with pytest.raises(ValueError):
        BinaryForm(QQ, [0, 0, 0])
    with pytest.raises(ValueError):
        pullback(GL2Matrix.of(QQ, 1, 2, 2, 4), BinaryForm(QQ, [1, 0, 1]))
    with pytest.raises(ValueError):
        disc_int([1, 0, 0])
