from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypershaf.forms import GL2Matrix, Poly, disc_form, homogenize
from hypershaf.numberfield import QQ, NumberField, PlaceSet, poly_height, valuation
from hypershaf.weierstrass import (
    HyperellipticEquation,
    change_variables,
    check_window,
    clear_denominators,
    from_equation,
    good_reduction_at,
    make_model,
    model_discriminant,
    model_discriminant_via_form,
    odd_degree_has_rational_wp,
    rational_roots,
)

T2 = PlaceSet.of(QQ, [2])


def P(*cs):
    return Poly(QQ, [Fraction(c) for c in cs])


def test_model_discriminant_cubic():
    # y^2 = x^3 - x: 2^4 * 4 = 64
    f = P(0, -1, 0, 1)
    assert model_discriminant(f, None, 1) == QQ(64)
    assert model_discriminant_via_form(f, 1) == QQ(64)


def test_model_discriminant_even_degree_matches_form():
    f = P(1, 0, 0, 0, 1)  # x^4 + 1
    assert model_discriminant(f, None, 1) == QQ(2**4) * disc_form(homogenize(f, 4))


def test_f2_completes_square():
    # y^2 + y = x^3 - x  <->  y^2 = x^3 - x + 1/4
    eq = HyperellipticEquation(1, P(0, -1, 0, 1), P(1))
    m = from_equation(eq)
    assert m.f == P(Fraction(1, 4), -1, 0, 1)
    # classical: y^2 + y = x^3 - x has discriminant 37
    assert m.disc == QQ(37)


def test_window():
    check_window(P(0, 0, 0, 1), None, 1)
    with pytest.raises(ValueError):
        check_window(P(0, 0, 1), None, 1)
    with pytest.raises(ValueError):
        check_window(P(*[1] * 6), None, 1)
    with pytest.raises(ValueError):
        check_window(P(0, 0, 0, 1), None, 0)


def test_change_variables_frozen():
    m = make_model(P(0, -1, 0, 1), 1)
    phi = GL2Matrix.of(QQ, Fraction(1, 4), 0, 0, 1)
    new = change_variables(m, phi, Fraction(1, 8))
    assert new.f == P(0, -16, 0, 1)
    assert new.disc == QQ(262144)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.integers(-5, 5), min_size=3, max_size=3),
    st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)),
    st.integers(1, 5),
)
def test_change_variables_law_random(cs, ent, lam):
    f = P(*cs, 1)
    if not model_discriminant(f, None, 1):
        return
    M = GL2Matrix.of(QQ, *ent)
    if not M.det:
        return
    m = make_model(f, 1)
    try:
        new = change_variables(m, M, lam)
    except ValueError:
        return  # degree fell out of the window
    # the law is asserted inside; check it again from outside
    g = 1
    assert m.disc == QQ(lam) ** (4 * (2 * g + 1)) * M.det ** (-2 * (g + 1) * (2 * g + 1)) * new.disc


def test_clear_denominators_frozen():
    omega, f = clear_denominators(P(0, Fraction(1, 4), 0, 1), 1, T2)
    assert omega == QQ(4)
    assert f == P(0, 64, 0, 1)


def test_clear_denominators_rejects_outside_T():
    with pytest.raises(ValueError):
        clear_denominators(P(0, Fraction(1, 3), 0, 1), 1, T2)


def test_clear_denominators_quadratic_field():
    K = NumberField(1)
    T = PlaceSet.of(K, [2])
    f = Poly(K, [K(0, Fraction(1, 2)), K(1), K(0), K(1)])
    omega, out = clear_denominators(f, 1, T)
    assert T.is_unit(omega)
    assert all(K.is_integral(c) for c in out.coeffs)
    assert poly_height(out.coeffs) <= poly_height(f.coeffs).scale(4 * 2 * 9)


def test_good_reduction_at():
    m = make_model(P(0, -1, 0, 1), 1)
    q = QQ.primes_above(3)[0]
    two = QQ.primes_above(2)[0]
    assert good_reduction_at(m, q)
    assert not good_reduction_at(m, two)
    assert valuation(m.disc, two) == 6


def test_rational_roots_and_wp():
    assert rational_roots(P(-6, 11, -6, 1)) == [1, 2, 3]
    assert rational_roots(P(6, -5, 1, 0)) == [2, 3]
    assert rational_roots(P(1, 0, 1)) == []
    assert rational_roots(P(0, 0, -2, 3)) == [0, Fraction(2, 3)]
    assert odd_degree_has_rational_wp(make_model(P(1, 0, 0, 1), 1)) == "yes"
    assert odd_degree_has_rational_wp(make_model(P(1, 0, 0, 0, 1), 1)) == "unknown"
    assert odd_degree_has_rational_wp(make_model(P(-1, 0, 0, 0, 1), 1)) == "yes"


def test_make_model_integrality():
    with pytest.raises(ValueError):
        make_model(P(Fraction(1, 3), 0, 0, 1), 1, T2)
    m = make_model(P(Fraction(1, 2), 0, 0, 1), 1, T2)
    assert m.genus == 1
