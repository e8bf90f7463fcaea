from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypershaf.forms import BinaryForm, GL2Matrix, Poly, disc_form, homogenize, pullback
from hypershaf.invariants import (
    c4_c6,
    g1_fingerprint,
    ic_ratios,
    igusa_clebsch,
    is_isomorphic_g1,
    j_invariant,
    power_free_part,
    quartic_j,
)
from hypershaf.numberfield import QQ


def P(*cs):
    return Poly(QQ, [Fraction(c) for c in cs])


def test_c4_c6_and_j():
    f = P(0, -1, 0, 1)
    assert c4_c6(f) == (48, 0)
    assert j_invariant(f) == 1728
    assert j_invariant(P(1, 0, 0, 1)) == 0
    # a2 = 1, a4 = 3, a6 = 1 against the formulas by hand
    c4, c6 = c4_c6(P(1, 3, 1, 1))
    assert (c4, c6) == (16 - 144, -64 + 864 - 864)


def test_g1_fingerprints():
    assert g1_fingerprint(P(0, -1, 0, 1)) == ("1728", "quartic", "3")
    assert g1_fingerprint(P(0, 1, 0, 1)) == ("1728", "quartic", "-3")
    assert g1_fingerprint(P(1, 0, 0, 1)) == ("0", "sextic", "-864")
    # quadratic twists by 2 differ, twists by squares do not
    f = P(1, -2, 1, 1)
    F2 = P(1 * 8, -2 * 4, 1 * 2, 1)  # twist by 2: a_k -> 2^(3-k) a_k
    F4 = P(1 * 64, -2 * 16, 1 * 4, 1)  # twist by 4 = 2^2
    assert g1_fingerprint(f) != g1_fingerprint(F2)
    assert g1_fingerprint(f) == g1_fingerprint(F4)


def test_power_free_part():
    assert power_free_part(Fraction(-12), 2) == -3
    assert power_free_part(Fraction(1, 8), 2) == 2
    assert power_free_part(Fraction(-32), 4) == -2
    assert power_free_part(Fraction(-64), 6) == -1
    with pytest.raises(ValueError):
        power_free_part(Fraction(0), 2)


def test_is_isomorphic_g1():
    assert is_isomorphic_g1((1, 2), (16, 128))
    assert not is_isomorphic_g1((-1, 0), (1, 0))
    assert is_isomorphic_g1((-1, 0), (-4, 0)) is False  # 4 is not a fourth power
    assert is_isomorphic_g1((-1, 0), (-16, 0))
    assert is_isomorphic_g1((0, 1), (0, 64))
    assert not is_isomorphic_g1((0, 1), (0, -1))


def test_quartic_j_invariance():
    # invariant under translation x -> x + 1
    f = P(3, -1, 2, 0, 1)
    g = f.shift(QQ(1))
    assert quartic_j(f) == quartic_j(g)
    # homogeneous scaling (x -> 2x, y scaled) keeps j
    h = Poly(QQ, [c * QQ(2) ** i for i, c in enumerate(f.coeffs)])
    assert quartic_j(h) == quartic_j(f)


def test_igusa_clebsch_frozen():
    assert igusa_clebsch(P(7, 1, 0, -2, 0, 3, 1)) == (-1536, 76824, -40203396, 1782666776)
    assert igusa_clebsch(P(0, -1, 0, 0, 0, 1)) == (-40, -80, 320, -256)


sextics = st.lists(st.integers(-4, 4), min_size=7, max_size=7)


@settings(max_examples=25, deadline=None)
@given(sextics, st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)))
def test_ic_ratios_are_gl2_invariant(cs, ent):
    if cs[0] == 0 and cs[-1] == 0:
        cs[0] = 1
    F = BinaryForm(QQ, cs)
    if not disc_form(F):
        return
    M = GL2Matrix.of(QQ, *ent)
    if not M.det:
        return
    G = pullback(M, F).scale(QQ(3))
    assert ic_ratios(igusa_clebsch(F)) == ic_ratios(igusa_clebsch(G))


def test_igusa_clebsch_quintic_equals_homogenized():
    f = P(1, 2, 0, -1, 0, 1)
    assert igusa_clebsch(f) == igusa_clebsch(homogenize(f, 6))
