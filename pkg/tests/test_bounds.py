from fractions import Fraction

import mpmath
import pytest

from hypershaf.bounds import (
    BoundInputs,
    MissingConstantError,
    T_guarantees,
    corollary_count_bound,
    count_via_heightbox,
    effgen_bound,
    faltings_bound,
    log_cap,
    mu,
    omega_evgy,
    omega_gyoryyu,
    propeff_i_bound,
    propgeom_disc_bound,
    regulator_bound,
    theorem_bound_i,
    theorem_bound_ii,
    wp_count_bound,
    wp_count_inner,
)
from hypershaf.numberfield import QQ, ExactLog, NumberField, PlaceSet

Q2 = BoundInputs.from_places(PlaceSet.of(QQ, [2]), 1)
K5 = BoundInputs.from_places(PlaceSet.of(NumberField(5), [3]), 2, c6=3, c7=1, kappa=1)


def _oracle_theorem_i():
    with mpmath.workdps(80):
        return 360 * mpmath.log(72) + 18 * mpmath.log(2)


def test_theorem_i_rational_two():
    v = theorem_bound_i(Q2)
    with mpmath.workdps(80):
        assert v.lo <= _oracle_theorem_i() <= v.hi
        assert v.rel_width < mpmath.mpf(10) ** -20
        l10 = v.log10()
        assert abs(mpmath.mpf(l10.a) - mpmath.mpf("674.0582386372083")) < 1e-12


def test_theorem_i_empty_S():
    v = theorem_bound_i(BoundInputs.from_places(PlaceSet.of(QQ, []), 1))
    # nu = 36, sigma = 1: 5 * 36 * log 36
    with mpmath.workdps(60):
        x = 180 * mpmath.log(36)
    assert v.lo <= x <= v.hi
    assert float(v.log10().a) == pytest.approx(280.1344501381117, rel=1e-14)


def test_inputs_from_places():
    assert Q2.nu == 36 and Q2.N_S == 2 and Q2.s == 1 and Q2.h_S == 1
    K = NumberField(5)
    inp = BoundInputs.from_places(PlaceSet.of(K, []), 1)
    assert (inp.d, inp.D_K, inp.h_S, inp.nu) == (2, 20, 2, 144)
    assert mu(3, 1) == 18


def _all_formulas(prec):
    T = T_guarantees(K5, prec)
    return [
        theorem_bound_i(Q2, prec),
        theorem_bound_i(K5, prec),
        theorem_bound_ii(K5, prec),
        corollary_count_bound(K5, prec),
        wp_count_bound(Q2, prec),
        wp_count_inner(K5, prec),
        faltings_bound(Q2, prec),
        count_via_heightbox(theorem_bound_i(Q2, prec), 1, 1, prec),
        propgeom_disc_bound(2, 3, 2, 20, [2, 3, 3], prec),
        effgen_bound(3, 2, 20, [2, 3, 3], prec),
        regulator_bound(2, 20, [2, 3], prec),
        omega_gyoryyu(60, 2, 3, 18, kappa=1, n_T=[2, 3, 3], D_K=20, prec=prec),
        omega_evgy(5, 1, 1, 2, 1, c6=3, c7=1, prec=prec),
        propeff_i_bound(3, 1, 1, 2, 1, ExactLog(Fraction(1), Fraction(64)), prec),
        T["log_N_T_max"],
    ]


def test_high_precision_lands_inside():
    lo = _all_formulas(128)
    hi = _all_formulas(256)
    for a, b in zip(lo, hi):
        assert a.formula == b.formula
        assert a.encloses(b), a.formula


def test_missing_constants():
    with pytest.raises(MissingConstantError):
        theorem_bound_ii(Q2)
    with pytest.raises(MissingConstantError):
        omega_gyoryyu(6, 1, 1, 2, n_T=[2])
    with pytest.raises(MissingConstantError):
        omega_evgy(3, 1, 1, 2, 1)


def test_illustrative_marks_uncertified():
    inp = BoundInputs.from_places(PlaceSet.of(QQ, [2]), 1, c6=3, c7=1, illustrative=True)
    v = theorem_bound_ii(inp)
    assert not v.certified and v.notes


def test_T_guarantees_match_pid_extension():
    from hypershaf.classgroup import extend_to_pid

    K = NumberField(5)
    S = PlaceSet.of(K, [])
    inp = BoundInputs.from_places(S, 1)
    G = T_guarantees(inp)
    T = extend_to_pid(K, S).with_places_above(2)
    assert len(T) <= G["t_max"]
    assert T.N <= G["N_T_max"]
    assert T.p <= G["p_T_max"]


def test_log_cap():
    assert log_cap(ExactLog(Fraction(1), Fraction(4))) == 4
    assert log_cap(ExactLog(Fraction(1, 2), Fraction(17))) == 4
    assert log_cap(Fraction(14, 10)) == 4  # e^1.4 = 4.055
    assert log_cap(0.5) == 1


def test_bad_inputs():
    with pytest.raises(ValueError):
        BoundInputs(g=0)
    with pytest.raises(ValueError):
        BoundInputs(g=1, c6=2)


def test_json_rendering():
    js = theorem_bound_i(Q2).to_json()
    assert js["log10"]["lo"].startswith("674.05823863720830719")
    assert js["precision_bits"] == 128 and js["certified"]
