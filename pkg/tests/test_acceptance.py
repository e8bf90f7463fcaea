"""Acceptance suite: one test per criterion, each printing a pass/fail line."""

import random
import time
from fractions import Fraction

import mpmath

from hypershaf import bounds as B
from hypershaf.classgroup import class_number, extend_to_pid_report, s_class_number, sunit_group
from hypershaf.enumerate import (
    SearchSpec,
    cells,
    enumerate_curves,
    merge_catalogs,
    oracle_enumerate_g1,
    short_form,
)
from hypershaf.forms import BinaryForm, GL2Matrix, Poly, disc_form, disc_poly, pullback
from hypershaf.invariants import is_isomorphic_g1
from hypershaf.laws import verify_laws
from hypershaf.numberfield import QQ, ExactLog, NumberField, PlaceSet, height, poly_height, valuation
from hypershaf.reduction import UnitBasisU, height_within, sl2_reduce_form, u_reduce, unipotent_reduce
from hypershaf.sunits import solve_sunit_equation
from hypershaf.weierstrass import clear_denominators

from .oracles import sunit_double_loop


# 1 -------------------------------------------------------------------------


def test_criterion_1_transformation_laws(acceptance):
    t0 = time.perf_counter()
    rep = verify_laws(trials=1000, seed=20261015)
    secs = time.perf_counter() - t0
    counts = {k: v["checked"] for k, v in rep["laws"].items()}
    ok = rep["violations"] == 0 and all(c == 1000 for c in counts.values()) and len(counts) == 4 and secs < 60
    acceptance(1, "transformation laws, 4 x 1000 exact checks", ok, f"violations={rep['violations']}, {secs:.1f}s")
    assert ok, rep["failures"]


# 2 -------------------------------------------------------------------------


def _nt_bound_holds(N_T: int, N_S: int, D_K: int, h_S: int) -> bool:
    # N_T <= N_S * D_K^(lambda_S / 2), lambda_S = log2 h_S
    if h_S & (h_S - 1) == 0:
        lam = h_S.bit_length() - 1
        return N_T * N_T <= N_S * N_S * D_K**lam
    with B.iv_context(256) as ctx:
        lam = ctx.log(h_S) / ctx.log(2)
        rhs = ctx.mpf(N_S) * ctx.exp(lam / 2 * ctx.log(D_K))
        return N_T <= rhs.a


def test_criterion_2_pid_extension(acceptance):
    bad = []
    slowest = 0.0
    for d in (5, 23, 14):
        K = NumberField(d)
        DK = K.disc_abs
        for extra in ([], [2], [3], [5], [7], [2, 3], [3, 7]):
            S = PlaceSet.of(K, extra)
            t0 = time.perf_counter()
            rep = extend_to_pid_report(K, S)
            slowest = max(slowest, time.perf_counter() - t0)
            T = rep.T
            hS = s_class_number(K, S)
            lam_floor = hS.bit_length() - 1  # floor(log2 h_S)
            checks = [
                s_class_number(K, T) == 1,
                all(P in T for P in S),
                len(rep.added) <= lam_floor,
                all(P.norm * P.norm <= DK for P in rep.added),
                _nt_bound_holds(T.N, S.N, DK, hS),
                rep.ok,
            ]
            if not all(checks):
                bad.append((d, extra, checks))
    ok = not bad and slowest < 1.0
    acceptance(2, "PID extension guarantees for Q(sqrt-5), Q(sqrt-23), Q(sqrt-14)", ok, f"slowest {slowest * 1000:.1f} ms")
    assert class_number(NumberField(14)) == 4
    assert ok, bad


# 3 -------------------------------------------------------------------------


def _every_formula(prec):
    q2 = B.BoundInputs.from_places(PlaceSet.of(QQ, [2]), 1)
    k = B.BoundInputs.from_places(PlaceSet.of(NumberField(23), [3]), 2, c6=3, c7=2, kappa=Fraction(3, 2))
    k5 = B.BoundInputs.from_places(PlaceSet.of(NumberField(5), []), 1, c6=5, c7=1)
    ti = B.theorem_bound_i(q2, prec)
    return [
        ti,
        B.theorem_bound_i(k, prec),
        B.theorem_bound_ii(k, prec),
        B.theorem_bound_ii(k5, prec),
        B.corollary_count_bound(k, prec),
        B.wp_count_bound(q2, prec),
        B.wp_count_bound(k, prec),
        B.wp_count_inner(k5, prec),
        B.faltings_bound(k, prec),
        B.count_via_heightbox(ti, 1, 1, prec),
        B.count_via_heightbox(Fraction(7, 3), 2, 2, prec),
        B.propgeom_disc_bound(1, 2, 1, 1, [2, 3], prec),
        B.propgeom_disc_bound(2, 3, 2, 23, [2, 3, 3], prec),
        B.effgen_bound(4, 2, 23, [2, 2, 3], prec),
        B.regulator_bound(1, 1, [2, 3], prec),
        B.regulator_bound(2, 23, [2, 3], prec),
        B.omega_gyoryyu(6, 1, 1, 2, kappa=1, n_T=[2], prec=prec),
        B.omega_gyoryyu(60, 2, 2, 6, kappa=2, n_T=[2, 3], D_K=23, prec=prec),
        B.omega_gyoryyu(6, 1, 1, 2, kappa=1, R_bound=100, prec=prec),
        B.omega_evgy(4, 2, 2, 3, 23, c6=3, c7=1, prec=prec),
        B.propeff_i_bound(3, 1, 1, 2, 1, ExactLog(Fraction(1), Fraction(64)), prec),
        B.propeff_i_bound(4, 2, 2, 6, 23, 5, prec),
        B.T_guarantees(k, prec)["log_N_T_max"],
    ]


def test_criterion_3_certified_bounds(acceptance):
    v = B.theorem_bound_i(B.BoundInputs.from_places(PlaceSet.of(QQ, [2]), 1), 128)
    with mpmath.workdps(100):
        truth = 360 * mpmath.log(72) + 18 * mpmath.log(2)
        contains = v.lo <= truth <= v.hi
        l10 = truth / mpmath.log(10)
        width_ok = v.rel_width < mpmath.mpf(10) ** -20
    lo, hi = _every_formula(128), _every_formula(256)
    nested = [a.formula for a, b in zip(lo, hi) if not (a.encloses(b) and a.formula == b.formula)]
    ok = contains and width_ok and not nested and abs(l10 - mpmath.mpf("674.06")) < 0.01
    acceptance(
        3,
        "certified bound evaluation",
        ok,
        f"log10={mpmath.nstr(l10, 12)}, rel width={mpmath.nstr(v.rel_width, 3)}, {len(lo)} formulas nested",
    )
    assert ok, nested


# 4 -------------------------------------------------------------------------


def test_criterion_4_u_reduction(acceptance):
    rng = random.Random(4)
    primes_all = [2, 3, 5, 7]
    violations = []
    bases = {}
    for i in range(1000):
        primes = sorted(rng.sample(primes_all, rng.randint(1, 4)))
        g = rng.choice((1, 2, 3))
        odd = rng.random() < 0.6
        key = (tuple(primes), g, odd)
        if key not in bases:
            T = PlaceSet.of(QQ, primes)
            bases[key] = (T, UnitBasisU(sunit_group(QQ, T), g, odd))
        T, basis = bases[key]
        x = Fraction(rng.choice((1, -1)))
        for p in primes:
            x *= Fraction(p) ** rng.randint(-400, 400)
        D = QQ(x)
        r = u_reduce(D, basis)
        m = basis.m
        in_window = all(0 <= e < m for e in r.exponents) and [valuation(r.delta, P) for P in T.sorted()] == list(r.exponents)
        recon = r.delta == r.omega**m * D
        pb = B.propgeom_disc_bound(g, len(T), 1, 1, [P.norm for P in T.sorted()])
        bounded = height_within(height(r.delta), pb)
        if not (in_window and recon and bounded and r.bound_checked):
            violations.append((i, primes, g, odd, str(x)))
    ok = not violations
    acceptance(4, "U-reduction over T in {2,3,5,7}, 1000 cases", ok, f"violations={len(violations)}")
    assert ok, violations[:5]


# 5 -------------------------------------------------------------------------


def _random_sl2(rng):
    M = GL2Matrix.identity(QQ)
    for _ in range(rng.randint(1, 6)):
        if rng.random() < 0.5:
            M = M @ GL2Matrix.of(QQ, 1, rng.randint(-6, 6), 0, 1)
        else:
            M = M @ GL2Matrix.of(QQ, 0, -1, 1, 0)
    return M


def test_criterion_5_reduction_idempotence_and_orbits(acceptance):
    rng = random.Random(5)
    bad = []
    n_uni = n_sl2 = 0
    while n_uni < 1000:
        d = rng.randint(3, 7)
        f = Poly(QQ, [QQ(rng.randint(-40, 40)) for _ in range(d)] + [QQ(1)])
        D = disc_poly(f)
        if not D:
            continue
        n_uni += 1
        tau, g = unipotent_reduce(f)
        tau2, g2 = unipotent_reduce(g)
        if not (disc_poly(g) == D and tau2 == QQ(0) and g2 == g):
            bad.append(("unipotent", f))
    while n_sl2 < 1000:
        d = rng.randint(3, 6)
        F = BinaryForm(QQ, [QQ(rng.randint(-25, 25)) for _ in range(d + 1)])
        if not any(F.coeffs) or not disc_form(F):
            continue
        n_sl2 += 1
        D = disc_form(F)
        phi, R = sl2_reduce_form(F)
        _, R2 = sl2_reduce_form(R)
        _, R3 = sl2_reduce_form(pullback(_random_sl2(rng), F))
        if not (phi.is_sl2() and disc_form(R) == D and R2 == R and R3 == R):
            bad.append(("sl2", F))
    ok = not bad
    acceptance(5, "reduction idempotence and SL2(Z) orbit canonicity, 1000 + 1000 forms", ok, f"failures={len(bad)}")
    assert ok, bad[:5]


# 6 -------------------------------------------------------------------------


def test_criterion_6_sunit_oracle(acceptance):
    got2 = {(s.x, s.y) for s in solve_sunit_equation(PlaceSet.of(QQ, [2]), ExactLog(Fraction(1), Fraction(4)))}
    exact2 = got2 == {(Fraction(2), Fraction(-1)), (Fraction(-1), Fraction(2)), (Fraction(1, 2), Fraction(1, 2))}
    results = []
    for M in (4, 10, 100, 1000, 10000):
        got = {(s.x, s.y) for s in solve_sunit_equation(PlaceSet.of(QQ, [2, 3]), ExactLog(Fraction(1), Fraction(M)))}
        results.append(got == sunit_double_loop([2, 3], M))
    ok = exact2 and all(results)
    acceptance(6, "S-unit solver vs exact list and double-loop oracle", ok, f"T={{2}}: {len(got2)} solutions")
    assert ok


# 7 -------------------------------------------------------------------------


def test_criterion_7_catalog_reproduction(acceptance):
    spec = SearchSpec(1, (2,), 200)
    t0 = time.perf_counter()
    cat = enumerate_curves(spec, jobs=1)
    secs = time.perf_counter() - t0
    oracle = oracle_enumerate_g1((2,), 200)
    shorts = [short_form(r.poly) for r in cat.records]
    bijective = len(oracle) == len(shorts) and all(sum(is_isomorphic_g1(o, s) for s in shorts) == 1 for o in oracle)
    # j-invariants of the curves of conductor 2^k (published tables)
    js = sorted({Fraction(r.fingerprint[0]) for r in cat.records})
    tables_j = [Fraction(128), Fraction(1728), Fraction(8000), Fraction(10976), Fraction(287496)]
    par = enumerate_curves(spec, jobs=2)
    cs = cells(spec)
    parts = [enumerate_curves(spec, cell_filter=lambda c, k=k: cs.index(c) % 2 == k) for k in range(2)]
    merged = merge_catalogs(spec, parts)
    identical = par.dumps() == cat.dumps() == merged.dumps()
    ok = len(cat) == 24 and bijective and js == tables_j and secs < 300 and identical
    acceptance(
        7,
        "catalog of elliptic curves with good reduction outside 2",
        ok,
        f"{len(cat)} classes, oracle {len(oracle)}, {secs:.1f}s single-threaded, parallel identical={identical}",
    )
    assert ok


# 8 -------------------------------------------------------------------------


def _rand_T_integral(K, rng, T_ells):
    den = 1
    for ell in T_ells:
        den *= ell ** rng.randint(0, 3)
    num = rng.randint(-30, 30)
    if K.is_rational:
        return K(Fraction(num, den))
    return K(Fraction(num, den), Fraction(rng.randint(-10, 10), den))


def test_criterion_8_clear_denominators(acceptance):
    rng = random.Random(8)
    fields = [QQ, NumberField(1), NumberField(5), NumberField(23)]
    bad = []
    for i in range(100):
        K = fields[i % len(fields)]
        T_ells = sorted(rng.sample([2, 3, 5], rng.randint(1, 2)))
        T = PlaceSet.of(K, T_ells)
        n = rng.choice((3, 4))
        while True:
            cs = [_rand_T_integral(K, rng, T_ells) for _ in range(n)] + [_rand_T_integral(K, rng, T_ells) or K.one]
            f = Poly(K, cs)
            if f.degree == n:
                break
        omega, out = clear_denominators(f, 1, T)
        integral = all(K.is_integral(c) for c in out.coeffs)
        # exact valuation checks at every prime of T and at the primes dividing the coefficients
        vals_ok = all(valuation(c, P) >= 0 for c in out.coeffs if c for ell in T_ells for P in K.primes_above(ell))
        unit = T.is_unit(omega)
        hb = poly_height(out.coeffs) <= poly_height(f.coeffs).scale(4 * K.degree * n * n)
        # f' = eps^2 omega^(2n) f(X / omega^2): compare coefficientwise
        eps2 = out.lc / f.lc
        shape = all(out.coeff(k) == eps2 * omega ** (2 * (n - k)) * f.coeff(k) for k in range(n + 1))
        if not (integral and vals_ok and unit and hb and shape):
            bad.append((str(K), T_ells, str(f)))
    ok = not bad
    acceptance(8, "denominator clearing on 100 T-integral cubics/quartics", ok, f"violations={len(bad)}")
    assert ok, bad[:5]
