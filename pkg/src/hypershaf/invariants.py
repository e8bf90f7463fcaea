"""Isomorphism invariants used to fingerprint catalog records.

Genus 1: j-invariant plus the twist class read off c4, c6.  Genus 2: the
Igusa-Clebsch invariants of the binary sextic, computed from the roots and
rounded to the integers they provably are.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import mpmath
from sympy import integer_nthroot

from .forms import BinaryForm, GL2Matrix, Poly, disc_form, homogenize, pullback
from .numberfield import factor_int


def c4_c6(f: Poly) -> tuple[Fraction, Fraction]:
    """c4, c6 of y^2 = x^3 + a2 x^2 + a4 x + a6."""
    if f.degree != 3 or not f.is_monic() or not f.is_rational():
        raise ValueError("need a monic rational cubic")
    a6, a4, a2 = (f.coeff(i).a for i in range(3))
    c4 = 16 * a2 * a2 - 48 * a4
    c6 = -64 * a2**3 + 288 * a2 * a4 - 864 * a6
    return c4, c6


def j_invariant(f: Poly) -> Fraction:
    c4, c6 = c4_c6(f)
    disc = (c4**3 - c6**2) / 1728
    if not disc:
        raise ValueError("singular cubic")
    return c4**3 / disc


def power_free_part(x: Fraction, k: int) -> Fraction:
    """Representative of x modulo (Q^*)^k with exponents in [0, k)."""
    if not x:
        raise ValueError("zero has no power class")
    out = Fraction(-1 if x < 0 and k % 2 == 0 else 1)
    for p, e in factor_int(abs(x.numerator)):
        out *= p ** (e % k)
    for p, e in factor_int(x.denominator):
        out *= p ** ((-e) % k)
    return out


def g1_fingerprint(f: Poly) -> tuple[str, ...]:
    """(j, kind, class): equal fingerprints iff the cubics define Q-isomorphic curves."""
    c4, c6 = c4_c6(f)
    j = j_invariant(f)
    if c4 and c6:
        return (str(j), "quadratic", str(power_free_part(c6 / c4, 2)))
    if c6 == 0:
        return (str(j), "quartic", str(power_free_part(c4, 4)))
    return (str(j), "sextic", str(power_free_part(c6, 6)))


def quartic_j(f: Poly) -> Fraction:
    """j-invariant of the Jacobian of y^2 = a x^4 + b x^3 + c x^2 + d x + e."""
    cs = [f.coeff(i).a for i in range(5)]
    e, d, c, b, a = cs
    I = 12 * a * e - 3 * b * d + c * c
    J = 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * e * b * b - 2 * c**3
    den = 4 * I**3 - J**2
    if not den:
        raise ValueError("singular quartic")
    return 6912 * I**3 / den


# ---------------------------------------------------------------------------
# Genus 2
# ---------------------------------------------------------------------------

_PAIRINGS = []
for _p in itertools.permutations(range(6)):
    _m = tuple(sorted((tuple(sorted(_p[i : i + 2])) for i in range(0, 6, 2))))
    if _m not in _PAIRINGS:
        _PAIRINGS.append(_m)

_SPLITS = []
for _a in itertools.combinations(range(6), 3):
    if 0 in _a:
        _SPLITS.append((_a, tuple(i for i in range(6) if i not in _a)))


def _sextic_ints(F: BinaryForm) -> list[int]:
    if F.degree != 6 or not F.field.is_rational:
        raise ValueError("need a rational binary sextic")
    L = math.lcm(*(c.a.denominator for c in F.coeffs))
    ints = [int(c.a * L) for c in F.coeffs]
    k = 1
    G = F
    while ints[0] == 0:
        G = pullback(GL2Matrix.of(F.field, 1, 0, k, 1), F)
        ints = [int(c.a * L) for c in G.coeffs]
        k += 1
    return ints


def _roots(ints: list[int], dps: int):
    steps = 100 + 20 * dps
    for _ in range(4):
        try:
            return mpmath.polyroots(ints, maxsteps=steps, extraprec=2 * dps + 64)
        except mpmath.mp.NoConvergence:
            steps *= 4
    raise ArithmeticError("root finding did not converge")


def _ic_numeric(ints: list[int], dps: int):
    with mpmath.workdps(dps):
        r = _roots(ints, dps)
        a0 = mpmath.mpf(ints[0])

        def sq(i, j):
            return (r[i] - r[j]) ** 2

        A = sum(sq(*p[0]) * sq(*p[1]) * sq(*p[2]) for p in _PAIRINGS)
        B = mpmath.mpf(0)
        C = mpmath.mpf(0)
        for (i, j, k), (l, m, n) in _SPLITS:
            tri = sq(i, j) * sq(j, k) * sq(k, i) * sq(l, m) * sq(m, n) * sq(n, l)
            B += tri
            for perm in itertools.permutations((l, m, n)):
                C += tri * sq(i, perm[0]) * sq(j, perm[1]) * sq(k, perm[2])
        return [_round_certain(z) for z in (a0**2 * A, a0**4 * B, a0**6 * C)]


def _round_certain(z) -> int:
    # the working precision exceeds the size of the invariant by > 30 digits
    n = int(mpmath.nint(mpmath.re(z)))
    if abs(z - n) > mpmath.mpf("0.01"):
        raise ArithmeticError("invariant is not numerically close to an integer")
    return n


def igusa_clebsch(F) -> tuple[int, int, int, int]:
    """Root-formula invariants (I2, I4, I6, I10) of a binary sextic (or a quintic/sextic Poly).

    I10 equals the discriminant of the sextic.  The values are integers for
    integral input; they are evaluated at two precisions and must agree.
    """
    if isinstance(F, Poly):
        if F.degree not in (5, 6):
            raise ValueError("need a quintic or sextic")
        F = homogenize(F, 6)
    D = disc_form(F)
    if not D:
        raise ValueError("inseparable sextic")
    L = math.lcm(*(c.a.denominator for c in F.coeffs))
    ints = _sextic_ints(F)
    size = max(len(str(abs(c))) for c in ints)
    dps = 40 + 12 * size
    lo = _ic_numeric(ints, dps)
    hi = _ic_numeric(ints, 2 * dps)
    if lo != hi:
        raise ArithmeticError("Igusa-Clebsch invariants unstable across precisions")
    I10 = D * L**10
    if not I10.is_rational or I10.a.denominator != 1:
        raise ArithmeticError("unexpected non-integral discriminant")
    return (*lo, int(I10.a))


def ic_ratios(inv) -> tuple[Fraction, ...]:
    """Weight-zero ratios; equal for GL2-equivalent sextics and under F -> uF."""
    I2, I4, I6, I10 = (Fraction(x) for x in inv)
    return (
        I2**5 / I10,
        I2**3 * I4 / I10,
        I2**2 * I6 / I10,
        I4**5 / I10**2,
        I6**5 / I10**3,
        I4 * I6 / I10,
    )


def igusa_clebsch_fingerprint(f) -> tuple[str, ...]:
    return tuple(str(x) for x in ic_ratios(igusa_clebsch(f)))


def is_isomorphic_g1(r1, r2) -> bool:
    """Short forms (a, b) of y^2 = x^3 + a x + b: exists u in Q^* with a2 = u^4 a1, b2 = u^6 b1."""
    a1, b1 = (Fraction(x) for x in r1)
    a2, b2 = (Fraction(x) for x in r2)
    if (a1 == 0) != (a2 == 0) or (b1 == 0) != (b2 == 0):
        return False
    if a1 == 0 and b1 == 0:
        return True
    if a1 and b1:
        u2 = (b2 / b1) / (a2 / a1)
        return u2 > 0 and _is_kth_power(u2, 2) and u2 * u2 == a2 / a1 and u2**3 == b2 / b1
    if a1:
        return _is_kth_power(a2 / a1, 4)
    return _is_kth_power(b2 / b1, 6)


def _is_kth_power(x: Fraction, k: int) -> bool:
    if x < 0:
        if k % 2 == 0:
            return False
        x = -x
    for part in (x.numerator, x.denominator):
        _, exact = integer_nthroot(part, k)
        if not exact:
            return False
    return True
