"""Weierstrass models  Y^2 + f2(X) Y = f(X)  of hyperelliptic curves.

The model discriminant is 2^(4g) times the discriminant of the degree 2g+2
homogenization of f0 = f + f2^2/4.  For deg f0 = 2g+1 this equals
2^(4g) * lc(f0)^2 * Delta(f0); both shapes are exposed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .forms import BinaryForm, GL2Matrix, Poly, disc_form, disc_poly, homogenize, pullback
from .numberfield import (
    ExactLog,
    FieldElement,
    PlaceSet,
    PrimeIdeal,
    element_denominator,
    factor_int,
    poly_height,
    valuation,
)


def check_window(f: Poly, f2: Poly | None, g: int) -> None:
    if g < 1:
        raise ValueError("genus must be >= 1")
    d2 = f2.degree if f2 is not None and not f2.is_zero() else -1
    top = max(2 * d2, f.degree)
    if not (2 * g + 1 <= top <= 2 * g + 2):
        raise ValueError(
            f"degree window violated: max(2 deg f2, deg f) = {top}, need {2 * g + 1}..{2 * g + 2}"
        )


def complete_square(f: Poly, f2: Poly, T: PlaceSet | None = None) -> Poly:
    """f0 = f + f2^2/4; requires 2 to be invertible when T is given."""
    if f2.is_zero():
        return f
    if T is not None and not T.inverts(2):
        raise ValueError("completing the square needs 2 invertible in O_T")
    return f + f2 * f2 * Fraction(1, 4)


def model_discriminant(f: Poly, f2: Poly | None, g: int) -> FieldElement:
    check_window(f, f2, g)
    f0 = f if f2 is None or f2.is_zero() else f + f2 * f2 * Fraction(1, 4)
    K = f.field
    pre = K(2) ** (4 * g)
    n = f0.degree
    if n == 2 * g + 2:
        return pre * disc_poly(f0)
    if n == 2 * g + 1:
        return pre * f0.lc**2 * disc_poly(f0)
    return K.zero


def model_discriminant_via_form(f: Poly, g: int) -> FieldElement:
    """Same value computed from the degree-(2g+2) binary form."""
    return f.field(2) ** (4 * g) * disc_form(homogenize(f, 2 * g + 2))


@dataclass(frozen=True)
class HyperellipticEquation:
    genus: int
    f: Poly
    f2: Poly
    T: PlaceSet | None = None  # None means O_K

    def __post_init__(self):
        check_window(self.f, self.f2, self.genus)
        if self.T is not None:
            for c in self.f.coeffs + self.f2.coeffs:
                if not self.T.is_integral(c):
                    raise ValueError(f"coefficient {c} is not in O_T")


@dataclass(frozen=True)
class WeierstrassModel:
    """Y^2 = f(X) over O_K or O_T."""

    genus: int
    f: Poly
    disc: FieldElement
    T: PlaceSet | None = None

    @property
    def field(self):
        return self.f.field

    @property
    def eta(self) -> int:
        # 1 for the monic odd-degree pipeline, 0 for the even-degree one
        return 1 if self.f.degree == 2 * self.genus + 1 else 0

    def height(self) -> ExactLog:
        return poly_height(self.f.coeffs)

    def __str__(self):
        return f"y^2 = {self.f}"


def make_model(f: Poly, g: int, T: PlaceSet | None = None, check_integral: bool = True) -> WeierstrassModel:
    check_window(f, None, g)
    if T is not None and check_integral:
        for c in f.coeffs:
            if not T.is_integral(c):
                raise ValueError(f"coefficient {c} is not in O_T")
    return WeierstrassModel(g, f, model_discriminant(f, None, g), T)


def from_equation(eq: HyperellipticEquation) -> WeierstrassModel:
    f0 = complete_square(eq.f, eq.f2, eq.T)
    return WeierstrassModel(eq.genus, f0, model_discriminant(eq.f, eq.f2, eq.genus), eq.T)


def change_variables(model: WeierstrassModel, phi: GL2Matrix, lam) -> WeierstrassModel:
    """New model l(X) = lam^-2 (phi* F)(X, 1), F the degree-(2g+2) homogenization.

    The identity  Delta = lam^(4(2g+1)) det(phi)^(-2(g+1)(2g+1)) Delta'
    relating old and new discriminants is checked on every call.
    """
    K = model.field
    lam = K(lam)
    if not lam:
        raise ValueError("lambda must be nonzero")
    if not phi.det:
        raise ValueError("degenerate change of variables")
    g = model.genus
    F = homogenize(model.f, 2 * g + 2)
    G = pullback(phi, F)
    l = G.dehomogenize() * (lam**-2)
    check_window(l, None, g)
    new_disc = model_discriminant(l, None, g)
    if not new_disc:
        raise ValueError("change of variables produced an inseparable model")
    lhs = model.disc
    rhs = lam ** (4 * (2 * g + 1)) * phi.det ** (-2 * (g + 1) * (2 * g + 1)) * new_disc
    if lhs != rhs:
        raise ArithmeticError(f"discriminant law violated: {lhs} != {rhs}")
    return WeierstrassModel(g, l, new_disc, model.T)


def good_reduction_at(model: WeierstrassModel, v: PrimeIdeal) -> bool:
    """This model is smooth at v (sufficient, not necessary, for good reduction)."""
    for c in model.f.coeffs:
        if c and valuation(c, v) < 0:
            raise ValueError(f"model is not integral at {v}")
    if not model.disc:
        return False
    return valuation(model.disc, v) == 0


def denominator_norm(alpha: FieldElement) -> int:
    """prod_w max(1, |alpha|_w) over finite places: the norm of the denominator ideal."""
    if not alpha:
        return 1
    K = alpha.field
    if K.is_rational:
        return alpha.a.denominator
    out = 1
    for ell, _ in factor_int(element_denominator(alpha)):
        for P in K.primes_above(ell):
            e = valuation(alpha, P)
            if e < 0:
                out *= P.norm ** (-e)
    return out


def clear_denominators(f: Poly, g: int, T: PlaceSet):
    """Return (omega, f') with f'(X) = omega^(2n) f(X/omega^2) integral over O_K.

    When the leading coefficient itself has a denominator eps, f' is further
    multiplied by eps^2 (a square, so the curve is unchanged).  The height
    inequality h(W(f')) <= 4 d n^2 h(f) is checked before returning.
    """
    K = f.field
    n = f.degree
    check_window(f, None, g)
    deltas = [denominator_norm(c) for c in f.coeffs]
    for c, dl in zip(f.coeffs, deltas):
        if dl > 1 and not T.is_unit(K(dl)):
            raise ValueError(f"coefficient {c} has a denominator outside T")
    omega = math.prod(deltas)
    eps = denominator_norm(f.lc)
    cs = [f.coeff(k) * (omega ** (2 * (n - k)) * eps * eps) for k in range(n + 1)]
    out = Poly(K, cs)
    for c in out.coeffs:
        if not K.is_integral(c):
            raise ArithmeticError(f"coefficient {c} still has a denominator")
    hf = poly_height(f.coeffs)
    hout = poly_height(out.coeffs)
    if hout > hf.scale(4 * K.degree * n * n):
        raise ArithmeticError("height inequality h(W(f')) <= 4 d n^2 h(f) violated")
    return K(omega), out


def rational_roots(f: Poly) -> list[Fraction]:
    """Rational roots of f in Q[X] by the rational root test."""
    from .numberfield import factor_int as _fi

    if not f.is_rational():
        raise ValueError("rational root test needs rational coefficients")
    L = math.lcm(*(c.a.denominator for c in f.coeffs))
    ints = [int(c.a * L) for c in f.coeffs]
    roots = []
    k = 0
    while ints[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
    ints = ints[k:]
    if len(ints) == 1:
        return roots

    def divisors(m):
        ds = [1]
        for p, e in _fi(abs(m)):
            ds = [d * p**i for d in ds for i in range(e + 1)]
        return ds

    for p in divisors(ints[0]):
        for q in divisors(ints[-1]):
            for sg in (1, -1):
                r = Fraction(sg * p, q)
                if r in roots:
                    continue
                acc = Fraction(0)
                for c in reversed(ints):
                    acc = acc * r + c
                if acc == 0:
                    roots.append(r)
    return sorted(roots)


def odd_degree_has_rational_wp(model: WeierstrassModel) -> str:
    """'yes' when a K-rational Weierstrass point is certified, else 'unknown'."""
    f = model.f
    if f.degree == 2 * model.genus + 1:
        return "yes"
    if not f.coeff(0):
        return "yes"
    if f.is_rational() and rational_roots(f):
        return "yes"
    return "unknown"
