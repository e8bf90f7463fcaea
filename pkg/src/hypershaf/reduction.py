"""Reduction of discriminants, models and binary forms.

* u_reduce: push the exponents of a T-unit discriminant into a window [0, m)
  by an m-th power twist.
* twist_model: the matching change of variables f -> omega^k f(X/omega^2).
* unipotent_reduce: centre a monic polynomial by X -> X + tau.
* sl2_reduce_form: covariant reduction of binary forms over Z via the
  root covariant quadratic, with a canonical tie-break among the
  transformations that keep the quadratic reduced.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .bounds import effgen_bound, iv_context, propgeom_disc_bound
from .classgroup import SUnitGroup
from .forms import BinaryForm, GL2Matrix, Poly, disc_form, disc_poly, pullback
from .numberfield import ExactLog, FieldElement, NumberField, PlaceSet, height, vp
from .weierstrass import WeierstrassModel, change_variables

log = logging.getLogger(__name__)


def window(g: int, odd: bool) -> int:
    return 4 * g * (2 * g + 1) if odd else 4 * (g + 1) * (2 * g + 1)


@dataclass(frozen=True)
class UnitBasisU:
    sunits: SUnitGroup
    g: int
    odd: bool = True

    @property
    def m(self) -> int:
        return window(self.g, self.odd)


@dataclass(frozen=True)
class UReduction:
    omega: FieldElement
    delta: FieldElement
    torsion_exponent: int
    exponents: tuple
    m: int
    bound_checked: bool


def height_within(h: ExactLog, bound, prec: int = 128) -> bool:
    """h <= exp(bound) for a certified log-bound, decided on intervals."""
    with iv_context(prec) as ctx:
        hv = h.interval(prec)
        B = ctx.exp(ctx.mpf(bound.lo))
        return hv.b <= B.a


def u_reduce(delta_prime: FieldElement, basis: UnitBasisU) -> UReduction:
    """Return omega with Delta = omega^m Delta' having all exponents in [0, m)."""
    G = basis.sunits
    m = basis.m
    r0, a = G.exponents(delta_prime)  # ValueError when not a T-unit
    K = G.field
    omega = K.one
    rs = []
    for gen, ai in zip(G.generators, a):
        q, r = divmod(ai, m)
        rs.append(r)
        if q:
            omega = omega * gen ** (-q)
    delta = omega**m * delta_prime
    # reconstruct from the reduced exponents
    recon = G.torsion**r0
    for gen, r in zip(G.generators, rs):
        recon = recon * gen**r
    if recon != delta:
        raise ArithmeticError("u_reduce reconstruction failed")
    # bound check when the generators satisfy the effective generator bound
    T = G.places
    norms = [P.norm for P in T]
    d, DK, t = K.degree, K.disc_abs, len(T)
    checked = False
    if t:
        eb = effgen_bound(t, d, DK, norms)
        if all(height_within(height(e), eb) for e in G.generators):
            pb = propgeom_disc_bound(basis.g, t, d, DK, norms)
            if not height_within(height(delta), pb):
                raise ArithmeticError("h(Delta) exceeds the U-reduced discriminant bound")
            checked = True
    return UReduction(omega, delta, r0, tuple(rs), m, checked)


def twist_model(model: WeierstrassModel, omega) -> WeierstrassModel:
    """f -> omega^(4g+2) f(X/omega^2) (odd degree) or omega^(4g+4) f(X/omega^2)."""
    K = model.field
    omega = K(omega)
    if not omega:
        raise ValueError("omega must be nonzero")
    if model.T is not None and not model.T.is_unit(omega):
        raise ValueError(f"{omega} is not a T-unit")
    g = model.genus
    odd = model.f.degree == 2 * g + 1
    phi = GL2Matrix(K.one, K.zero, K.zero, omega * omega)
    lam = omega if odd else K.one
    new = change_variables(model, phi, lam)
    if new.disc != omega ** window(g, odd) * model.disc:
        raise ArithmeticError("twist changed the discriminant by the wrong power")
    return new


# ---------------------------------------------------------------------------
# Unipotent translation
# ---------------------------------------------------------------------------


def _round_half_to_zero(x: Fraction) -> int:
    f = math.floor(x)
    frac = x - f
    if frac > Fraction(1, 2):
        return f + 1
    if frac < Fraction(1, 2):
        return f
    # exact tie: pick the one closer to zero
    return f if abs(f) <= abs(f + 1) else f + 1


def _t_part(n: int, T0: PlaceSet) -> int:
    out = 1
    for ell in T0.residue_chars:
        if T0.inverts(ell):
            out *= ell ** vp(n, ell)
    return out


def unipotent_reduce(f: Poly, T0: PlaceSet | None = None):
    """(tau, f(X + tau)) with the X^(n-1) coefficient pushed into a small window."""
    K = f.field
    T0 = T0 if T0 is not None else PlaceSet(K)
    n = f.degree
    if n < 3:
        raise ValueError("unipotent reduction needs degree >= 3")
    if not f.is_monic():
        raise ValueError("unipotent reduction needs a monic polynomial")
    D = disc_poly(f)
    if not D:
        raise ValueError("polynomial is inseparable")
    for c in f.coeffs:
        if not T0.is_integral(c):
            raise ValueError(f"coefficient {c} is not in O_T0")
    c1 = f.coeff(n - 1)
    if K.is_rational:
        nT = _t_part(n, T0)
        if nT == 1 and len(T0) == 0:
            tau = K(_round_half_to_zero(-c1.a / n))
        else:
            n1 = n // nT
            a = c1.a
            # residue of c1 in O_T0 / n1 = Z / n1 (denominators are T0-units)
            res = (a.numerator * pow(a.denominator, -1, n1)) % n1 if n1 > 1 else 0
            cands = [res, res - n1] if n1 > 1 else [0]
            best = None
            for rho in cands:
                if 2 * abs(rho) > n1:
                    continue
                t = (rho - a) / n
                key = (abs(t), t)
                if best is None or key < best[0]:
                    best = (key, t)
            tau = K(best[1])
    else:
        x, y = K.int_coords(-c1 / n)
        tau = K.from_int_coords(_round_half_to_zero(x), _round_half_to_zero(y))
    g = f.shift(tau)
    if disc_poly(g) != D:
        raise ArithmeticError("translation changed the discriminant")
    return tau, g


# ---------------------------------------------------------------------------
# Covariant reduction of binary forms over Z
# ---------------------------------------------------------------------------

_GAMMA1 = [
    m
    for m in itertools.product((0, 1, -1), repeat=4)
    if m[0] * m[3] - m[1] * m[2] == 1
]
_GAMMA1.sort(key=lambda m: (m != (1, 0, 0, 1), m))


def _qpull(Q, M):
    A, B, C = Q
    p, q, r, s = M
    return (
        A * p * p + B * p * r + C * r * r,
        2 * A * p * q + B * (p * s + q * r) + 2 * C * r * s,
        A * q * q + B * q * s + C * s * s,
    )


def _mmul(M, N):
    a, b, c, d = M
    e, f, g, h = N
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _covariant(cs: list[int], level: int):
    """Root covariant quadratic of F (beta_0 != 0) at a numeric level."""
    n = len(cs) - 1
    if level == 0:
        roots = np.roots(np.array([float(c) for c in cs]))
        deriv = np.polyder(np.array([float(c) for c in cs]))
        w = np.abs(np.polyval(deriv, roots)) ** (-2.0 / (n - 2))
        A = float(np.sum(w))
        B = float(-2 * np.sum(w * roots.real))
        C = float(np.sum(w * np.abs(roots) ** 2))
        return (A, B, C), 1e-9
    dps = 15 * 2**level
    with mpmath.workdps(dps):
        roots = mpmath.polyroots(cs, maxsteps=50 + 20 * dps, extraprec=2 * dps + 64)
        dcs = [c * (n - i) for i, c in enumerate(cs[:-1])]
        A = B = C = mpmath.mpf(0)
        e = mpmath.mpf(-2) / (n - 2)
        for r in roots:
            w = abs(mpmath.polyval(dcs, r)) ** e
            A += w
            B += -2 * w * mpmath.re(r)
            C += w * abs(r) ** 2
        return (A, B, C), mpmath.mpf(10) ** (-dps // 2)


def _gauss(Q, tol):
    M = (1, 0, 0, 1)
    for _ in range(10_000):
        A, B, C = Q
        if abs(B) > A * (1 + tol):
            k = -int(mpmath.nint(B / (2 * A))) if not isinstance(A, float) else -round(B / (2 * A))
            if k == 0:
                k = -1 if B > 0 else 1
            N = (1, k, 0, 1)
            Q = _qpull(Q, N)
            M = _mmul(M, N)
            continue
        if A > C * (1 + tol):
            N = (0, -1, 1, 0)
            Q = _qpull(Q, N)
            M = _mmul(M, N)
            continue
        return M, Q
    raise ArithmeticError("Gauss reduction did not terminate")


def _approx_reduced(Q, tol) -> bool:
    A, B, C = Q
    return abs(B) <= A * (1 + tol) and A <= C * (1 + tol)


def _form_key(F: BinaryForm):
    return tuple(-c.a for c in F.coeffs)


def _int_content(F: BinaryForm) -> list[int]:
    L = math.lcm(*(c.a.denominator for c in F.coeffs))
    ints = [int(c.a * L) for c in F.coeffs]
    g = math.gcd(*ints)
    return [i // g for i in ints]


def _reduce_at(F: BinaryForm, level: int):
    K = F.field
    ints = _int_content(F)
    pre = (1, 0, 0, 1)
    if ints[0] == 0:
        # root at infinity: shear (1 0; k 1) first
        k = 1
        while True:
            G = pullback(GL2Matrix.of(K, 1, 0, k, 1), F)
            if G.coeffs[0]:
                break
            k += 1
        pre = (1, 0, k, 1)
        ints = _int_content(G)
    # the pullbacks below cancel digits, so keep the covariant's precision
    with mpmath.workdps(15 * 2**level + 20):
        Q, tol = _covariant(ints, level)
        if pre != (1, 0, 0, 1):
            Q = _qpull(Q, (1, 0, -pre[2], 1))
        M, Qr = _gauss(Q, tol)
        keep = [gam for gam in _GAMMA1 if _approx_reduced(_qpull(Qr, gam), tol)]
    best = None
    for gam in keep:
        tot = _mmul(M, gam)
        Fs = pullback(GL2Matrix.of(K, *tot), F)
        key = _form_key(Fs)
        if best is None or key < best[0]:
            best = (key, tot, Fs)
    if best is None:
        raise ArithmeticError("covariant reduction found no reduced representative")
    return best[1], best[2]


def sl2_reduce_form(F: BinaryForm, T: PlaceSet | None = None, max_level: int = 8):
    """(phi, F*) with F* = phi* F canonical in its SL2(Z)-orbit (numerically certified)."""
    K = F.field
    if not K.is_rational or not F.coeffs or any(c.b for c in F.coeffs):
        raise NotImplementedError("covariant reduction is implemented over Q only")
    n = F.degree
    if n < 3:
        raise ValueError("covariant reduction needs degree >= 3")
    D = disc_form(F)
    if not D:
        raise ValueError("form is inseparable")
    if T is not None:
        for c in F.coeffs:
            if not T.is_integral(c):
                raise ValueError(f"coefficient {c} is not T-integral")
    prev = None
    for level in range(max_level + 1):
        try:
            cur = _reduce_at(F, level)
        except (ArithmeticError, ZeroDivisionError, ValueError, np.linalg.LinAlgError, mpmath.mp.NoConvergence):
            prev = None
            continue
        if prev is not None and prev[1] == cur[1]:
            M, Fs = cur
            phi = GL2Matrix.of(K, *M)
            if disc_form(Fs) != D:
                raise ArithmeticError("reduction changed the discriminant")
            return phi, Fs
        prev = cur
    raise ArithmeticError("covariant reduction did not stabilise")


def covariant_quadratic(F: BinaryForm, dps: int = 30):
    """The covariant (A, B, C) of F at the given decimal precision (for inspection)."""
    ints = _int_content(F)
    if ints[0] == 0:
        raise ValueError("leading coefficient is zero")
    level = max(1, math.ceil(math.log2(dps / 15)))
    return _covariant(ints, level)[0]


def center_over_OT(f: Poly, T: PlaceSet):
    """Canonical translate f(X + r) over Q among all r keeping f in O_T[X].

    Such r lie in (1/n) O_T, i.e. in one of n' cosets k/n' + O_T where n' is
    the part of n prime to T.  Within each admissible coset the X^(n-1)
    coefficient can be moved to the symmetric residue rho mod n'; the coset
    with the smallest |rho| (then rho >= 0) wins.  The result depends only
    on the set of admissible translates, so it is constant on translation
    classes.
    """
    K = f.field
    if not K.is_rational:
        raise NotImplementedError("fractional centring is implemented over Q only")
    n = f.degree
    nT = _t_part(n, T)
    n1 = n // nT
    best = None
    for k in range(n1):
        g = f.shift(K(Fraction(k, n1))) if k else f
        if not all(T.is_integral(c) for c in g.coeffs):
            continue
        a = g.coeff(n - 1).a
        if n1 > 1:
            res = (a.numerator * pow(a.denominator, -1, n1)) % n1
            rho = res if 2 * res <= n1 else res - n1
            if 2 * abs(rho) == n1:
                rho = abs(rho)
        else:
            rho = 0
        t = (rho - a) / n
        key = (abs(rho), -rho)
        if best is None or key < best[0]:
            best = (key, Fraction(k, n1) + t)
    r = K(best[1])
    return r, f.shift(r)
