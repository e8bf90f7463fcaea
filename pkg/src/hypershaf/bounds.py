"""Certified evaluation of the explicit Shafarevich-type bounds.

All quantities are evaluated as natural logarithms in mpmath's interval
context, which rounds outward, so every returned ``[lo, hi]`` encloses the
true log of the bound.  Values far beyond double range are fine: mpf
exponents are arbitrary integers.

External constants (c6, c7, kappa) are never defaulted; callers pass them or
get a MissingConstantError.
"""

from __future__ import annotations

import math
import threading
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import iv

DEFAULT_PREC = 128
_LOCK = threading.RLock()


class MissingConstantError(ValueError):
    """An external constant needed by a formula was not supplied."""


@contextmanager
def iv_context(prec: int = DEFAULT_PREC):
    """Set mpmath's interval precision for the duration of the block."""
    with _LOCK:
        old = iv.prec
        iv.prec = prec
        try:
            yield iv
        finally:
            iv.prec = old


def iv_num(ctx, x):
    """Interval enclosing an int, Fraction, float or interval."""
    if isinstance(x, Fraction):
        return ctx.mpf(x.numerator) / ctx.mpf(x.denominator)
    if isinstance(x, (int, float)):
        return ctx.mpf(x)
    if isinstance(x, CertifiedLogValue):
        return ctx.mpf([x.lo, x.hi])
    return ctx.mpf(x)


def iv_log(ctx, x):
    x = Fraction(x) if isinstance(x, (int, Fraction)) else x
    if isinstance(x, Fraction):
        if x <= 0:
            raise ValueError("log of a nonpositive number")
        return ctx.log(ctx.mpf(x.numerator)) - ctx.log(ctx.mpf(x.denominator))
    return ctx.log(iv_num(ctx, x))


def iv_max(a, b):
    return iv.mpf([max(a.a, b.a), max(a.b, b.b)])


def _lo(x):
    with mpmath.workprec(iv.prec + 8):
        return +mpmath.mpf(x.a)


def _hi(x):
    with mpmath.workprec(iv.prec + 8):
        return +mpmath.mpf(x.b)


def _dec(x, digits: int, up: bool) -> str:
    """Decimal string rounded outward (down for lower, up for upper ends)."""
    with mpmath.workprec(max(iv.prec, 53) + 64):
        x = +mpmath.mpf(x)
    if x == 0:
        return "0"
    if not mpmath.isfinite(x):
        return str(x)
    with mpmath.workprec(max(mpmath.mp.prec, 64) + 64):
        e = int(mpmath.floor(mpmath.log10(abs(x))))
    wp = 256 + abs(e).bit_length()
    with iv_context(wp) as ctx, mpmath.workprec(wp):
        scaled = iv_num(ctx, x) * ctx.mpf(10) ** (digits - 1 - e)
        m = int(mpmath.ceil(scaled.b)) if up else int(mpmath.floor(scaled.a))
    s = str(abs(m))
    exp10 = e - digits + 1
    sign = "-" if m < 0 else ""
    if -8 <= e <= 40:
        q = Fraction(abs(m)) * Fraction(10) ** exp10
        # fixed point with enough places to show every digit of m
        places = max(0, -exp10)
        whole = q.numerator * 10**places // q.denominator
        txt = str(whole).rjust(places + 1, "0")
        txt = txt[:-places] + "." + txt[-places:] if places else txt
        if "." in txt:
            txt = txt.rstrip("0").rstrip(".")
        return sign + txt
    mant = s[0] + ("." + s[1:].rstrip("0") if s[1:].rstrip("0") else "")
    return f"{sign}{mant}e{e}"


@dataclass(frozen=True)
class CertifiedLogValue:
    """Enclosure [lo, hi] of the natural log of a bound."""

    formula: str
    lo: mpmath.mpf
    hi: mpmath.mpf
    prec: int
    inputs: dict = field(default_factory=dict)
    certified: bool = True
    notes: tuple = ()

    @classmethod
    def from_interval(cls, formula, x, prec, inputs=None, certified=True, notes=()):
        return cls(formula, _lo(x), _hi(x), prec, dict(inputs or {}), certified, tuple(notes))

    def interval(self):
        return iv.mpf([self.lo, self.hi])

    def mid(self):
        with mpmath.workprec(self.prec + 8):
            return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= mpmath.mpf(x) <= self.hi

    def encloses(self, other: "CertifiedLogValue") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    @property
    def width(self):
        with mpmath.workprec(self.prec + 8):
            return self.hi - self.lo

    @property
    def rel_width(self):
        with mpmath.workprec(self.prec + 8):
            mid = abs(self.lo + self.hi) / 2
            return (self.hi - self.lo) / mid if mid else self.hi - self.lo

    def _scaled(self, base: int):
        with iv_context(self.prec + 16) as ctx:
            return ctx.mpf([self.lo, self.hi]) / ctx.log(ctx.mpf(base))

    def log10(self):
        return self._scaled(10)

    def log2(self):
        return self._scaled(2)

    def to_json(self, digits: int = 25) -> dict:
        out = {"formula": self.formula}
        with iv_context(self.prec):
            for key, base in (("ln", None), ("log10", 10), ("log2", 2)):
                x = self.interval() if base is None else self._scaled(base)
                out[key] = {"lo": _dec(x.a, digits, False), "hi": _dec(x.b, digits, True)}
        out["precision_bits"] = self.prec
        out["inputs"] = {k: _jsonable(v) for k, v in self.inputs.items()}
        out["certified"] = self.certified
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, mpmath.mpf):
        return str(v)
    return v


@dataclass(frozen=True)
class BoundInputs:
    """Field, place and genus data feeding the bound formulas."""

    g: int
    d: int = 1
    D_K: int = 1
    s: int = 0
    N_S: int = 1
    p: int = 1
    norms: tuple = ()
    h_S: int = 1
    c6: Fraction | None = None
    c7: Fraction | None = None
    kappa: Fraction | None = None
    illustrative: bool = False

    def __post_init__(self):
        if self.g < 1:
            raise ValueError("genus must be >= 1")
        if self.d not in (1, 2):
            raise ValueError("degree must be 1 or 2")
        if self.D_K < 1 or self.N_S < 1 or self.h_S < 1:
            raise ValueError("D_K, N_S, h_S must be positive")
        if self.c6 is not None and Fraction(self.c6) < 3:
            raise ValueError("c6 must be >= 3")
        if self.c7 is not None and Fraction(self.c7) < 1:
            raise ValueError("c7 must be >= 1")

    @classmethod
    def from_places(cls, S, g: int, **kw) -> "BoundInputs":
        from .classgroup import s_class_number

        K = S.field
        return cls(
            g=g,
            d=K.degree,
            D_K=K.disc_abs,
            s=S.s,
            N_S=S.N,
            p=S.p,
            norms=tuple(sorted(P.norm for P in S.primes)),
            h_S=s_class_number(K, S),
            **kw,
        )

    @property
    def nu(self) -> int:
        g = self.g
        return 6 * (2 * g + 1) * (2 * g) * (2 * g - 1) * self.d**2

    def lam(self, ctx):
        if self.h_S == 1:
            return ctx.mpf(0)
        return ctx.log(ctx.mpf(self.h_S)) / ctx.log(ctx.mpf(2))

    def sigma(self, ctx):
        return self.s + self.lam(ctx) + 1

    def n_S(self, ctx):
        out = ctx.mpf(1)
        for N in self.norms:
            out = out * ctx.log(ctx.mpf(N))
        return out

    def echo(self) -> dict:
        out = {
            "g": self.g,
            "d": self.d,
            "D_K": self.D_K,
            "s": self.s,
            "N_S": self.N_S,
            "p": self.p,
            "h_S": self.h_S,
            "nu": self.nu,
        }
        for k in ("c6", "c7", "kappa"):
            v = getattr(self, k)
            if v is not None:
                out[k] = str(v)
        return out


def mu(n: int, d: int) -> int:
    return 3 * n * (n - 1) * (n - 2) * d


def _wrap(name, x, prec, inputs, certified=True, notes=()):
    return CertifiedLogValue.from_interval(name, x, prec, inputs, certified, notes)


def _theorem_i_core(ctx, inp: BoundInputs, expo: int):
    nu = inp.nu
    sigma = inp.sigma(ctx)
    ns = nu * sigma
    out = expo * ns * ctx.log(ns)
    out = out + ctx.mpf(nu) / 2 * iv_log(ctx, inp.N_S)
    out = out + ctx.mpf(nu) * (inp.lam(ctx) + 1) / 4 * iv_log(ctx, inp.D_K)
    return out


def theorem_bound_i(inp: BoundInputs, prec: int = DEFAULT_PREC) -> CertifiedLogValue:
    """log of (nu sigma)^(5 nu sigma) N_S^(nu/2) D_K^(nu (lambda_S + 1)/4)."""
    with iv_context(prec) as ctx:
        x = _theorem_i_core(ctx, inp, 5)
        return _wrap("theorem_i", x, prec, inp.echo())


def _need(inp: BoundInputs, *names):
    missing = [n for n in names if getattr(inp, n) is None]
    if missing:
        raise MissingConstantError(f"missing external constant(s): {', '.join(missing)}")


def _theorem_ii_core(ctx, inp: BoundInputs):
    _need(inp, "c6", "c7")
    nu = inp.nu
    sigma = inp.sigma(ctx)
    c = iv_num(ctx, Fraction(inp.c6) * Fraction(inp.c7))
    s4 = sigma**4
    out = c * ctx.mpf(2 * nu) ** 3 * s4 * ctx.log(nu * sigma)
    out = out + ctx.mpf(3 * nu) ** 3 * s4 * (iv_log(ctx, inp.p) + iv_log(ctx, inp.D_K))
    return out


def _const_notes(inp):
    notes = []
    if inp.illustrative:
        notes.append("illustrative constants c6=3, c7=1, kappa=1: not certified")
    if inp.p == 1:
        notes.append("S is empty: p = 1 convention, p-term contributes 0")
    return notes


def theorem_bound_ii(inp: BoundInputs, prec: int = DEFAULT_PREC) -> CertifiedLogValue:
    """log of (nu sigma)^(c (2nu)^3 sigma^4) p^((3nu)^3 sigma^4) D_K^((3nu)^3 sigma^4)."""
    with iv_context(prec) as ctx:
        x = _theorem_ii_core(ctx, inp)
        return _wrap("theorem_ii", x, prec, inp.echo(), not inp.illustrative, _const_notes(inp))


def corollary_count_bound(inp: BoundInputs, prec: int = DEFAULT_PREC) -> CertifiedLogValue:
    """log N <= exp(theorem (ii) shaped exponent)."""
    with iv_context(prec) as ctx:
        x = ctx.exp(_theorem_ii_core(ctx, inp))
        return _wrap("corollary_count", x, prec, inp.echo(), not inp.illustrative, _const_notes(inp))


def count_via_heightbox(log_omega, d: int, g: int, prec: int = DEFAULT_PREC) -> CertifiedLogValue:
    """log of (5 Omega)^(10 d^2 g) given log Omega."""
    with iv_context(prec) as ctx:
        lo = iv_num(ctx, log_omega)
        x = 10 * d * d * g * (ctx.log(ctx.mpf(5)) + lo)
        return _wrap("count_via_heightbox", x, prec, {"d": d, "g": g})


def wp_count_bound(inp: BoundInputs, prec: int = DEFAULT_PREC) -> CertifiedLogValue:
    """log of exp((nu sigma)^(6 nu sigma) N_S^(nu/2) D_K^(nu(lambda_S+1)/4))."""
    with iv_context(prec) as ctx:
        inner = _theorem_i_core(ctx, inp, 6)
        return _wrap("wp_count", ctx.exp(inner), prec, inp.echo())


def wp_count_inner(inp: BoundInputs, prec: int = DEFAULT_PREC) -> CertifiedLogValue:
    with iv_context(prec) as ctx:
        return _wrap("wp_count_inner", _theorem_i_core(ctx, inp, 6), prec, inp.echo())


def faltings_bound(inp: BoundInputs, prec: int = DEFAULT_PREC) -> CertifiedLogValue:
    """log of 2^(2^22 9^g) times the theorem (i) bound."""
    with iv_context(prec) as ctx:
        lead = ctx.mpf(2**22 * 9**inp.g) * ctx.log(ctx.mpf(2))
        x = lead + _theorem_i_core(ctx, inp, 5)
        return _wrap("faltings", x, prec, inp.echo())


def _n_interval(ctx, n):
    """n given as a number, or as a sequence of norms (product of their logs)."""
    if isinstance(n, (list, tuple)):
        out = ctx.mpf(1)
        for N in n:
            out = out * ctx.log(ctx.mpf(N))
        return out
    return iv_num(ctx, n)


def propgeom_disc_bound(g: int, t: int, d: int, D_K: int, n_T, prec: int = DEFAULT_PREC) -> CertifiedLogValue:
    """log of (50 g (t+d)!)^2 (d D_K)^d n_T."""
    with iv_context(prec) as ctx:
        x = 2 * ctx.log(ctx.mpf(50 * g * math.factorial(t + d)))
        x = x + d * ctx.log(ctx.mpf(d * D_K)) + ctx.log(_n_interval(ctx, n_T))
        return _wrap("propgeom_disc", x, prec, {"g": g, "t": t, "d": d, "D_K": D_K, "n_T": _jsonable(n_T)})


def effgen_bound(card: int, d: int, D_K: int, n, prec: int = DEFAULT_PREC) -> CertifiedLogValue:
    """log of (10 |Sigma|!)^2 (d D_K)^d n."""
    with iv_context(prec) as ctx:
        x = 2 * ctx.log(ctx.mpf(10 * math.factorial(card)))
        x = x + d * ctx.log(ctx.mpf(d * D_K)) + ctx.log(_n_interval(ctx, n))
        return _wrap("effgen", x, prec, {"card": card, "d": d, "D_K": D_K, "n": _jsonable(n)})


def regulator_bound(d: int, D_K: int, n, prec: int = DEFAULT_PREC) -> CertifiedLogValue:
    """log of D_K^(1/2) max(2d, d log D_K)^(d-1) n / (d-1)!."""
    if d < 1:
        raise ValueError("d must be >= 1")
    with iv_context(prec) as ctx:
        x = ctx.log(ctx.mpf(D_K)) / 2
        if d > 1:
            m = iv_max(ctx.mpf(2 * d), d * ctx.log(ctx.mpf(D_K)))
            x = x + (d - 1) * ctx.log(m) - ctx.log(ctx.mpf(math.factorial(d - 1)))
        x = x + ctx.log(_n_interval(ctx, n))
        return _wrap("regulator", x, prec, {"d": d, "D_K": D_K, "n": _jsonable(n)})


def T_guarantees(inp: BoundInputs, prec: int = DEFAULT_PREC) -> dict:
    """Upper bounds for t, N_T and p_T after adjoining the places above 2."""
    with iv_context(prec) as ctx:
        t_max = inp.d * inp.sigma(ctx)
        logN = inp.d * (
            ctx.log(ctx.mpf(2 * inp.N_S)) + inp.lam(ctx) / 2 * ctx.log(ctx.mpf(inp.D_K))
        )
        NT = ctx.exp(logN)
        # integer ceilings: floor of the upper endpoint is a safe bound,
        # nudged so that exact integer values are not lost to rounding
        t_int = int(mpmath.floor(_hi(t_max) + mpmath.mpf(2) ** (-prec // 2)))
        N_int = int(mpmath.floor(_hi(NT) + mpmath.mpf(2) ** (-prec // 2)))
    return {
        "t_max": t_int,
        "N_T_max": N_int,
        "log_N_T_max": _wrap("N_T_max", logN, prec, inp.echo()),
        "p_T_max": max(2, inp.p, math.isqrt(inp.D_K)),
    }


def omega_gyoryyu(
    m: int,
    d: int,
    t: int,
    N_T: int,
    kappa=None,
    R_bound=None,
    n_T=None,
    D_K: int = 1,
    prec: int = DEFAULT_PREC,
    illustrative: bool = False,
) -> CertifiedLogValue:
    """log Omega = 7 kappa R N_T^m max(1, log R), with R defaulting to c_K c_T."""
    if kappa is None:
        raise MissingConstantError("missing external constant: kappa")
    with iv_context(prec) as ctx:
        if R_bound is None:
            if n_T is None:
                raise ValueError("need R_bound or n_T")
            one = ctx.mpf(1)
            lD = ctx.log(ctx.mpf(D_K))
            lN = ctx.log(ctx.mpf(N_T))
            logcK = ctx.mpf(m) / 2 * lD + (m * d - 1) * ctx.log(
                2 * ctx.mpf(m) ** 3 * d * d * iv_max(one, lD)
            )
            nT = _n_interval(ctx, n_T)
            logcT = m * (lN / 2 + ctx.log(nT)) + (m * d - 1) * (
                ctx.log(ctx.mpf(max(1, t))) + 2 * t * ctx.log(ctx.mpf(m)) + ctx.log(iv_max(one, lN))
            )
            logR = logcK + logcT
        else:
            logR = iv_log(ctx, Fraction(R_bound)) if not isinstance(R_bound, float) else ctx.log(R_bound)
        R = ctx.exp(logR)
        x = 7 * iv_num(ctx, Fraction(kappa)) * R * ctx.mpf(N_T) ** m * iv_max(ctx.mpf(1), logR)
        inputs = {"m": m, "d": d, "t": t, "N_T": N_T, "kappa": str(kappa), "D_K": D_K}
        notes = ["illustrative kappa: not certified"] if illustrative else []
        return _wrap("omega_gyoryyu", x, prec, inputs, not illustrative, notes)


def omega_evgy(
    n: int, d: int, t: int, p_T: int, D_K: int, c6=None, c7=None, prec: int = DEFAULT_PREC, illustrative: bool = False
) -> CertifiedLogValue:
    """log Omega = (7n)^-2 (c6 (d+t) n)^(c7 d n^8 (t+1)^2) p_T^(2 d n^8 (t+1)^2) D_K^(2 n^8 (t+1))."""
    if c6 is None or c7 is None:
        raise MissingConstantError("missing external constant(s): c6, c7")
    with iv_context(prec) as ctx:
        n8 = n**8
        c6i, c7i = iv_num(ctx, Fraction(c6)), iv_num(ctx, Fraction(c7))
        loglog = -2 * ctx.log(ctx.mpf(7 * n))
        loglog = loglog + c7i * d * n8 * (t + 1) ** 2 * ctx.log(c6i * (d + t) * n)
        loglog = loglog + 2 * d * n8 * (t + 1) ** 2 * ctx.log(ctx.mpf(p_T))
        loglog = loglog + 2 * n8 * (t + 1) * ctx.log(ctx.mpf(D_K))
        inputs = {"n": n, "d": d, "t": t, "p_T": p_T, "D_K": D_K, "c6": str(c6), "c7": str(c7)}
        notes = ["illustrative constants: not certified"] if illustrative else []
        return _wrap("omega_evgy", ctx.exp(loglog), prec, inputs, not illustrative, notes)


def propeff_i_bound(n: int, d: int, t: int, N_T: int, D_K: int, h_delta, prec: int = DEFAULT_PREC) -> CertifiedLogValue:
    """log of h(Delta(f)) + (N_T D_K^(1/3))^mu (mu (t+1))^(4 mu (t+1))."""
    m = mu(n, d)
    with iv_context(prec) as ctx:
        h = h_delta.interval(prec) if hasattr(h_delta, "interval") and not isinstance(h_delta, CertifiedLogValue) else iv_num(ctx, h_delta)
        L = m * (ctx.log(ctx.mpf(N_T)) + ctx.log(ctx.mpf(D_K)) / 3)
        L = L + 4 * m * (t + 1) * ctx.log(ctx.mpf(m * (t + 1)))
        x = ctx.log(h + ctx.exp(L))
        return _wrap("propeff_i", x, prec, {"n": n, "d": d, "t": t, "N_T": N_T, "D_K": D_K, "mu": m})


def log_cap(bound) -> int:
    """Largest integer M with log M <= bound (bound an ExactLog, Fraction or float)."""
    from .numberfield import ExactLog

    if isinstance(bound, ExactLog):
        if bound.coeff < 0:
            return 0
        # M <= arg^coeff  <=>  M^q <= arg^p  for coeff = p/q
        p, q = bound.coeff.numerator, bound.coeff.denominator
        a = bound.arg
        with mpmath.workprec(128):
            guess = int(mpmath.floor(mpmath.power(mpmath.mpf(a.numerator) / a.denominator, mpmath.mpf(p) / q)))
        M = max(guess, 1)
        while Fraction(M + 1) ** q <= a**p:
            M += 1
        while M > 1 and Fraction(M) ** q > a**p:
            M -= 1
        return M
    b = mpmath.mpf(bound) if not isinstance(bound, Fraction) else mpmath.mpf(bound.numerator) / bound.denominator
    if b < 0:
        return 0
    with iv_context(256) as ctx:
        x = ctx.exp(ctx.mpf(b) if not isinstance(bound, Fraction) else iv_num(ctx, bound))
        lo, hi = int(mpmath.floor(x.a)), int(mpmath.floor(x.b))
    if lo != hi:
        raise ArithmeticError("height bound too close to log of an integer to decide")
    return lo


ALL_PARTS = ("i", "ii", "corollary", "wp", "faltings", "propgeom", "T")
