"""Exact arithmetic in Q and imaginary quadratic fields Q(sqrt(-d)).

Elements are pairs of rationals ``a + b*sqrt(-d)``.  Finite places are
prime ideals of the ring of integers; because the ring of integers of an
imaginary quadratic field is monogenic (generated by ``omega``), every prime
above ``ell`` has the shape ``(ell, omega - r)`` with ``r`` a root of the
minimal polynomial of ``omega`` modulo ``ell`` (Dedekind-Kummer).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache, total_ordering
from typing import Iterable, NamedTuple

from sympy import factorint, isprime


class UnsupportedFieldError(ValueError):
    """Raised for fields outside Q and imaginary quadratic fields."""


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(n).values())


def vp(x, p: int) -> int:
    """p-adic valuation of a nonzero integer or Fraction."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    num, den = x.numerator, x.denominator
    k = 0
    while num % p == 0:
        num //= p
        k += 1
    while den % p == 0:
        den //= p
        k -= 1
    return k


@lru_cache(maxsize=4096)
def factor_int(n: int) -> tuple[tuple[int, int], ...]:
    """Sorted prime factorization of |n| as ((p, e), ...)."""
    n = abs(n)
    if n <= 1:
        return ()
    return tuple(sorted(factorint(n).items()))


def factor_rational(x) -> tuple[tuple[int, int], ...]:
    x = Fraction(x)
    out = dict(factor_int(x.numerator))
    for p, e in factor_int(x.denominator):
        out[p] = out.get(p, 0) - e
    return tuple(sorted(out.items()))


# ---------------------------------------------------------------------------
# Fields and elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NumberField:
    """Q (``d == 0``) or the imaginary quadratic field Q(sqrt(-d))."""

    d: int = 0

    def __post_init__(self):
        if self.d < 0:
            raise UnsupportedFieldError("only Q and imaginary quadratic fields are supported")
        if self.d > 0 and not _squarefree(self.d):
            raise UnsupportedFieldError(f"d = {self.d} is not squarefree")

    @property
    def is_rational(self) -> bool:
        return self.d == 0

    @property
    def degree(self) -> int:
        return 1 if self.d == 0 else 2

    @property
    def disc_abs(self) -> int:
        if self.d == 0:
            return 1
        return self.d if self.d % 4 == 3 else 4 * self.d

    def __str__(self):
        return "Q" if self.d == 0 else f"Q(sqrt(-{self.d}))"

    def __repr__(self):
        return f"NumberField({self})"

    def __call__(self, a=0, b=0) -> "FieldElement":
        if isinstance(a, FieldElement):
            if a.field != self and a.b != 0:
                raise TypeError(f"element of {a.field} is not in {self}")
            return FieldElement(self, a.a, a.b)
        return FieldElement(self, Fraction(a), Fraction(b))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, Fraction(0), Fraction(0))

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, Fraction(1), Fraction(0))

    @property
    def sqrt_neg_d(self) -> "FieldElement":
        if self.d == 0:
            raise UnsupportedFieldError("Q has no sqrt(-d) generator")
        return FieldElement(self, Fraction(0), Fraction(1))

    # -- ring of integers Z[omega] ------------------------------------------------

    @property
    def omega(self) -> "FieldElement":
        if self.d == 0:
            return self.one
        if self.d % 4 == 3:
            return FieldElement(self, Fraction(1, 2), Fraction(1, 2))
        return FieldElement(self, Fraction(0), Fraction(1))

    @property
    def omega_minpoly(self) -> tuple[int, int]:
        """(t, n) with omega a root of x^2 - t*x + n."""
        if self.d % 4 == 3:
            return 1, (1 + self.d) // 4
        return 0, self.d

    def int_coords(self, alpha: "FieldElement") -> tuple[Fraction, Fraction]:
        """Coordinates (x, y) with alpha = x + y*omega."""
        if self.d == 0:
            return alpha.a, Fraction(0)
        if self.d % 4 == 3:
            y = 2 * alpha.b
            return alpha.a - y / 2, y
        return alpha.a, alpha.b

    def from_int_coords(self, x, y) -> "FieldElement":
        return self(x) + self(y) * self.omega if self.d else self(x)

    def is_integral(self, alpha: "FieldElement") -> bool:
        x, y = self.int_coords(alpha)
        return x.denominator == 1 and y.denominator == 1

    def roots_of_unity(self) -> list["FieldElement"]:
        """All roots of unity, ordered as powers of the torsion generator."""
        z = self.torsion_generator
        out = [self.one]
        cur = z
        while cur != self.one:
            out.append(cur)
            cur = cur * z
        return out

    @property
    def torsion_generator(self) -> "FieldElement":
        if self.d == 1:
            return FieldElement(self, Fraction(0), Fraction(1))
        if self.d == 3:
            return FieldElement(self, Fraction(1, 2), Fraction(1, 2))
        return FieldElement(self, Fraction(-1), Fraction(0))

    @property
    def torsion_order(self) -> int:
        return {1: 4, 3: 6}.get(self.d, 2)

    def primes_above(self, ell: int) -> list["PrimeIdeal"]:
        return list(_primes_above(self, ell))

    @classmethod
    def parse(cls, text: str) -> "NumberField":
        from .parsing import parse_field

        return parse_field(text)


QQ = NumberField(0)


class FieldElement:
    """Exact element ``a + b*sqrt(-d)`` of a NumberField."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field: NumberField, a: Fraction, b: Fraction = Fraction(0)):
        if field.d == 0 and b:
            raise ValueError("rational field element with nonzero sqrt part")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                if other.b == 0:
                    return FieldElement(self.field, other.a, Fraction(0))
                if self.b == 0 and self.field.d == 0:
                    raise TypeError("cannot mix Q-typed element with quadratic element implicitly")
                raise TypeError(f"mixed-field arithmetic: {self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, Fraction(other), Fraction(0))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.b and not o.b:
            return FieldElement(self.field, self.a * o.a, Fraction(0))
        d = self.field.d
        return FieldElement(
            self.field,
            self.a * o.a - d * self.b * o.b,
            self.a * o.b + self.b * o.a,
        )

    __rmul__ = __mul__

    def conj(self) -> "FieldElement":
        return FieldElement(self.field, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a + self.field.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def inverse(self) -> "FieldElement":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if not self.b:
            return FieldElement(self.field, 1 / self.a, Fraction(0))
        n = self.norm()
        return FieldElement(self.field, self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.b:
            if not o.a:
                raise ZeroDivisionError("division by zero")
            return FieldElement(self.field, self.a / o.a, self.b / o.a)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.a == other.a and self.b == other.b and (
                self.b == 0 or self.field == other.field
            )
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash(self.a) if not self.b else hash((self.a, self.b, self.field.d))

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_complex(self) -> complex:
        return complex(float(self.a), float(self.b) * math.sqrt(self.field.d))

    def __repr__(self):
        return f"FieldElement({self})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        s = f"sqrt(-{self.field.d})"
        if self.b == 1:
            im = s
        elif self.b == -1:
            im = "-" + s
        else:
            im = f"{self.b}*{s}"
        if not self.a:
            return im
        return f"{self.a}+{im}" if not im.startswith("-") else f"{self.a}{im}"


def element_denominator(alpha: FieldElement) -> int:
    """Least positive integer m with m*alpha integral."""
    x, y = alpha.field.int_coords(alpha)
    return math.lcm(x.denominator, y.denominator)


# ---------------------------------------------------------------------------
# Prime ideals and valuations
# ---------------------------------------------------------------------------

_KIND_ORDER = {"rational-prime": 0, "split": 1, "ramified": 2, "inert": 3}


@total_ordering
@dataclass(frozen=True)
class PrimeIdeal:
    """A finite place of K.

    For quadratic fields the ideal is ``(ell, omega - r)``; ``r`` is None for
    inert and rational primes.
    """

    field: NumberField
    ell: int
    kind: str
    r: int | None = None

    @property
    def norm(self) -> int:
        return self.ell**2 if self.kind == "inert" else self.ell

    @property
    def ramification(self) -> int:
        return 2 if self.kind == "ramified" else 1

    @cached_property
    def second_generator(self) -> FieldElement | None:
        if self.r is None:
            return None
        K = self.field
        pi = K.omega - self.r
        if vp(pi.norm(), self.ell) > 1:
            pi = pi - self.ell
        return pi

    @cached_property
    def _shift(self) -> FieldElement:
        # element t with v_p(t) = -1 and t integral at every other prime
        pi = self.second_generator
        if self.kind == "ramified":
            return pi / self.ell
        return pi.conj() / self.ell

    def sort_key(self):
        return (self.norm, self.ell, _KIND_ORDER[self.kind], -1 if self.r is None else self.r)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def contains(self, alpha: FieldElement) -> bool:
        return valuation(alpha, self) > 0 if alpha else True

    def __str__(self):
        if self.field.is_rational:
            return str(self.ell)
        if self.r is None:
            return f"({self.ell})"
        return f"({self.ell}, {self.second_generator})"

    def __repr__(self):
        return f"PrimeIdeal({self}, {self.kind}, N={self.norm})"


@lru_cache(maxsize=None)
def _primes_above(K: NumberField, ell: int) -> tuple[PrimeIdeal, ...]:
    if not isprime(ell):
        raise ValueError(f"{ell} is not prime")
    if K.is_rational:
        return (PrimeIdeal(K, ell, "rational-prime"),)
    t, n = K.omega_minpoly
    roots = [r for r in range(ell) if (r * r - t * r + n) % ell == 0]
    if not roots:
        return (PrimeIdeal(K, ell, "inert"),)
    if len(roots) == 1:
        return (PrimeIdeal(K, ell, "ramified", roots[0]),)
    return tuple(PrimeIdeal(K, ell, "split", r) for r in roots)


def valuation(alpha: FieldElement, v: PrimeIdeal) -> int:
    """Exact order of v in the fractional ideal (alpha)."""
    if not alpha:
        raise ValueError("valuation of zero is undefined")
    K = v.field
    if alpha.field != K and alpha.b:
        raise TypeError("element and prime live in different fields")
    if K.is_rational:
        return vp(alpha.a, v.ell)
    if v.kind == "inert":
        return vp(alpha.norm(), v.ell) // 2
    m = element_denominator(alpha)
    x = alpha * m if m != 1 else alpha
    k = 0
    t = v._shift
    while True:
        y = x * t
        if not K.is_integral(y):
            break
        x = y
        k += 1
    return k - v.ramification * vp(m, v.ell)


def prime_support(alpha: FieldElement) -> list[PrimeIdeal]:
    """Primes at which alpha has nonzero valuation."""
    if not alpha:
        raise ValueError("zero has no prime support")
    K = alpha.field
    out = []
    for ell, _ in factor_rational(alpha.norm() if not K.is_rational else alpha.a):
        for P in K.primes_above(ell):
            if valuation(alpha, P) != 0:
                out.append(P)
    if not K.is_rational:
        # primes where alpha has a denominator but the norm cancels it
        m = element_denominator(alpha)
        for ell, _ in factor_int(m):
            for P in K.primes_above(ell):
                if P not in out and valuation(alpha, P) != 0:
                    out.append(P)
    return sorted(out)


def factorization(alpha: FieldElement) -> list[tuple[PrimeIdeal, int]]:
    return [(P, valuation(alpha, P)) for P in prime_support(alpha)]


# ---------------------------------------------------------------------------
# Exact logarithms and heights
# ---------------------------------------------------------------------------


@total_ordering
@dataclass(frozen=True)
class ExactLog:
    """The real number ``coeff * log(arg)`` with rational coeff and arg > 0."""

    coeff: Fraction
    arg: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        object.__setattr__(self, "arg", Fraction(self.arg))
        if self.arg <= 0:
            raise ValueError("log argument must be positive")

    @classmethod
    def zero(cls) -> "ExactLog":
        return cls(Fraction(0), Fraction(1))

    def __float__(self):
        a = self.arg
        return float(self.coeff) * (math.log(a.numerator) - math.log(a.denominator))

    def interval(self, prec: int = 128):
        from .bounds import iv_context, iv_log, iv_num

        with iv_context(prec) as iv:
            return iv_num(iv, self.coeff) * iv_log(iv, self.arg)

    def scale(self, k) -> "ExactLog":
        return ExactLog(self.coeff * Fraction(k), self.arg)

    __rmul__ = scale

    def __mul__(self, k):
        return self.scale(k)

    def is_zero(self) -> bool:
        return self.coeff == 0 or self.arg == 1

    def _cmp(self, other) -> int:
        if isinstance(other, ExactLog):
            return _cmp_logs(self, other)
        return _cmp_log_real(self, other)

    def __eq__(self, other):
        if isinstance(other, (ExactLog, int, float, Fraction)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self):
        return hash(float(self))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __str__(self):
        if self.is_zero():
            return "0"
        c = "" if self.coeff == 1 else f"{self.coeff}*"
        return f"{c}log({self.arg})"


_EXACT_BITS = 200_000


def _cmp_logs(x: ExactLog, y: ExactLog) -> int:
    if x.is_zero() and y.is_zero():
        return 0
    L = math.lcm(x.coeff.denominator, y.coeff.denominator)
    ex = int(x.coeff * L)
    ey = int(y.coeff * L)
    bits = abs(ex) * max(x.arg.numerator.bit_length(), x.arg.denominator.bit_length()) + abs(
        ey
    ) * max(y.arg.numerator.bit_length(), y.arg.denominator.bit_length())
    if bits < _EXACT_BITS:
        lhs = x.arg**ex
        rhs = y.arg**ey
        return (lhs > rhs) - (lhs < rhs)
    prec = 128
    while prec < 1 << 16:
        a, b = x.interval(prec), y.interval(prec)
        if a.b < b.a:
            return -1
        if a.a > b.b:
            return 1
        prec *= 4
    raise ArithmeticError("could not separate logarithms")


def _cmp_log_real(x: ExactLog, r) -> int:
    from .bounds import iv_context

    prec = 128
    while prec < 1 << 14:
        a = x.interval(prec)
        from .bounds import iv_num

        with iv_context(prec) as iv:
            b = iv_num(iv, Fraction(r)) if not isinstance(r, float) else iv.mpf(r)
        if a.b < b.a:
            return -1
        if a.a > b.b:
            return 1
        prec *= 4
    return 0


def height(alpha: FieldElement) -> ExactLog:
    """Absolute logarithmic Weil height, returned exactly.

    For alpha in Q written p/q this is log max(|p|, |q|); for quadratic
    irrationalities it is (1/2) log M(minpoly), and the Mahler measure of an
    integer quadratic with complex conjugate roots is max(|lead|, |const|).
    """
    if not alpha:
        return ExactLog.zero()
    if alpha.b == 0:
        a = alpha.a
        return ExactLog(Fraction(1), Fraction(max(abs(a.numerator), a.denominator)))
    t = alpha.trace()
    n = alpha.norm()
    L = math.lcm(t.denominator, n.denominator)
    c0, c1, c2 = L, int(-t * L), int(n * L)
    g = math.gcd(math.gcd(c0, c1), c2)
    return ExactLog(Fraction(1, 2), Fraction(max(abs(c0), abs(c2)) // g))


def poly_height(coeffs: Iterable[FieldElement]) -> ExactLog:
    """Height of the projective point given by the coefficients."""
    cs = [c for c in coeffs if c]
    if not cs:
        raise ValueError("height of the zero polynomial is undefined")
    K = cs[0].field
    if K.is_rational:
        L = math.lcm(*(c.a.denominator for c in cs))
        ints = [int(c.a * L) for c in cs]
        g = math.gcd(*ints)
        return ExactLog(Fraction(1), Fraction(max(abs(i) for i in ints) // g))
    # (1/2) log( max_i N(c_i) * prod_P N(P)^(-min_i v_P(c_i)) )
    value = max(c.norm() for c in cs)
    ells = set()
    for c in cs:
        ells.update(p for p, _ in factor_int(element_denominator(c)))
    c0 = cs[0]
    m = element_denominator(c0)
    ells.update(p for p, _ in factor_rational((c0 * m).norm()))
    for ell in ells:
        for P in K.primes_above(ell):
            e = min(valuation(c, P) for c in cs)
            if e:
                value *= Fraction(P.norm) ** (-e)
    return ExactLog(Fraction(1, 2), value)


# ---------------------------------------------------------------------------
# Place sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlaceSet:
    """A finite set of finite places of K."""

    field: NumberField
    primes: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        ps = frozenset(self.primes)
        for P in ps:
            if P.field != self.field:
                raise TypeError(f"place {P} is not a place of {self.field}")
        object.__setattr__(self, "primes", ps)

    @classmethod
    def of(cls, K: NumberField, items=()) -> "PlaceSet":
        """Build from PrimeIdeals or rational primes (all places above ell)."""
        ps = set()
        for it in items:
            if isinstance(it, PrimeIdeal):
                ps.add(it)
            else:
                ps.update(K.primes_above(int(it)))
        return cls(K, frozenset(ps))

    @classmethod
    def parse(cls, K: NumberField, text: str) -> "PlaceSet":
        from .parsing import parse_places

        return parse_places(text, K)

    def sorted(self) -> list[PrimeIdeal]:
        return sorted(self.primes)

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self):
        return len(self.primes)

    def __contains__(self, P):
        return P in self.primes

    def union(self, other) -> "PlaceSet":
        if isinstance(other, PlaceSet):
            other = other.primes
        return PlaceSet(self.field, self.primes | frozenset(other))

    def with_places_above(self, ell: int) -> "PlaceSet":
        return self.union(self.field.primes_above(ell))

    @property
    def s(self) -> int:
        return len(self.primes)

    @property
    def N(self) -> int:
        return math.prod(P.norm for P in self.primes)

    @property
    def p(self) -> int:
        return max((P.ell for P in self.primes), default=1)

    @property
    def n(self) -> float:
        return math.prod(math.log(P.norm) for P in self.primes)

    @property
    def residue_chars(self) -> list[int]:
        return sorted({P.ell for P in self.primes})

    def inverts(self, ell: int) -> bool:
        """True when ell is a unit of O_T (every place above ell lies in T)."""
        return all(P in self.primes for P in self.field.primes_above(ell))

    def is_unit(self, alpha: FieldElement) -> bool:
        """alpha is a T-unit: nonzero with support inside T."""
        if not alpha:
            return False
        return all(P in self.primes for P in prime_support(alpha))

    def is_integral(self, alpha: FieldElement) -> bool:
        """alpha lies in O_T."""
        if not alpha:
            return True
        K = self.field
        m = element_denominator(alpha)
        for ell, _ in factor_int(m):
            for P in K.primes_above(ell):
                if P not in self.primes and valuation(alpha, P) < 0:
                    return False
        return True

    def __str__(self):
        return "{" + ", ".join(str(P) for P in self.sorted()) + "}"


class PlaceStats(NamedTuple):
    s: int
    sigma: float
    N_S: int
    p: int
    n_S: float
    lambda_S: float
    h_S: int


def place_stats(S: PlaceSet) -> PlaceStats:
    """(s, sigma, N_S, p, n_S, lambda_S) with empty products equal to 1."""
    from .classgroup import s_class_number

    h = s_class_number(S.field, S)
    lam = math.log2(h)
    return PlaceStats(S.s, S.s + lam + 1, S.N, S.p, S.n if S.s else 1.0, lam, h)
