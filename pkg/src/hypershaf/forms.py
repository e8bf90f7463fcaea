"""Univariate polynomials, binary forms, GL2 pullbacks and discriminants.

Everything is exact.  Discriminants go through a subresultant resultant; the
integer case runs on plain ints, the general case on FieldElements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .numberfield import (
    FieldElement,
    NumberField,
    PlaceSet,
    poly_height,
    prime_support,
    valuation,
)


def _strip(cs: list) -> list:
    while cs and not cs[-1]:
        cs.pop()
    return cs


class Poly:
    """Dense univariate polynomial; ``coeffs[i]`` is the coefficient of X^i."""

    __slots__ = ("field", "coeffs")

    def __init__(self, K: NumberField, coeffs: Sequence = ()):
        cs = [c if isinstance(c, FieldElement) else K(c) for c in coeffs]
        object.__setattr__(self, "field", K)
        object.__setattr__(self, "coeffs", tuple(_strip(cs)))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def from_ints(cls, K: NumberField, ints) -> "Poly":
        return cls(K, [K(c) for c in ints])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> FieldElement:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    @property
    def lc(self) -> FieldElement:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_rational(self) -> bool:
        return all(c.b == 0 for c in self.coeffs)

    def int_coeffs(self) -> list[int] | None:
        """Coefficients as Python ints when all are rational integers."""
        out = []
        for c in self.coeffs:
            if c.b or c.a.denominator != 1:
                return None
            out.append(c.a.numerator)
        return out

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if self.is_zero() or other.is_zero():
                return Poly(self.field)
            out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
            return Poly(self.field, out)
        return Poly(self.field, [c * other for c in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly(self.field, [self.field.one])
        for _ in range(k):
            out = out * self
        return out

    def derivative(self) -> "Poly":
        return Poly(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def substitute_linear(self, a, b) -> "Poly":
        """f(a*X + b)."""
        K = self.field
        lin = Poly(K, [K(b) if not isinstance(b, FieldElement) else b, a])
        out = Poly(K)
        for c in reversed(self.coeffs):
            out = out * lin + Poly(K, [c])
        return out

    def shift(self, tau) -> "Poly":
        """f(X + tau)."""
        return self.substitute_linear(self.field.one, tau)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def height(self):
        return poly_height(self.coeffs)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            cs = str(c)
            if c.b:
                cs = f"({cs})"
            if mono:
                if c == 1:
                    t = mono
                elif c == -1:
                    t = "-" + mono
                else:
                    t = f"{cs}*{mono}"
            else:
                t = cs
            terms.append(t)
        s = " + ".join(terms)
        return s.replace("+ -", "- ")

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]


class BinaryForm:
    """G(X, Y) = sum_i beta_i X^(n-i) Y^i with ``coeffs = (beta_0, ..., beta_n)``."""

    __slots__ = ("field", "coeffs")

    def __init__(self, K: NumberField, coeffs: Sequence):
        cs = tuple(c if isinstance(c, FieldElement) else K(c) for c in coeffs)
        if len(cs) < 2:
            raise ValueError("binary form needs degree >= 1")
        if not any(cs):
            raise ValueError("binary form is identically zero")
        object.__setattr__(self, "field", K)
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("BinaryForm is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def dehomogenize(self) -> Poly:
        """F(X, 1)."""
        n = self.degree
        return Poly(self.field, [self.coeffs[n - k] for k in range(n + 1)])

    def scale(self, alpha) -> "BinaryForm":
        return BinaryForm(self.field, [c * alpha for c in self.coeffs])

    def __call__(self, x, y):
        n = self.degree
        return sum((c * x ** (n - i) * y**i for i, c in enumerate(self.coeffs)), self.field.zero)

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def height(self):
        return poly_height(self.coeffs)

    def int_coeffs(self) -> list[int] | None:
        out = []
        for c in self.coeffs:
            if c.b or c.a.denominator != 1:
                return None
            out.append(c.a.numerator)
        return out

    def __repr__(self):
        return f"BinaryForm({self})"

    def __str__(self):
        n = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            parts = []
            if n - i:
                parts.append("x" if n - i == 1 else f"x^{n - i}")
            if i:
                parts.append("y" if i == 1 else f"y^{i}")
            mono = "*".join(parts)
            cs = f"({c})" if c.b else str(c)
            if c == 1:
                t = mono or "1"
            elif c == -1:
                t = "-" + (mono or "1")
            else:
                t = f"{cs}*{mono}" if mono else cs
            terms.append(t)
        return " + ".join(terms).replace("+ -", "- ")


@dataclass(frozen=True)
class GL2Matrix:
    """(alpha beta; gamma delta) acting on forms by G(aX + bY, cX + dY)."""

    a: FieldElement
    b: FieldElement
    c: FieldElement
    d: FieldElement

    @classmethod
    def of(cls, K: NumberField, a, b, c, d) -> "GL2Matrix":
        return cls(K(a), K(b), K(c), K(d))

    @classmethod
    def identity(cls, K: NumberField) -> "GL2Matrix":
        return cls.of(K, 1, 0, 0, 1)

    @property
    def field(self) -> NumberField:
        return self.a.field

    @property
    def det(self) -> FieldElement:
        return self.a * self.d - self.b * self.c

    def is_sl2(self) -> bool:
        return self.det == 1

    def is_integral_over(self, T: PlaceSet) -> bool:
        return all(T.is_integral(x) for x in (self.a, self.b, self.c, self.d))

    def in_gl2(self, T: PlaceSet) -> bool:
        """Entries in O_T and determinant a T-unit."""
        return self.is_integral_over(T) and T.is_unit(self.det)

    def __matmul__(self, o: "GL2Matrix") -> "GL2Matrix":
        return GL2Matrix(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def inverse(self) -> "GL2Matrix":
        D = self.det
        if not D:
            raise ZeroDivisionError("singular matrix")
        return GL2Matrix(self.d / D, -self.b / D, -self.c / D, self.a / D)

    def entries(self) -> list[list[str]]:
        return [[str(self.a), str(self.b)], [str(self.c), str(self.d)]]

    def __str__(self):
        return f"({self.a} {self.b}; {self.c} {self.d})"


def homogenize(f: Poly, n: int) -> BinaryForm:
    """F(X, Y) = Y^n f(X/Y)."""
    if f.is_zero():
        raise ValueError("cannot homogenize the zero polynomial")
    if n < f.degree:
        raise ValueError(f"n = {n} is below deg f = {f.degree}")
    return BinaryForm(f.field, [f.coeff(n - i) for i in range(n + 1)])


def _lin_powers(p, q, n, K):
    # coefficient lists (index = power of Y) of (p X + q Y)^k for k = 0..n
    out = [[K.one]]
    for _ in range(n):
        prev = out[-1]
        nxt = [K.zero] * (len(prev) + 1)
        for i, c in enumerate(prev):
            nxt[i] = nxt[i] + c * p
            nxt[i + 1] = nxt[i + 1] + c * q
        out.append(nxt)
    return out


def pullback(psi: GL2Matrix, G: BinaryForm) -> BinaryForm:
    """psi*G (X, Y) = G(aX + bY, cX + dY)."""
    if not psi.det:
        raise ValueError("pullback by a singular matrix")
    K = G.field
    n = G.degree
    P = _lin_powers(psi.a, psi.b, n, K)
    Q = _lin_powers(psi.c, psi.d, n, K)
    out = [K.zero] * (n + 1)
    for i, beta in enumerate(G.coeffs):
        if not beta:
            continue
        # beta * (aX + bY)^(n-i) * (cX + dY)^i; index = power of Y
        A, B = P[n - i], Q[i]
        for j, x in enumerate(A):
            if not x:
                continue
            bx = beta * x
            for k, y in enumerate(B):
                if y:
                    out[j + k] = out[j + k] + bx * y
    return BinaryForm(K, out)


# ---------------------------------------------------------------------------
# Resultants and discriminants
# ---------------------------------------------------------------------------


def _int_pseudo_rem(A: list[int], B: list[int]) -> list[int]:
    # lists are high -> low; returns lc(B)^(degA-degB+1) * A mod B
    A = list(A)
    lb = B[0]
    db = len(B) - 1
    e = len(A) - len(B) + 1
    while len(A) - 1 >= db and A:
        q = A[0]
        A = [lb * x for x in A]
        for i in range(len(B)):
            A[i] -= q * B[i]
        A.pop(0)
        e -= 1
        while A and A[0] == 0:
            A.pop(0)
    return [x * lb**e for x in A] if e > 0 else A


def _int_resultant(A: list[int], B: list[int]) -> int:
    """Subresultant resultant of integer polynomials (lists high -> low)."""
    if not A or not B:
        return 0
    dA, dB = len(A) - 1, len(B) - 1
    if dA == 0:
        return A[0] ** dB
    if dB == 0:
        return B[0] ** dA
    a = math.gcd(*A)
    b = math.gcd(*B)
    A = [x // a for x in A]
    B = [x // b for x in B]
    t = a**dB * b**dA
    s = 1
    if dA < dB:
        A, B = B, A
        if dA % 2 and dB % 2:
            s = -1
    g = h = 1
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 and dB % 2:
            s = -s
        R = _int_pseudo_rem(A, B)
        if not R:
            return 0
        A = B
        B = [x // (g * h**delta) for x in R]
        g = A[0]
        if delta:
            h = g**delta // h ** (delta - 1)
        if len(B) == 1:
            dA = len(A) - 1
            return s * t * (B[0] ** dA // h ** (dA - 1))


def _gen_pseudo_rem(A, B, K):
    A = list(A)
    lb = B[0]
    db = len(B) - 1
    while A and len(A) - 1 >= db:
        q = A[0] / lb
        for i in range(len(B)):
            A[i] = A[i] - q * B[i]
        A.pop(0)
        while A and not A[0]:
            A.pop(0)
    return A


def _gen_resultant(A, B, K) -> FieldElement:
    """Resultant over a field by the Euclidean algorithm (lists high -> low)."""
    if not A or not B:
        return K.zero
    res = K.one
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        if dB == 0:
            return res * B[0] ** dA
        R = _gen_pseudo_rem(A, B, K)
        if not R:
            return K.zero
        dR = len(R) - 1
        # Res(A, B) = (-1)^(dA dB) lc(B)^(dA - dR) Res(B, R)
        if (dA * dB) % 2:
            res = -res
        res = res * B[0] ** (dA - dR)
        A, B = B, R


def resultant(f: Poly, g: Poly) -> FieldElement:
    K = f.field
    fi, gi = f.int_coeffs(), g.int_coeffs()
    if fi is not None and gi is not None:
        return K(_int_resultant(fi[::-1], gi[::-1]))
    return _gen_resultant(list(f.coeffs[::-1]), list(g.coeffs[::-1]), K)


def disc_int(cs: list[int]) -> int:
    """Discriminant of an integer polynomial given low -> high."""
    n = len(cs) - 1
    if n < 1 or cs[-1] == 0:
        raise ValueError("need a polynomial of degree >= 1")
    if n == 1:
        return 1
    A = cs[::-1]
    dA = [c * (n - i) for i, c in enumerate(A[:-1])]
    r = _int_resultant(A, dA)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    q, rem = divmod(sign * r, A[0])
    assert rem == 0
    return q


def disc_poly(f: Poly) -> FieldElement:
    """(-1)^(n(n-1)/2) Res(f, f') / lc(f)."""
    n = f.degree
    K = f.field
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return K.one
    if f.is_rational():
        L = math.lcm(*(c.a.denominator for c in f.coeffs))
        ints = [int(c.a * L) for c in f.coeffs]
        return K(Fraction(disc_int(ints), L ** (2 * n - 2)))
    r = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return r * sign / f.lc


SHEAR = (1, 0, 1, 1)


def disc_form(G: BinaryForm) -> FieldElement:
    """Discriminant of a binary form; shears (1 0; 1 1) until beta_0 != 0."""
    K = G.field
    n = G.degree
    if n == 1:
        return K.one
    H = G
    sh = GL2Matrix.of(K, *SHEAR)
    for _ in range(n + 2):
        if H.coeffs[0]:
            return disc_poly(H.dehomogenize())
        H = pullback(sh, H)
    raise AssertionError("shear failed to clear the root at infinity")


def separable(f: Poly) -> bool:
    if f.degree < 1:
        raise ValueError("separability needs degree >= 1")
    return bool(disc_poly(f))


# ---------------------------------------------------------------------------
# Laws and the d_T invariant
# ---------------------------------------------------------------------------


@dataclass
class LawReport:
    law: str
    ok: bool
    lhs: str = ""
    rhs: str = ""
    detail: dict = field(default_factory=dict)


def disc_transform_check(psi: GL2Matrix, G: BinaryForm, alpha=None) -> list[LawReport]:
    """Check Delta(psi*G) = det^(n(n-1)) Delta(G) and Delta(alpha G) = alpha^(2n-2) Delta(G)."""
    n = G.degree
    D = disc_form(G)
    out = []
    lhs = disc_form(pullback(psi, G))
    rhs = psi.det ** (n * (n - 1)) * D
    out.append(LawReport("pullback", lhs == rhs, str(lhs), str(rhs)))
    if alpha is None:
        alpha = G.field(3)
    lhs = disc_form(G.scale(alpha))
    rhs = alpha ** (2 * n - 2) * D
    out.append(LawReport("scaling", lhs == rhs, str(lhs), str(rhs)))
    return out


def content_valuation(G: BinaryForm, P) -> int:
    return min(valuation(c, P) for c in G.coeffs if c)


def d_T_invariant(G: BinaryForm, T: PlaceSet) -> list[tuple]:
    """Factored fractional ideal (Delta(G)) / (G)^(2n-2) away from T.

    Returned as a sorted list of (prime, exponent) with nonzero exponents;
    the empty list is the unit ideal.
    """
    n = G.degree
    D = disc_form(G)
    if not D:
        raise ValueError("d_T of an inseparable form")
    primes = set(prime_support(D))
    for c in G.coeffs:
        if c:
            primes.update(prime_support(c))
    out = []
    for P in sorted(primes):
        if P in T:
            continue
        e = valuation(D, P) - (2 * n - 2) * content_valuation(G, P)
        if e:
            out.append((P, e))
    return out
