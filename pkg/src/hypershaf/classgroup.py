"""Class groups of imaginary quadratic fields via reduced binary quadratic forms.

An ideal ``[a, (-b + sqrt(D))/2]`` corresponds to the form ``(a, b, c)`` of
discriminant ``D = -D_K``.  Prime ideals ``(ell, omega - r)`` map to
``(ell, b, (b^2 + D_K) / (4 ell))`` with ``b = 2r - 1`` or ``b = 2r``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .numberfield import (
    ExactLog,
    FieldElement,
    NumberField,
    PlaceSet,
    PrimeIdeal,
    height,
    isprime,
    valuation,
)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, u, v) with u*a + v*b = g = gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True, order=True)
class QuadForm:
    """Positive definite binary quadratic form a x^2 + b x y + c y^2."""

    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def reduce(self) -> "QuadForm":
        a, b, c = self.a, self.b, self.c
        while True:
            if not (-a < b <= a):
                # translate b into (-a, a]
                k = (a - b) // (2 * a)
                b, c = b + 2 * k * a, a * k * k + b * k + c
            if a > c:
                a, b, c = c, -b, a
                continue
            if a == c and b < 0:
                b = -b
            return QuadForm(a, b, c)

    def inverse(self) -> "QuadForm":
        return QuadForm(self.a, -self.b, self.c).reduce()

    def compose(self, other: "QuadForm") -> "QuadForm":
        a1, b1, c1 = self.a, self.b, self.c
        a2, b2, c2 = other.a, other.b, other.c
        D = self.disc
        if other.disc != D:
            raise ValueError("forms of different discriminants")
        if a1 > a2:
            a1, b1, c1, a2, b2, c2 = a2, b2, c2, a1, b1, c1
        s = (b1 + b2) // 2
        n = b2 - s
        if a2 % a1 == 0:
            y1, d = 0, a1
        else:
            d, u, _ = _xgcd(a2, a1)
            y1 = u
        if s % d == 0:
            y2, x2, d1 = -1, 0, d
        else:
            d1, u, v = _xgcd(s, d)
            x2, y2 = u, -v
        v1 = a1 // d1
        v2 = a2 // d1
        r = (y1 * y2 * n - x2 * c2) % v1
        b3 = b2 + 2 * v2 * r
        a3 = v1 * v2
        c3 = (b3 * b3 - D) // (4 * a3)
        return QuadForm(a3, b3, c3).reduce()

    def __mul__(self, other):
        return self.compose(other)

    def __pow__(self, k: int) -> "QuadForm":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = identity_form(self.disc)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out


def identity_form(D: int) -> QuadForm:
    if D % 4 == 0:
        return QuadForm(1, 0, -D // 4)
    return QuadForm(1, 1, (1 - D) // 4)


@lru_cache(maxsize=None)
def reduced_forms(D: int) -> tuple[QuadForm, ...]:
    """All reduced primitive positive definite forms of discriminant D < 0."""
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a:
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            f = QuadForm(a, b, c)
            if f.is_reduced():
                out.append(f)
        a += 1
    return tuple(sorted(out))


@dataclass(frozen=True)
class ClassGroup:
    field: NumberField
    forms: tuple

    @property
    def order(self) -> int:
        return len(self.forms)

    @property
    def identity(self) -> QuadForm:
        return identity_form(-self.field.disc_abs)


def class_group(K: NumberField) -> ClassGroup:
    if K.is_rational:
        return ClassGroup(K, (QuadForm(1, 0, 0),))
    return ClassGroup(K, reduced_forms(-K.disc_abs))


def class_number(K: NumberField) -> int:
    return class_group(K).order


def prime_class(P: PrimeIdeal) -> QuadForm:
    """Reduced form representing the ideal class of P."""
    K = P.field
    if K.is_rational:
        return QuadForm(1, 0, 0)
    D = -K.disc_abs
    if P.kind == "inert":
        return identity_form(D)
    b = 2 * P.r - 1 if K.d % 4 == 3 else 2 * P.r
    c = (b * b - D) // (4 * P.ell)
    return QuadForm(P.ell, b, c).reduce()


def generated_subgroup(gens, D: int) -> dict[QuadForm, tuple[int, ...]]:
    """Closure of gens, each element mapped to a nonnegative exponent vector."""
    e = identity_form(D)
    seen = {e: (0,) * len(gens)}
    frontier = [e]
    while frontier:
        nxt = []
        for f in frontier:
            ex = seen[f]
            for i, g in enumerate(gens):
                h = f * g
                if h not in seen:
                    seen[h] = ex[:i] + (ex[i] + 1,) + ex[i + 1 :]
                    nxt.append(h)
        frontier = nxt
    return seen


def s_class_number(K: NumberField, S: PlaceSet) -> int:
    """Order of Cl(O_S) = Cl(K) / <classes of S>."""
    if K.is_rational:
        return 1
    D = -K.disc_abs
    H = generated_subgroup([prime_class(P) for P in S.sorted()], D)
    return class_number(K) // len(H)


# ---------------------------------------------------------------------------
# Extending S to make O_T a PID
# ---------------------------------------------------------------------------


@dataclass
class ExtensionReport:
    S: PlaceSet
    T: PlaceSet
    added: list
    h_K: int
    h_S: int
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _small_primes(K: NumberField) -> list[PrimeIdeal]:
    """Prime ideals of norm <= sqrt(D_K), in tie-break order."""
    DK = K.disc_abs
    out = []
    ell = 2
    while ell * ell <= DK:
        if isprime(ell):
            out.extend(P for P in K.primes_above(ell) if P.norm * P.norm <= DK)
        ell += 1
    return sorted(out)


def extend_to_pid_report(K: NumberField, S: PlaceSet) -> ExtensionReport:
    if S.field != K:
        raise TypeError("S is not a set of places of K")
    if K.is_rational:
        return ExtensionReport(S, S, [], 1, 1, {"pid": True})
    D = -K.disc_abs
    gens = [prime_class(P) for P in S.sorted()]
    H = generated_subgroup(gens, D)
    hK = class_number(K)
    hS = hK // len(H)
    added = []
    T = S
    candidates = _small_primes(K)
    while len(H) < hK:
        for P in candidates:
            if P in T:
                continue
            if prime_class(P) not in H:
                break
        else:
            raise RuntimeError(f"no prime of norm <= sqrt(D_K) generates Cl({K}) mod <S>")
        added.append(P)
        T = T.union([P])
        gens.append(prime_class(P))
        H = generated_subgroup(gens, D)
    DK = K.disc_abs
    ratio_sq = (T.N // S.N) ** 2
    k = len(added)
    checks = {
        "pid": s_class_number(K, T) == 1,
        "count": 2**k <= hS,  # t <= s + floor(lambda_S)
        "norms": all(P.norm * P.norm <= DK for P in added),
        # N_T <= N_S * D_K^(lambda_S/2): (N_T/N_S)^2 <= D_K^k and 2^k <= h_S
        "N_T": ratio_sq <= DK**k and 2**k <= hS,
        "p_T": T.p <= max(2, S.p, math.isqrt(DK)),
    }
    return ExtensionReport(S, T, added, hK, hS, checks)


def extend_to_pid(K: NumberField, S: PlaceSet) -> PlaceSet:
    """Smallest deterministic T containing S with O_T a PID."""
    rep = extend_to_pid_report(K, S)
    if not rep.ok:
        bad = [k for k, v in rep.checks.items() if not v]
        raise AssertionError(f"extension guarantees violated: {bad}")
    return rep.T


# ---------------------------------------------------------------------------
# S-unit groups
# ---------------------------------------------------------------------------


def elements_of_norm(K: NumberField, N: int):
    """All integral x + y*omega of norm N, sorted."""
    if K.is_rational:
        r = math.isqrt(N)
        return [K(r), K(-r)] if r * r == N else []
    t, n = K.omega_minpoly
    DK = K.disc_abs
    out = []
    ymax = math.isqrt(4 * N // DK) + 1
    for y in range(-ymax, ymax + 1):
        disc = 4 * N - DK * y * y
        if disc < 0:
            continue
        s = math.isqrt(disc)
        if s * s != disc:
            continue
        for sg in {s, -s}:
            num = -t * y + sg
            if num % 2 == 0:
                out.append(K.from_int_coords(num // 2, y))
    return out


def canonical_associate(alpha: FieldElement) -> FieldElement:
    """Deterministic representative of alpha modulo roots of unity."""
    K = alpha.field
    return max((z * alpha for z in K.roots_of_unity()), key=lambda x: (x.a, x.b))


def principal_generator(K: NumberField, exps: dict) -> FieldElement:
    """Generator of the principal integral ideal prod P^e (all e >= 0)."""
    N = math.prod(P.norm**e for P, e in exps.items())
    if K.is_rational:
        return K(N)
    for alpha in sorted(elements_of_norm(K, N), key=lambda x: (x.a, x.b)):
        if all(valuation(alpha, P) == e for P, e in exps.items()):
            return canonical_associate(alpha)
    raise ValueError("ideal is not principal")


@dataclass(frozen=True)
class SUnitGroup:
    """O_T^* = <torsion> x <free generators>.

    ``rows[i]`` is the valuation vector (over ``places``) of generator i; the
    rows form a lower triangular basis of the lattice of principal divisors
    supported on T, so any T-unit decomposes by back substitution.
    """

    field: NumberField
    places: tuple
    torsion: FieldElement
    torsion_order: int
    generators: tuple
    rows: tuple

    @property
    def rank(self) -> int:
        return len(self.generators)

    def heights(self) -> list[ExactLog]:
        return [height(e) for e in self.generators]

    def exponents(self, u: FieldElement) -> tuple[int, list[int]]:
        """(r, a) with u = torsion^r * prod gen_i^a_i; ValueError if not a T-unit."""
        if not u:
            raise ValueError("zero is not a T-unit")
        t = len(self.places)
        vals = [valuation(u, P) for P in self.places]
        a = [0] * t
        for i in range(t - 1, -1, -1):
            d = self.rows[i][i]
            if vals[i] % d:
                raise ValueError("valuation vector outside the principal lattice")
            a[i] = vals[i] // d
            for j in range(i + 1):
                vals[j] -= a[i] * self.rows[i][j]
        if any(vals):
            raise ValueError(f"{u} is not a T-unit")
        rest = u
        for gi, ai in zip(self.generators, a):
            if ai:
                rest = rest / gi**ai
        roots = self.field.roots_of_unity()
        for r, z in enumerate(roots):
            if rest == z:
                return r, a
        raise ValueError(f"{u} is not a T-unit")


def sunit_group(K: NumberField, T: PlaceSet) -> SUnitGroup:
    places = tuple(T.sorted())
    D = -K.disc_abs if not K.is_rational else None
    rows = []
    gens = []
    for i, P in enumerate(places):
        if K.is_rational:
            row = [0] * len(places)
            row[i] = 1
            rows.append(tuple(row))
            gens.append(K(P.ell))
            continue
        prev = [prime_class(Q) for Q in places[:i]]
        H = generated_subgroup(prev, D)
        c = prime_class(P)
        k, ck = 1, c
        while ck not in H:
            k += 1
            ck = ck * c
        x = list(H[ck.inverse()])  # prod prev^x = class of P^(-k)
        row = x + [k] + [0] * (len(places) - i - 1)
        exps = {Q: e for Q, e in zip(places, row) if e}
        gens.append(principal_generator(K, exps))
        rows.append(tuple(row))
    return SUnitGroup(K, places, K.torsion_generator, K.torsion_order, tuple(gens), tuple(rows))
