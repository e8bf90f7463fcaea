"""Exhaustive solver for the S-unit equation x + y = 1 over Q.

Writing x = u/w and y = v/w with u + v = w coprime, the height bound
h(x), h(y) <= B forces |u|, |v|, |w| <= M = floor(exp(B)), so u and v range
over T-smooth integers up to M: exponents |a_p| <= log_p M for each p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bounds import log_cap
from .limits import check_work
from .numberfield import PlaceSet, UnsupportedFieldError, height, vp


@dataclass(frozen=True, order=True)
class SUnitSolution:
    x: Fraction
    y: Fraction
    x_exponents: tuple = ()
    y_exponents: tuple = ()

    def to_json(self) -> dict:
        return {
            "x": str(self.x),
            "y": str(self.y),
            "x_exponents": list(self.x_exponents),
            "y_exponents": list(self.y_exponents),
        }


def smooth_numbers(primes: list[int], M: int) -> list[int]:
    """All positive integers <= M supported on the given primes."""
    out = [1]
    for p in primes:
        nxt = []
        for a in out:
            x = a
            while x <= M:
                nxt.append(x)
                x *= p
        out = nxt
    return sorted(out)


def _exponents(x: Fraction, primes, K) -> tuple:
    sign = 0 if x > 0 else 1
    return (sign,) + tuple(vp(x, p) for p in primes)


def solve_sunit_equation(T: PlaceSet, height_bound, limit: int | None = None) -> list[SUnitSolution]:
    """All (x, y) with x + y = 1, x, y T-units, h(x), h(y) <= height_bound."""
    K = T.field
    if not K.is_rational:
        raise UnsupportedFieldError("the S-unit solver works over Q only")
    primes = T.residue_chars
    M = log_cap(height_bound)
    if M < 1:
        return []
    box = [math.floor(math.log(M, p)) + 1 for p in primes]
    check_work(math.prod(box) ** 2, "S-unit exponent box", limit)
    sm = smooth_numbers(primes, M)
    smooth = set(sm)
    found = set()
    for u in sm:
        for v in sm:
            if math.gcd(u, v) != 1:
                continue
            for su, sv in ((1, 1), (1, -1), (-1, 1)):
                w = su * u + sv * v
                if w == 0 or abs(w) > M or abs(w) not in smooth:
                    continue
                found.add((Fraction(su * u, w), Fraction(sv * v, w)))
    out = []
    for x, y in found:
        hx, hy = height(K(x)), height(K(y))
        if hx > height_bound_as_log(height_bound) or hy > height_bound_as_log(height_bound):
            continue
        out.append(SUnitSolution(x, y, _exponents(x, primes, K), _exponents(y, primes, K)))
    return sorted(out)


def height_bound_as_log(b):
    """Normalise a height bound for comparison with ExactLog heights."""
    from .numberfield import ExactLog

    if isinstance(b, ExactLog):
        return b
    return Fraction(b) if not isinstance(b, float) else b
