"""Randomized exact checks of the discriminant transformation laws.

Four laws are exercised on seeded random corpora over Q and a few imaginary
quadratic fields:

pullback  Delta(psi* G) = det(psi)^(n(n-1)) Delta(G)
scaling   Delta(a G) = a^(2n-2) Delta(G)
dehom     Delta(F) = Delta(f) for F the degree-n homogenization of f
          (lc(f)^2 Delta(f) when deg f = n - 1)
model     Delta = lam^(4(2g+1)) det(phi)^(-2(g+1)(2g+1)) Delta' for
          l = lam^-2 (phi* F)(X, 1)
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

from .forms import BinaryForm, GL2Matrix, Poly, disc_form, disc_poly, homogenize, pullback
from .numberfield import NumberField
from .weierstrass import change_variables, make_model, model_discriminant

DEFAULT_FIELDS = (0, 1, 5, 23)
LAWS = ("pullback", "scaling", "dehom", "model")


def _rand_rat(rng: random.Random, size: int, frac: bool) -> Fraction:
    num = rng.randint(-size, size)
    if frac and rng.random() < 0.3:
        return Fraction(num, rng.randint(1, 4))
    return Fraction(num)


def _rand_elt(K: NumberField, rng, size=9, frac=True):
    if K.is_rational:
        return K(_rand_rat(rng, size, frac))
    return K(_rand_rat(rng, size, frac), _rand_rat(rng, size // 2 or 1, frac))


def _nonzero(K, rng, size=9, frac=True):
    while True:
        x = _rand_elt(K, rng, size, frac)
        if x:
            return x


def _rand_matrix(K, rng):
    while True:
        M = GL2Matrix(*(_rand_elt(K, rng, 4) for _ in range(4)))
        if M.det:
            return M


def _rand_form(K, rng, n):
    while True:
        cs = [_rand_elt(K, rng) for _ in range(n + 1)]
        if any(cs):
            G = BinaryForm(K, cs)
            if disc_form(G):
                return G


def _rand_model_poly(K, rng, g):
    n = rng.choice((2 * g + 1, 2 * g + 2))
    while True:
        cs = [_rand_elt(K, rng, 6) for _ in range(n)] + [_nonzero(K, rng, 3)]
        f = Poly(K, cs)
        if f.degree == n and model_discriminant(f, None, g):
            return f


def check_pullback(K, rng):
    n = rng.randint(2, 6)
    G = _rand_form(K, rng, n)
    psi = _rand_matrix(K, rng)
    lhs = disc_form(pullback(psi, G))
    rhs = psi.det ** (n * (n - 1)) * disc_form(G)
    return lhs == rhs, lhs, rhs


def check_scaling(K, rng):
    n = rng.randint(2, 6)
    G = _rand_form(K, rng, n)
    a = _nonzero(K, rng)
    lhs = disc_form(G.scale(a))
    rhs = a ** (2 * n - 2) * disc_form(G)
    return lhs == rhs, lhs, rhs


def check_dehom(K, rng):
    n = rng.randint(2, 6)
    while True:
        cs = [_rand_elt(K, rng) for _ in range(n)] + [_nonzero(K, rng)]
        f = Poly(K, cs)
        if disc_poly(f):
            break
    if rng.random() < 0.3:
        F = homogenize(f, n + 1)  # root at infinity
        lhs, rhs = disc_form(F), f.lc**2 * disc_poly(f)
    else:
        F = homogenize(f, n)
        lhs, rhs = disc_form(F), disc_poly(f)
    return lhs == rhs, lhs, rhs


def check_model(K, rng):
    g = rng.choice((1, 1, 2))
    f = _rand_model_poly(K, rng, g)
    model = make_model(f, g, None, check_integral=False)
    while True:
        phi = _rand_matrix(K, rng)
        lam = _nonzero(K, rng, 5)
        F = homogenize(f, 2 * g + 2)
        l = pullback(phi, F).dehomogenize() * (lam**-2)
        if 2 * g + 1 <= l.degree:
            break
    new = model_discriminant(l, None, g)
    lhs = model.disc
    rhs = lam ** (4 * (2 * g + 1)) * phi.det ** (-2 * (g + 1) * (2 * g + 1)) * new
    ok = lhs == rhs
    if ok:
        # the library routine must agree with the direct computation
        try:
            ok = change_variables(model, phi, lam).disc == new
        except ArithmeticError:
            ok = False
    return ok, lhs, rhs


_CHECKS = {
    "pullback": check_pullback,
    "scaling": check_scaling,
    "dehom": check_dehom,
    "model": check_model,
}


def verify_laws(trials: int = 1000, seed: int = 0, fields=DEFAULT_FIELDS, laws=LAWS) -> dict:
    """Run ``trials`` checks of each law; returns a JSON-ready report."""
    rng = random.Random(seed)
    Ks = [NumberField(d) for d in fields]
    report = {"trials": trials, "seed": seed, "fields": [str(K) for K in Ks], "laws": {}}
    failures = []
    t0 = time.perf_counter()
    for name in laws:
        fn = _CHECKS[name]
        bad = 0
        for i in range(trials):
            K = Ks[i % len(Ks)]
            ok, lhs, rhs = fn(K, rng)
            if not ok:
                bad += 1
                if len(failures) < 10:
                    failures.append({"law": name, "field": str(K), "lhs": str(lhs), "rhs": str(rhs)})
        report["laws"][name] = {"checked": trials, "violations": bad}
    report["violations"] = sum(v["violations"] for v in report["laws"].values())
    report["failures"] = failures
    report["ok"] = report["violations"] == 0
    report["_seconds"] = time.perf_counter() - t0
    return report
