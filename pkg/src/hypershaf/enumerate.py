"""Box search for hyperelliptic curves over Q with T-unit model discriminant.

T is always S together with 2.  Candidates are integer polynomials in a
coefficient box: monic of degree 2g+1 and/or general of degree 2g+2.  The
box is cut into lexicographic cells (values of the top free coefficients);
each cell is filtered with numpy, the survivors are canonicalized, and the
cells are merged by set union on the canonical coefficients.

Canonical forms
---------------
odd monic  : u_reduce -> twist -> translate (center_over_OT) -> clear_denominators.
             Unique per Q-isomorphism class of odd models when g = 1.
even       : integral and primitive up to squares, then SL2(Z) covariant
             reduction of F and of F(X, -Y); the lexicographically larger wins.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
import json
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np
import sympy

from . import __version__
from .classgroup import sunit_group
from .forms import GL2Matrix, Poly, disc_form, disc_int, homogenize, pullback
from .invariants import g1_fingerprint, igusa_clebsch_fingerprint, quartic_j
from .limits import ResourceLimitError, check_work, max_grid
from .numberfield import QQ, PlaceSet, factor_rational, poly_height
from .reduction import UnitBasisU, center_over_OT, sl2_reduce_form, twist_model, u_reduce
from .weierstrass import clear_denominators, make_model, model_discriminant, rational_roots

log = logging.getLogger(__name__)

GRID_MAX = 1 << 21
_INT64_SAFE = 1 << 62

GOOD_REDUCTION_NOTE = (
    "models are smooth outside T = S + {2}; good reduction is certified outside T only"
)


def as_places(S) -> PlaceSet:
    if isinstance(S, PlaceSet):
        if not S.field.is_rational:
            raise ValueError("the enumerator works over Q only")
        return S
    return PlaceSet.of(QQ, [int(p) for p in (S or ())])


def with_two(S) -> PlaceSet:
    return as_places(S).with_places_above(2)


@dataclass(frozen=True)
class SearchSpec:
    genus: int
    S: tuple = ()
    height_box: int = 10
    degree_cases: tuple = ()
    resume_token: tuple | None = None
    max_work: int | None = None

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be >= 1")
        if self.height_box < 1:
            raise ValueError("height_box must be >= 1")
        S = tuple(sorted({int(p) for p in self.S}))
        object.__setattr__(self, "S", S)
        as_places(S)  # validates primality
        g = self.genus
        cases = tuple(sorted(set(self.degree_cases))) or (2 * g + 1,)
        if not set(cases) <= {2 * g + 1, 2 * g + 2}:
            raise ValueError(f"degree cases must be a subset of {{{2 * g + 1}, {2 * g + 2}}}")
        object.__setattr__(self, "degree_cases", cases)

    @property
    def T(self) -> tuple:
        return tuple(sorted(set(self.S) | {2}))

    def key(self) -> dict:
        return {
            "genus": self.genus,
            "S": list(self.S),
            "box": self.height_box,
            "degree_cases": list(self.degree_cases),
        }


# ---------------------------------------------------------------------------
# Records and canonical forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CurveRecord:
    genus: int
    f: tuple  # canonical coefficients c0..cn as Fractions (cn may be 0 for even models)
    delta_sign: int
    delta_factors: tuple
    height_log10: str
    wp: str
    fingerprint: tuple
    tier: str
    field: str = "Q"
    cell: tuple | None = None

    @property
    def key(self) -> tuple:
        return (self.genus, len(self.f), tuple(self.f))

    @property
    def poly(self) -> Poly:
        return Poly(QQ, [QQ(c) for c in self.f])

    @property
    def degree(self) -> int:
        return len(self.f) - 1

    def delta(self) -> int:
        return self.delta_sign * math.prod(p**e for p, e in self.delta_factors)

    def to_json(self) -> dict:
        out = {
            "genus": self.genus,
            "field": self.field,
            "f": [str(c) for c in self.f],
            "delta_sign": self.delta_sign,
            "delta_factors": [[p, e] for p, e in self.delta_factors],
            "height_log10": self.height_log10,
            "wp": self.wp,
            "fingerprint": list(self.fingerprint),
            "tier": self.tier,
        }
        if self.cell is not None:
            out["cell"] = list(self.cell)
        return out

    @classmethod
    def from_json(cls, d: dict) -> "CurveRecord":
        return cls(
            genus=int(d["genus"]),
            f=tuple(Fraction(c) for c in d["f"]),
            delta_sign=int(d["delta_sign"]),
            delta_factors=tuple((int(p), int(e)) for p, e in d["delta_factors"]),
            height_log10=d["height_log10"],
            wp=d["wp"],
            fingerprint=tuple(d["fingerprint"]),
            tier=d["tier"],
            field=d.get("field", "Q"),
            cell=tuple(d["cell"]) if d.get("cell") is not None else None,
        )

    def without_cell(self) -> "CurveRecord":
        return dataclasses.replace(self, cell=None)


@functools.lru_cache(maxsize=64)
def _unit_basis(T_primes: tuple, g: int) -> UnitBasisU:
    T = PlaceSet.of(QQ, T_primes)
    return UnitBasisU(sunit_group(QQ, T), g, True)


def _height_log10(cs) -> str:
    h = poly_height([QQ(c) for c in cs])
    with mpmath.workdps(40):
        v = mpmath.mpf(h.coeff.numerator) / h.coeff.denominator * mpmath.log(h.arg) / mpmath.log(10)
        return mpmath.nstr(v, 15, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)


def _canon_odd(f: Poly, g: int, T: PlaceSet) -> Poly:
    model = make_model(f, g, T)
    if not T.is_unit(model.disc):
        raise ValueError(f"model discriminant {model.disc} is not a T-unit")
    u = u_reduce(model.disc, _unit_basis(tuple(T.residue_chars), g))
    tw = twist_model(model, u.omega)
    _, centred = center_over_OT(tw.f, T)
    _, out = clear_denominators(centred, g, T)
    return out


def _square_free_content(ints: list[int]) -> list[int]:
    c = math.gcd(*ints)
    sq = math.prod(p ** (2 * (e // 2)) for p, e in factor_rational(Fraction(c)))
    return [i // sq for i in ints]


def _canon_even(f: Poly, g: int, T: PlaceSet) -> list[Fraction]:
    n = 2 * g + 2
    for c in f.coeffs:
        if not T.is_integral(c):
            raise ValueError(f"coefficient {c} is not in O_T")
    L = math.lcm(*(c.a.denominator for c in f.coeffs))
    F = homogenize(f, n).scale(QQ(L * L))
    ints = _square_free_content([int(c.a) for c in F.coeffs])
    F = type(F)(QQ, ints)
    best = None
    for flip in (1, -1):
        G = F if flip == 1 else pullback(GL2Matrix.of(QQ, 1, 0, 0, -1), F)
        _, R = sl2_reduce_form(G)
        key = tuple(c.a for c in R.coeffs)
        if best is None or key > best:
            best = key
    # coefficients of F*(X, 1), constant term first, top term kept even if zero
    return list(reversed(best))


def canonical_form(f: Poly, g: int, S=(), degree: int | None = None, cell=None) -> CurveRecord:
    """Canonical record of y^2 = f over Q with model discriminant a T-unit, T = S + {2}.

    ``degree`` overrides deg f for even models whose stored top coefficient is 0.
    """
    if not f.field.is_rational or not f.is_rational():
        raise ValueError("canonical forms are implemented over Q only")
    T = with_two(S)
    n = f.degree if degree is None else degree
    if n not in (2 * g + 1, 2 * g + 2) or f.degree > n:
        raise ValueError(f"degree {n} is outside the window for genus {g}")
    if not model_discriminant(f, None, g) and n == f.degree:
        raise ValueError("inseparable model")
    if n == 2 * g + 1 and f.is_monic():
        cs = [c.a for c in _canon_odd(f, g, T).coeffs]
        odd = True
    else:
        if not disc_form(homogenize(f, 2 * g + 2)):
            raise ValueError("inseparable model")
        Dm = QQ(2) ** (4 * g) * disc_form(homogenize(f, 2 * g + 2))
        if not T.is_unit(Dm):
            raise ValueError(f"model discriminant {Dm} is not a T-unit")
        cs = _canon_even(f, g, T)
        odd = False
    return _record(cs, g, T, odd, cell)


def _model_delta(cs, g: int) -> int:
    """2^(4g) times the discriminant of the degree len(cs)-1 form (lc 1 for odd models)."""
    F = homogenize(Poly(QQ, [QQ(c) for c in cs]), len(cs) - 1)
    return int((QQ(2) ** (4 * g) * disc_form(F)).a)


def _record(cs, g: int, T: PlaceSet, odd: bool, cell) -> CurveRecord:
    cs = [Fraction(c) for c in cs]
    f = Poly(QQ, [QQ(c) for c in cs])
    delta = _model_delta(cs, g)
    if not T.is_unit(QQ(delta)):
        raise ArithmeticError("canonical model lost the T-unit discriminant")
    factors = tuple(factor_rational(Fraction(abs(delta))))
    if odd:
        wp = "yes"
    elif cs[-1] == 0 or rational_roots(f):
        wp = "yes"
    else:
        wp = "unknown"
    if g == 1 and odd:
        fp, tier = g1_fingerprint(f), "exact"
    elif g == 1:
        fp, tier = (str(quartic_j(f)),), "fingerprint"
    elif g == 2:
        fp, tier = igusa_clebsch_fingerprint(f), "fingerprint"
    else:
        fp, tier = tuple(str(c) for c in cs), "heuristic"
    return CurveRecord(
        genus=g,
        f=tuple(cs),
        delta_sign=1 if delta > 0 else -1,
        delta_factors=factors,
        height_log10=_height_log10(cs),
        wp=wp,
        fingerprint=tuple(fp),
        tier=tier,
        cell=tuple(cell) if cell is not None else None,
    )


def record_matches(rec: CurveRecord, S=()) -> bool:
    """Re-derive Delta from f and compare with the stored sign and factorization."""
    T = with_two(S)
    delta = _model_delta(list(rec.f), rec.genus)
    if not delta or not T.is_unit(QQ(delta)):
        return False
    return (1 if delta > 0 else -1) == rec.delta_sign and tuple(
        factor_rational(Fraction(abs(delta)))
    ) == tuple(rec.delta_factors)


# ---------------------------------------------------------------------------
# Vectorized search
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def generic_discriminant(n: int, monic: bool) -> tuple:
    """Terms (coef, exps) of Delta(c_n x^n + ... + c_0) in c_0..c_n (c_n = 1 when monic)."""
    x = sympy.Symbol("x")
    cs = sympy.symbols(f"c0:{n + 1}")
    P = sum(cs[i] * x**i for i in range(n + 1))
    D = sympy.discriminant(P, x)
    if monic:
        D = D.subs(cs[n], 1)
    poly = sympy.Poly(sympy.expand(D), *cs)
    return tuple((int(c), tuple(int(e) for e in m)) for m, c in poly.terms())


def _cell_layout(spec: SearchSpec, n: int):
    """Names (indices, top first) of the cell coordinates and of the free coordinates."""
    monic = n == 2 * spec.genus + 1
    top = n - 1 if monic else n
    order = list(range(top, -1, -1))
    width = 2 * spec.height_box + 1
    k = 0
    while width ** (len(order) - k) > GRID_MAX:
        k += 1
    return monic, order[:k], order[k:]


def cells(spec: SearchSpec) -> list[tuple]:
    out = []
    B = spec.height_box
    for n in spec.degree_cases:
        monic, cvars, _ = _cell_layout(spec, n)
        ranges = []
        for i in cvars:
            r = [v for v in range(-B, B + 1) if not (not monic and i == n and v == 0)]
            ranges.append(r)
        for vals in itertools.product(*ranges):
            out.append((n, *vals))
    return out


def total_work(spec: SearchSpec) -> int:
    B = spec.height_box
    w = 2 * B + 1
    tot = 0
    for n in spec.degree_cases:
        monic = n == 2 * spec.genus + 1
        tot += w ** (n if monic else n + 1)
    return tot


def _strip(x: np.ndarray, primes) -> np.ndarray:
    x = np.abs(x)
    for p in primes:
        while True:
            hit = (x % p == 0) & (x != 0)
            if not hit.any():
                break
            x = np.where(hit, x // p, x)
    return x


def _aux_primes(T, count=12):
    out = []
    p = 3
    while len(out) < count:
        if sympy.isprime(p) and p not in T:
            out.append(p)
        p += 2
    return out


def _eval_terms(terms, cols, mod=None):
    size = len(cols[0]) if cols else 1
    acc = np.zeros(size, dtype=np.int64)
    cache = {}
    for C, e in terms:
        if mod is not None:
            C %= mod
            if not C:
                continue
        t = np.full(size, C, dtype=np.int64)
        for j, k in enumerate(e):
            if k:
                key = (j, k)
                if key not in cache:
                    base = cols[j] % mod if mod is not None else cols[j]
                    pw = np.ones(size, dtype=np.int64)
                    for _ in range(k):
                        pw = pw * base
                        if mod is not None:
                            pw %= mod
                    cache[key] = pw
                t = t * cache[key]
                if mod is not None:
                    t %= mod
        acc = acc + t
        if mod is not None:
            acc %= mod
    return acc


def _process_cell(spec: SearchSpec, cell: tuple) -> list[dict]:
    n, *cvals = cell
    g = spec.genus
    B = spec.height_box
    T = spec.T
    monic, cvars, fvars = _cell_layout(spec, n)
    fixed = dict(zip(cvars, cvals))
    if monic:
        fixed[n] = 1
    # collapse the generic discriminant onto the free coordinates
    collapsed: dict[tuple, int] = {}
    for C, e in generic_discriminant(n, monic):
        val = C
        for i, k in enumerate(e):
            if i in fixed and k:
                val *= fixed[i] ** k
        if not val:
            continue
        fe = tuple(e[i] for i in fvars)
        collapsed[fe] = collapsed.get(fe, 0) + val
    terms = [(C, e) for e, C in collapsed.items() if C]

    rng = np.arange(-B, B + 1, dtype=np.int64)
    if fvars:
        grids = np.meshgrid(*([rng] * len(fvars)), indexing="ij")
        cols = [gr.ravel() for gr in grids]
    else:
        cols = []
    size = len(cols[0]) if cols else 1

    def coord(i):
        if i in fixed:
            return np.full(size, fixed[i], dtype=np.int64)
        return cols[fvars.index(i)]

    # content filters: a prime outside T dividing both of two adjacent end
    # coefficients gives a double root mod p
    mask = np.ones(size, dtype=bool)
    if not monic:
        mask &= coord(n) != 0
    pairs = [(0, 1)] + ([] if monic else [(n, n - 1)])
    for i, j in pairs:
        gg = np.gcd(coord(i), coord(j))
        mask &= _strip(gg, T) == 1
    idx = np.nonzero(mask)[0]
    sub = [c[idx] for c in cols]

    bound = sum(abs(C) * B ** sum(e) for C, e in terms)
    if bound < _INT64_SAFE:
        D = _eval_terms(terms, sub)
        ok = (D != 0) & (_strip(D, T) == 1)
        cand = idx[ok]
        exact_done = True
    else:
        keep = np.ones(len(idx), dtype=bool)
        for q in _aux_primes(T):
            Dq = _eval_terms(terms, sub, mod=q)
            keep &= Dq != 0
        cand = idx[keep]
        exact_done = False

    out = []
    for pos in cand.tolist():
        cs = [0] * (n + 1)
        for i, v in fixed.items():
            cs[i] = v
        for j, i in enumerate(fvars):
            cs[i] = int(cols[j][pos])
        D = disc_int(cs)
        if not D:
            continue
        r = abs(D)
        for p in T:
            while r % p == 0:
                r //= p
        if r != 1:
            if exact_done:
                raise ArithmeticError(f"prefilter disagrees with the exact discriminant at {cs}")
            continue
        rec = canonical_form(Poly.from_ints(QQ, cs), g, spec.S, degree=n, cell=cell)
        out.append(rec.to_json())
    return out


@dataclass
class Catalog:
    header: dict
    records: list = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [json.dumps(self.header)]
        out.extend(json.dumps(r.to_json()) for r in self.records)
        return out

    def dumps(self) -> str:
        return "\n".join(self.lines()) + "\n"

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.dumps())

    def __len__(self):
        return len(self.records)


def _sort_key(rec: CurveRecord):
    return (rec.genus, len(rec.f), tuple(rec.f))


def make_header(spec: SearchSpec, count: int, timestamp: str | None = None) -> dict:
    h = {
        "kind": "hypershaf-catalog",
        "version": __version__,
        "field": "Q",
        "spec": spec.key(),
        "T": list(spec.T),
        "count": count,
        "completeness": (
            f"complete relative to the coefficient box |c_i| <= {spec.height_box} "
            f"for degrees {list(spec.degree_cases)}; not relative to the theoretical bound"
        ),
        "good_reduction": GOOD_REDUCTION_NOTE,
        "status": "empty within box" if count == 0 else "nonempty",
    }
    if timestamp is not None:
        h["timestamp"] = timestamp
    return h


def _merge(acc: dict, recs) -> None:
    for d in recs:
        rec = d if isinstance(d, CurveRecord) else CurveRecord.from_json(d)
        old = acc.get(rec.key)
        if old is None or (rec.cell or ()) < (old.cell or ()):
            acc[rec.key] = rec


def _read_progress(path, spec: SearchSpec):
    done: dict[tuple, list] = {}
    if not path or not os.path.exists(path):
        return done
    good = 0
    with open(path, "rb") as fh:
        data = fh.read()
    lines = data.split(b"\n")
    for k, raw in enumerate(lines):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError:
            break  # torn final line from an interrupted run
        if k == 0:
            if obj.get("progress") != spec.key():
                raise ValueError("progress file belongs to a different search")
        else:
            done[tuple(obj["cell"])] = obj["records"]
        good += len(raw) + 1
    if good < len(data):
        with open(path, "r+b") as fh:
            fh.truncate(good)
    return done


def enumerate_curves(
    spec: SearchSpec,
    jobs: int = 1,
    progress_path=None,
    timestamp: str | None = None,
    cell_filter=None,
) -> Catalog:
    """Search the box; returns a deterministic, deduplicated catalog.

    With ``progress_path`` every finished cell is appended as a JSON line and
    a rerun resumes after the completed cells.  ``cell_filter`` restricts the
    search to some cells (used to test partitioned runs).
    """
    check_work(total_work(spec), "enumeration box", spec.max_work if spec.max_work is not None else max_grid())
    all_cells = cells(spec)
    if spec.resume_token is not None:
        tok = tuple(spec.resume_token)
        all_cells = [c for c in all_cells if c > tok]
    if cell_filter is not None:
        all_cells = [c for c in all_cells if cell_filter(c)]
    done = _read_progress(progress_path, spec)
    todo = [c for c in all_cells if c not in done]
    acc: dict = {}
    for c in all_cells:
        if c in done:
            _merge(acc, done[c])
    fh = None
    if progress_path:
        new = not os.path.exists(progress_path) or os.path.getsize(progress_path) == 0
        fh = open(progress_path, "a", encoding="utf-8")
        if new:
            fh.write(json.dumps({"progress": spec.key()}) + "\n")
            fh.flush()
    try:
        if jobs > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                results = ex.map(_process_cell, [spec] * len(todo), todo, chunksize=max(1, len(todo) // (8 * jobs)))
                for c, recs in zip(todo, results):
                    _merge(acc, recs)
                    if fh:
                        fh.write(json.dumps({"cell": list(c), "records": recs}) + "\n")
                        fh.flush()
        else:
            for c in todo:
                recs = _process_cell(spec, c)
                _merge(acc, recs)
                if fh:
                    fh.write(json.dumps({"cell": list(c), "records": recs}) + "\n")
                    fh.flush()
    finally:
        if fh:
            fh.close()
    records = sorted(acc.values(), key=_sort_key)
    return Catalog(make_header(spec, len(records), timestamp), records)


def merge_catalogs(spec: SearchSpec, parts, timestamp: str | None = None) -> Catalog:
    """Associative union of partial catalogs on canonical keys."""
    acc: dict = {}
    for part in parts:
        _merge(acc, part.records if isinstance(part, Catalog) else part)
    records = sorted(acc.values(), key=_sort_key)
    return Catalog(make_header(spec, len(records), timestamp), records)


def load_catalog(path, verify: bool = True) -> Catalog:
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty catalog file")
    header = json.loads(lines[0])
    if header.get("kind") != "hypershaf-catalog":
        raise ValueError("not a catalog file")
    S = header.get("spec", {}).get("S", [])
    recs = [CurveRecord.from_json(json.loads(ln)) for ln in lines[1:]]
    if verify:
        for r in recs:
            if not record_matches(r, S):
                raise ValueError(f"record {list(map(str, r.f))} fails discriminant re-verification")
    return Catalog(header, recs)


def query(records, genus=None, primes=None, max_height=None, tier=None, wp=None):
    """Filter records: primes restricts the support of Delta to a subset."""
    out = []
    for r in records:
        if genus is not None and r.genus != genus:
            continue
        if primes is not None and not {p for p, _ in r.delta_factors} <= set(primes):
            continue
        if max_height is not None and float(r.height_log10) > max_height:
            continue
        if tier is not None and r.tier != tier:
            continue
        if wp is not None and r.wp != wp:
            continue
        out.append(r)
    return out


# ---------------------------------------------------------------------------
# Independent oracle for genus 1
# ---------------------------------------------------------------------------


def _is_T_unit_int(x: int, T) -> bool:
    if x == 0:
        return False
    x = abs(x)
    for p in T:
        while x % p == 0:
            x //= p
    return x == 1


def oracle_enumerate_g1(S, box: int) -> list[tuple[Fraction, Fraction]]:
    """Isomorphism classes of y^2 = x^3 + a2 x^2 + a4 x + a6, |a_i| <= box, Delta a T-unit.

    Independent of the canonicalization pipeline: closed-form discriminant,
    completion of the cube to a short form (A, B), and deduplication only by
    is_isomorphic_g1.  Returns the short forms of one representative per class.
    """
    from .invariants import is_isomorphic_g1

    T = sorted({int(p) for p in (S or ())} | {2})
    rng = np.arange(-box, box + 1, dtype=np.int64)
    a4, a6 = np.meshgrid(rng, rng, indexing="ij")
    a4 = a4.ravel()
    a6 = a6.ravel()
    reps: list[tuple[Fraction, Fraction]] = []
    for a2 in range(-box, box + 1):
        d = (
            a2 * a2 * a4 * a4
            - 4 * a4 * a4 * a4
            - 4 * a2**3 * a6
            - 27 * a6 * a6
            + 18 * a2 * a4 * a6
        )
        x = np.abs(d)
        for p in T:
            while True:
                hit = (x % p == 0) & (x != 0)
                if not hit.any():
                    break
                x = np.where(hit, x // p, x)
        for k in np.nonzero(x == 1)[0].tolist():
            b4, b6 = int(a4[k]), int(a6[k])
            if not _is_T_unit_int(16 * (a2 * a2 * b4 * b4 - 4 * b4**3 - 4 * a2**3 * b6 - 27 * b6 * b6 + 18 * a2 * b4 * b6), T):
                raise ArithmeticError("oracle filter inconsistency")
            A = Fraction(b4) - Fraction(a2 * a2, 3)
            Bc = Fraction(2 * a2**3, 27) - Fraction(a2 * b4, 3) + b6
            if not any(is_isomorphic_g1((A, Bc), r) for r in reps):
                reps.append((A, Bc))
    return reps


def short_form(f: Poly) -> tuple[Fraction, Fraction]:
    """(A, B) with y^2 = x^3 + A x + B isomorphic to y^2 = f, f a monic cubic."""
    a6, a4, a2 = (f.coeff(i).a for i in range(3))
    return a4 - a2 * a2 / 3, 2 * a2**3 / 27 - a2 * a4 / 3 + a6


__all__ = [
    "SearchSpec",
    "CurveRecord",
    "Catalog",
    "canonical_form",
    "enumerate_curves",
    "merge_catalogs",
    "load_catalog",
    "query",
    "record_matches",
    "oracle_enumerate_g1",
    "short_form",
    "cells",
    "generic_discriminant",
    "ResourceLimitError",
]
